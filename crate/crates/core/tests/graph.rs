mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shrubfo::corpus::{graphs_up_to_isomorphism, random_graph, random_tree, random_tree_model};
use shrubfo::graph::generators::{
    gen_flipped_half_graph, gen_half_graph, gen_kpt, gen_layerwise_flipped_kpt, gen_path, SideRelation,
};
use shrubfo::graph::io::{parse_graph, parse_tree, parse_tree_model, read_graph, write_graph, write_tree, write_tree_model};
use shrubfo::graph::{
    apply_flip, build_sc_graph, compute_elimination_forest, validate_elimination_forest, validate_tree_model, ScRecipe,
};
use shrubfo::{ColoredGraph, PartitionFlip};

#[test]
fn half_graph_with_cross_flip() {
    let t = 3;
    let h = gen_flipped_half_graph(t, SideRelation { aa: false, bb: false, ab: true }).unwrap();
    for i in 0..t {
        for j in 0..t {
            assert_eq!(h.graph.adjacent(h.a[i], h.b[j]), i > j);
        }
    }
    assert_eq!(gen_half_graph(1).unwrap().graph.edge_count(), 1);
    assert_eq!(gen_half_graph(2).unwrap().graph.edges(), vec![(0, 2), (0, 3), (1, 3)]);
    for t in 1..=8 {
        assert_eq!(gen_half_graph(t).unwrap().graph.edge_count(), t * (t + 1) / 2);
    }
    let aa = gen_flipped_half_graph(4, SideRelation { aa: true, bb: false, ab: false }).unwrap();
    assert_eq!(aa.graph.edge_count(), 10 + 6);
    assert_eq!(gen_flipped_half_graph(4, SideRelation::EMPTY).unwrap().graph, gen_half_graph(4).unwrap().graph);
    assert_eq!(SideRelation::all().len(), 8);
}

#[test]
fn layered_paths() {
    assert_eq!(gen_kpt(1, 5).unwrap().graph, gen_path(5).unwrap());
    assert_eq!(gen_kpt(3, 1).unwrap().graph, ColoredGraph::new(3));
    let p = gen_kpt(2, 3).unwrap();
    assert_eq!(p.graph.edge_count(), 4);
    assert!(p.layers.iter().all(|l| l.len() == 2));
    for (k, t) in [(1, 1), (2, 5), (4, 3)] {
        assert_eq!(gen_kpt(k, t).unwrap().graph.edge_count(), k * (t - 1));
    }
    assert_eq!(gen_layerwise_flipped_kpt(2, 2, &[]).unwrap(), gen_kpt(2, 2).unwrap().graph);
    let f = gen_layerwise_flipped_kpt(2, 2, &[(1, 1)]).unwrap();
    assert!(f.adjacent(0, 2));
    assert_eq!(f.edge_count(), 3);
}

#[test]
fn sc_recipe_for_p3_is_a_path() {
    let k2 = ScRecipe::combine(vec![ScRecipe::Leaf, ScRecipe::Leaf], [0, 1]);
    let r = ScRecipe::combine(vec![k2, ScRecipe::Leaf], [1, 2]);
    assert!(common::isomorphic(&build_sc_graph(&r).unwrap(), &gen_path(3).unwrap()));
    assert_eq!(build_sc_graph(&ScRecipe::Leaf).unwrap().n(), 1);
}

#[test]
fn file_formats() {
    let p5 = read_graph(&include_bytes!("fixtures/p5.g")[..]).unwrap();
    assert_eq!(p5, gen_path(5).unwrap());
    let err = parse_graph(include_str!("fixtures/loop.g")).unwrap_err();
    assert!(err.to_string().contains("loop"));
    let star = parse_tree(include_str!("fixtures/star5.t")).unwrap();
    assert_eq!(star.n(), 6);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let n = rng.gen_range(1..12);
        let g = random_graph(&mut rng, n, 0.4, 3);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let t = random_tree(&mut rng, 15, 4, 3);
        assert_eq!(parse_tree(&write_tree(&t)).unwrap(), t);
        let tm = random_tree_model(&mut rng, 6, 2, 2);
        assert_eq!(parse_tree_model(&write_tree_model(&tm)).unwrap(), tm);
    }
}

#[test]
fn elimination_forest_search_is_exact_on_all_small_graphs() {
    for n in 1..=7 {
        for g in graphs_up_to_isomorphism(n) {
            let td = common::td_oracle(&g);
            for k in 1..=n {
                match compute_elimination_forest(&g, k) {
                    Some(ef) => {
                        assert!(k >= td);
                        assert!(validate_elimination_forest(&g, &ef) && ef.height() <= k);
                    }
                    None => assert!(k < td),
                }
            }
        }
    }
}

#[test]
fn elimination_forest_search_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.6);
        let g = random_graph(&mut rng, n, p, 1);
        let td = common::td_oracle(&g);
        assert!(compute_elimination_forest(&g, td).is_some());
        if td > 1 {
            assert!(compute_elimination_forest(&g, td - 1).is_none());
        }
    }
}

#[test]
fn tree_model_mutations_on_realized_keys_are_caught() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let tm = random_tree_model(&mut rng, 8, 2, 2);
        let g = tm.realize();
        assert!(validate_tree_model(&g, &tm).unwrap());
        for key in tm.realized_keys() {
            let mut bad = tm.clone();
            let v = bad.verdict(key.lo, key.hi, key.distance);
            bad.rule_mut().insert(key, !v);
            assert!(!validate_tree_model(&g, &bad).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn flips_are_involutions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..10);
        let g = random_graph(&mut rng, n, 0.5, 2);
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); 3];
        for v in 0..n {
            if let Some(p) = [Some(0), Some(1), Some(2), None][rng.gen_range(0..4)] {
                parts[p].push(v);
            }
        }
        let rel: Vec<(usize, usize)> = (0..3).flat_map(|a| (a..3).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.5)).collect();
        let f = PartitionFlip::new(parts, rel).unwrap();
        let once = apply_flip(&g, &f).unwrap();
        prop_assert_eq!(once.colors(), g.colors());
        prop_assert_eq!(apply_flip(&once, &f).unwrap(), g);
    }

    #[test]
    fn sc_graph_size_is_leaf_count(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fn recipe(rng: &mut ChaCha8Rng, depth: usize) -> ScRecipe {
            if depth == 0 || rng.gen_bool(0.3) {
                return ScRecipe::Leaf;
            }
            let kids: Vec<ScRecipe> = (0..rng.gen_range(1..4)).map(|_| recipe(rng, depth - 1)).collect();
            let n: usize = kids.iter().map(ScRecipe::leaf_count).sum();
            let flip: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            ScRecipe::combine(kids, flip)
        }
        let r = recipe(&mut rng, 3);
        prop_assert_eq!(build_sc_graph(&r).unwrap().n(), r.leaf_count());
        prop_assert_eq!(ScRecipe::parse(&r.render()).unwrap(), r);
    }
}
