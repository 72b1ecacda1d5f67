mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shrubfo::corpus::{graphs_up_to_isomorphism, random_formula, random_graph, random_tree, random_tree_model, FormulaParams};
use shrubfo::eval::model_check;
use shrubfo::graph::{compute_elimination_forest, tree_depth};
use shrubfo::interpret::{
    apply_interpretation, apply_interpretation_with_domain, backwards_translate, depth_edge_interpretation,
    encode_elimination_forest, encode_tree_model, mc_tree, mc_treedepth, mc_treemodel, tree_model_interpretation,
    InterpretationScheme,
};
use shrubfo::logic::parse_formula;
use shrubfo::{ColoredGraph, Error, Sentence};

fn sentences(seed: u64, count: usize, variables: u32, colors: u32, rank: usize) -> Vec<Sentence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Sentence::new(random_formula(&mut rng, &FormulaParams::sentences(variables, colors, rank))).unwrap())
        .collect()
}

fn hosts() -> Vec<ColoredGraph> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for g in graphs_up_to_isomorphism(n) {
            let colors = (0..n).map(|v| 1 + (v % 2) as u32).collect();
            out.push(g.clone().with_colors(colors, 2).unwrap());
            out.push(g);
        }
    }
    out
}

fn check_translation(scheme: &InterpretationScheme, host: &ColoredGraph, phi: &Sentence) {
    let image = apply_interpretation(scheme, host).unwrap();
    let psi = backwards_translate(phi, scheme).unwrap();
    assert!(psi.formula().variable_count() <= phi.formula().variable_count() + scheme.variable_overhead());
    assert_eq!(model_check(host, &psi).unwrap(), model_check(&image, phi).unwrap(), "{}", phi.formula());
}

#[test]
fn identity_and_complement_translations() {
    let phis = sentences(1, 300, 3, 2, 4);
    for scheme in [InterpretationScheme::identity(), InterpretationScheme::complement()] {
        for host in hosts() {
            for phi in &phis {
                check_translation(&scheme, &host, phi);
            }
        }
    }
}

#[test]
fn complement_image() {
    let g = random_graph(&mut ChaCha8Rng::seed_from_u64(0), 7, 0.5, 2);
    let h = apply_interpretation(&InterpretationScheme::complement(), &g).unwrap();
    assert_eq!(h.edge_count(), 21 - g.edge_count());
    assert_eq!(h.colors(), g.colors());
    assert_eq!(apply_interpretation(&InterpretationScheme::identity(), &g).unwrap(), g);
}

#[test]
fn depth_edge_recovers_the_graph_and_translates() {
    let phis = sentences(2, 300, 3, 2, 4);
    for host in hosts() {
        let k = tree_depth(&host);
        let ef = compute_elimination_forest(&host, k).unwrap();
        let tree = encode_elimination_forest(&host, &ef, k).unwrap();
        let scheme = depth_edge_interpretation(k, host.num_colors()).unwrap();
        let (image, domain) = apply_interpretation_with_domain(&scheme, tree.graph()).unwrap();
        assert_eq!(domain, (0..host.n()).collect::<Vec<_>>());
        assert_eq!(image, host);
        for phi in &phis {
            check_translation(&scheme, tree.graph(), phi);
        }
    }
}

#[test]
fn tree_model_recovers_the_graph_and_translates() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let phis = sentences(3, 60, 3, 2, 3);
    for _ in 0..30 {
        let tm = random_tree_model(&mut rng, 6, 2, 2);
        let n = tm.leaves().len();
        let colors = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let g = tm.realize().with_colors(colors, 2).unwrap();
        let tree = encode_tree_model(&g, &tm).unwrap();
        let scheme = tree_model_interpretation(&tm, 2).unwrap();
        assert_eq!(apply_interpretation(&scheme, tree.graph()).unwrap(), g);
        for phi in &phis {
            check_translation(&scheme, tree.graph(), phi);
        }
    }
}

#[test]
fn tree_pipeline_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let phis = sentences(4, 100, 3, 2, 4);
    for _ in 0..40 {
        let t = random_tree(&mut rng, 25, 3, 2);
        for phi in &phis {
            let want = model_check(t.graph(), phi).unwrap();
            assert_eq!(mc_tree(&t, phi, 3).unwrap(), want);
            assert_eq!(common::direct_check(t.graph(), phi.formula()), want);
        }
    }
}

#[test]
fn treedepth_pipeline_on_small_graphs() {
    let phis = sentences(5, 40, 3, 1, 3);
    for n in 1..=5 {
        for g in graphs_up_to_isomorphism(n) {
            let td = tree_depth(&g);
            for phi in &phis {
                assert_eq!(mc_treedepth(&g, phi, td.max(1), 3).unwrap(), model_check(&g, phi).unwrap());
            }
        }
    }
}

#[test]
fn tree_model_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let phis = sentences(8, 40, 3, 1, 3);
    for _ in 0..20 {
        let tm = random_tree_model(&mut rng, 6, 2, 2);
        let g = tm.realize();
        for phi in &phis {
            assert_eq!(mc_treemodel(&g, &tm, phi, 3).unwrap(), model_check(&g, phi).unwrap());
        }
    }
}

#[test]
fn pipeline_preconditions() {
    let phi = Sentence::new(parse_formula("exists x1. exists x2. exists x3. adj(x1,x2) & adj(x2,x3)").unwrap()).unwrap();
    let t = random_tree(&mut ChaCha8Rng::seed_from_u64(0), 5, 2, 1);
    assert!(matches!(mc_tree(&t, &phi, 2), Err(Error::Precondition(_))));
    let k4 = graphs_up_to_isomorphism(4).pop().unwrap();
    assert_eq!(k4.edge_count(), 6);
    assert!(matches!(mc_treedepth(&k4, &phi, 3, 3), Err(Error::Precondition(_))));
    let tm = random_tree_model(&mut ChaCha8Rng::seed_from_u64(1), 5, 2, 2);
    assert!(tm.leaves().len() >= 2);
    let mut wrong = tm.realize();
    wrong.toggle_edge(0, 1).unwrap();
    assert!(matches!(mc_treemodel(&wrong, &tm, &phi, 3), Err(Error::Precondition(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translations_commute_on_random_hosts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let host = random_graph(&mut rng, n, 0.4, 2);
        let phi = Sentence::new(random_formula(&mut rng, &FormulaParams::sentences(3, 2, 3))).unwrap();
        check_translation(&InterpretationScheme::complement(), &host, &phi);
        let k = tree_depth(&host);
        let tree = encode_elimination_forest(&host, &compute_elimination_forest(&host, k).unwrap(), k).unwrap();
        let scheme = depth_edge_interpretation(k, 2).unwrap();
        prop_assert_eq!(apply_interpretation(&scheme, tree.graph()).unwrap(), host.clone());
        check_translation(&scheme, tree.graph(), &phi);
    }
}
