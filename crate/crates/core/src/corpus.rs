//! Seeded random generators and small exhaustive families used by the
//! property suites and the `xvalidate` command.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{ColoredGraph, RootedColoredTree, RuleKey, TreeModel, Vertex};
use crate::logic::{Formula, Var};

#[derive(Debug, Clone)]
pub struct FormulaParams {
    /// Variables are drawn from `x1..=x<variables>`.
    pub variables: u32,
    /// Color atoms use `C1..=C<colors>`.
    pub colors: u32,
    pub max_rank: usize,
    /// Soft bound on the node count.
    pub max_size: usize,
    /// Variables usable free at the top level.
    pub free: Vec<Var>,
}

impl FormulaParams {
    pub fn sentences(variables: u32, colors: u32, max_rank: usize) -> Self {
        FormulaParams {
            variables,
            colors,
            max_rank,
            max_size: 24,
            free: Vec::new(),
        }
    }
}

/// Random formula whose free variables lie in `params.free`.
///
/// With an empty `free` list the result is a sentence; `max_rank` must then be
/// at least 1.
pub fn random_formula(rng: &mut impl Rng, params: &FormulaParams) -> Formula {
    assert!(params.variables >= 1);
    assert!(!params.free.is_empty() || params.max_rank >= 1, "a sentence needs a quantifier");
    let mut scope = params.free.clone();
    let mut budget = params.max_size.max(1);
    gen_formula(rng, params, &mut scope, params.max_rank, &mut budget)
}

fn gen_formula(
    rng: &mut impl Rng,
    params: &FormulaParams,
    scope: &mut Vec<Var>,
    rank_left: usize,
    budget: &mut usize,
) -> Formula {
    *budget = budget.saturating_sub(1);
    let can_quantify = rank_left > 0;
    if scope.is_empty() || (can_quantify && *budget > 0 && rng.gen_bool(0.05)) {
        return gen_quantifier(rng, params, scope, rank_left, budget);
    }
    if *budget == 0 {
        return gen_atom(rng, params, scope);
    }
    let roll = rng.gen_range(0..14);
    match roll {
        0..=3 => gen_atom(rng, params, scope),
        4 => Formula::not(gen_formula(rng, params, scope, rank_left, budget)),
        5..=8 => {
            let k = rng.gen_range(2..=3);
            let cs = (0..k)
                .map(|_| gen_formula(rng, params, scope, rank_left, budget))
                .collect();
            if roll <= 6 {
                Formula::and(cs)
            } else {
                Formula::or(cs)
            }
        }
        9 => {
            let a = gen_formula(rng, params, scope, rank_left, budget);
            let b = gen_formula(rng, params, scope, rank_left, budget);
            Formula::implies(a, b)
        }
        _ if can_quantify => gen_quantifier(rng, params, scope, rank_left, budget),
        _ => gen_atom(rng, params, scope),
    }
}

fn gen_quantifier(
    rng: &mut impl Rng,
    params: &FormulaParams,
    scope: &mut Vec<Var>,
    rank_left: usize,
    budget: &mut usize,
) -> Formula {
    let v = Var::new(rng.gen_range(1..=params.variables));
    scope.push(v);
    let body = gen_formula(rng, params, scope, rank_left - 1, budget);
    scope.pop();
    if rng.gen_bool(0.5) {
        Formula::exists(v, body)
    } else {
        Formula::forall(v, body)
    }
}

fn gen_atom(rng: &mut impl Rng, params: &FormulaParams, scope: &[Var]) -> Formula {
    let pick = |rng: &mut dyn rand::RngCore| scope[rng.gen_range(0..scope.len())];
    match rng.gen_range(0..5) {
        0 | 1 => Formula::edge(pick(rng), pick(rng)),
        2 | 3 => Formula::eq(pick(rng), pick(rng)),
        _ => Formula::color(rng.gen_range(1..=params.colors.max(1)), pick(rng)),
    }
}

/// Erdős–Rényi graph with independently uniform colors from `1..=colors`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, colors: u32) -> ColoredGraph {
    let mut g = ColoredGraph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let cols = (0..n).map(|_| rng.gen_range(1..=colors.max(1))).collect();
    g.with_colors(cols, colors.max(1)).unwrap()
}

/// Random recursive tree with at most `max_n` vertices and depth at most
/// `max_depth`; vertex ids are shuffled.
pub fn random_tree(rng: &mut impl Rng, max_n: usize, max_depth: usize, colors: u32) -> RootedColoredTree {
    let n = rng.gen_range(1..=max_n.max(1));
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut depth = vec![0usize];
    for _ in 1..n {
        let open: Vec<usize> = (0..parent.len()).filter(|&v| depth[v] < max_depth).collect();
        if open.is_empty() {
            break;
        }
        let p = open[rng.gen_range(0..open.len())];
        parent.push(Some(p));
        depth.push(depth[p] + 1);
    }
    let cols = (0..parent.len()).map(|_| rng.gen_range(1..=colors.max(1))).collect();
    shuffle_tree(rng, parent, cols, colors.max(1))
}

/// Random tree in which sibling subtrees are frequently exact copies of each
/// other, so that kernels actually discard vertices.
pub fn random_repetitive_tree(
    rng: &mut impl Rng,
    max_n: usize,
    max_depth: usize,
    colors: u32,
) -> RootedColoredTree {
    let colors = colors.max(1);
    let target = rng.gen_range(1..=max_n.max(1));
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut cols = vec![rng.gen_range(1..=colors)];
    grow(rng, 0, 0, max_depth, target, colors, &mut parent, &mut cols);
    shuffle_tree(rng, parent, cols, colors)
}

#[allow(clippy::too_many_arguments)]
fn grow(
    rng: &mut impl Rng,
    node: usize,
    depth: usize,
    max_depth: usize,
    target: usize,
    colors: u32,
    parent: &mut Vec<Option<usize>>,
    cols: &mut Vec<u32>,
) {
    if depth >= max_depth {
        return;
    }
    let kids = rng.gen_range(0..=5);
    let mut made: Vec<usize> = Vec::new();
    for _ in 0..kids {
        if parent.len() >= target {
            return;
        }
        if !made.is_empty() && rng.gen_bool(0.6) {
            let src = made[rng.gen_range(0..made.len())];
            copy_subtree(src, node, target, parent, cols);
        } else {
            let child = parent.len();
            parent.push(Some(node));
            cols.push(rng.gen_range(1..=colors));
            made.push(child);
            grow(rng, child, depth + 1, max_depth, target, colors, parent, cols);
        }
    }
}

fn copy_subtree(src: usize, under: usize, target: usize, parent: &mut Vec<Option<usize>>, cols: &mut Vec<u32>) {
    // Parents always precede children, so one forward scan finds the subtree.
    let end = parent.len();
    let mut members = vec![src];
    let mut inside = HashSet::from([src]);
    for v in (src + 1)..end {
        if parent[v].is_some_and(|p| inside.contains(&p)) {
            inside.insert(v);
            members.push(v);
        }
    }
    let mut new_id = BTreeMap::new();
    for &v in &members {
        if parent.len() >= target {
            return;
        }
        let p = if v == src { under } else { new_id[&parent[v].unwrap()] };
        new_id.insert(v, parent.len());
        parent.push(Some(p));
        cols.push(cols[v]);
    }
}

fn shuffle_tree(rng: &mut impl Rng, parent: Vec<Option<usize>>, cols: Vec<u32>, colors: u32) -> RootedColoredTree {
    let n = parent.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut new_parent = vec![None; n];
    let mut new_cols = vec![1; n];
    for v in 0..n {
        new_parent[perm[v]] = parent[v].map(|p| perm[p]);
        new_cols[perm[v]] = cols[v];
    }
    RootedColoredTree::from_parents(new_parent, new_cols, colors).unwrap()
}

/// Random tree-model with height at most `height`, at most `max_leaves`
/// leaves, tree colors from `1..=colors`, and a random rule.
pub fn random_tree_model(rng: &mut impl Rng, max_leaves: usize, height: usize, colors: u32) -> TreeModel {
    let colors = colors.max(1);
    let leaves_wanted = rng.gen_range(1..=max_leaves.max(1));
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut depth = vec![0usize];
    if leaves_wanted > 1 && height > 0 {
        let internal = rng.gen_range(0..=leaves_wanted / 2);
        for _ in 0..internal {
            let open: Vec<usize> = (0..parent.len()).filter(|&v| depth[v] + 1 < height).collect();
            if open.is_empty() {
                break;
            }
            let p = open[rng.gen_range(0..open.len())];
            parent.push(Some(p));
            depth.push(depth[p] + 1);
        }
        let inner = parent.len();
        let mut leaves = 0;
        // Every inner vertex receives a leaf first, so it stops being a leaf.
        let mut needy: Vec<usize> = (0..inner).filter(|&v| !parent.contains(&Some(v))).collect();
        while leaves < leaves_wanted || !needy.is_empty() {
            let p = needy.pop().unwrap_or_else(|| rng.gen_range(0..inner));
            parent.push(Some(p));
            depth.push(depth[p] + 1);
            leaves += 1;
        }
    }
    let cols = (0..parent.len()).map(|_| rng.gen_range(1..=colors)).collect();
    let tree = shuffle_tree(rng, parent, cols, colors);
    let mut rule = BTreeMap::new();
    for c1 in 1..=colors {
        for c2 in c1..=colors {
            for d in 1..=2 * height.max(1) {
                rule.insert(RuleKey::new(c1, c2, d), rng.gen_bool(0.5));
            }
        }
    }
    TreeModel::new(tree, rule)
}

/// Canonical certificate of an uncolored graph on at most 8 vertices:
/// the lexicographically largest adjacency bit string over all
/// degree-respecting relabelings.
fn certificate(g: &ColoredGraph) -> u64 {
    let n = g.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let degs: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let mut best = 0u64;
    let mut perm = order.clone();
    permute_blocks(&degs, 0, &mut perm, &mut |p| {
        let mut bits = 0u64;
        for i in 0..n {
            for j in (i + 1)..n {
                bits = (bits << 1) | u64::from(g.adjacent(p[i], p[j]));
            }
        }
        best = best.max(bits);
    });
    best
}

fn permute_blocks(degs: &[usize], start: usize, perm: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex])) {
    if start >= perm.len() {
        f(perm);
        return;
    }
    let mut end = start;
    while end < perm.len() && degs[end] == degs[start] {
        end += 1;
    }
    permute_range(degs, end, start, perm, f);
}

fn permute_range(
    degs: &[usize],
    end: usize,
    i: usize,
    perm: &mut Vec<Vertex>,
    f: &mut dyn FnMut(&[Vertex]),
) {
    if i == end {
        permute_blocks(degs, end, perm, f);
        return;
    }
    for j in i..end {
        perm.swap(i, j);
        permute_range(degs, end, i + 1, perm, f);
        perm.swap(i, j);
    }
}

/// One representative per isomorphism type of graphs on `n <= 8` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<ColoredGraph> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    let mut level = vec![ColoredGraph::new(0)];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..(1 << (size - 1)) {
                let mut h = g.disjoint_union(&ColoredGraph::new(1));
                for v in 0..size - 1 {
                    if mask & (1 << v) != 0 {
                        h.add_edge(v, size - 1).unwrap();
                    }
                }
                if seen.insert(certificate(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

#[derive(Debug, Clone)]
struct Shape {
    color: u32,
    children: Vec<usize>,
    size: usize,
}

/// Every rooted colored tree up to color-preserving isomorphism with at most
/// `max_n` vertices, depth at most `max_depth`, colors from `1..=colors`.
pub fn rooted_colored_trees(max_n: usize, max_depth: usize, colors: u32) -> Vec<RootedColoredTree> {
    // shapes[h] lists every shape of height <= h; shapes of lower height come first.
    let mut shapes: Vec<Shape> = (1..=colors)
        .map(|c| Shape {
            color: c,
            children: Vec::new(),
            size: 1,
        })
        .collect();
    let mut lower = shapes.len();
    for _ in 1..=max_depth {
        let pool: Vec<usize> = (0..lower).collect();
        let mut fresh = Vec::new();
        for c in 1..=colors {
            let mut stack = Vec::new();
            multisets(&shapes, &pool, 0, max_n - 1, &mut stack, &mut |kids| {
                if !kids.is_empty() {
                    let size = 1 + kids.iter().map(|&k| shapes[k].size).sum::<usize>();
                    fresh.push(Shape {
                        color: c,
                        children: kids.to_vec(),
                        size,
                    });
                }
            });
        }
        // Keep only shapes that are new at this height: some child has the previous height.
        let before: HashSet<Vec<u8>> = shapes.iter().map(|s| shape_code(&shapes, s)).collect();
        for s in fresh {
            let code = shape_code(&shapes, &s);
            if !before.contains(&code) {
                shapes.push(s);
            }
        }
        lower = shapes.len();
    }
    shapes
        .iter()
        .map(|s| {
            let mut parent = Vec::new();
            let mut cols = Vec::new();
            materialize(&shapes, s, None, &mut parent, &mut cols);
            RootedColoredTree::from_parents(parent, cols, colors).unwrap()
        })
        .collect()
}

fn shape_code(all: &[Shape], s: &Shape) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = s.children.iter().map(|&k| shape_code(all, &all[k])).collect();
    kids.sort();
    let mut out = vec![b'('];
    out.extend_from_slice(&s.color.to_be_bytes());
    for k in kids {
        out.extend(k);
    }
    out.push(b')');
    out
}

fn multisets(
    shapes: &[Shape],
    pool: &[usize],
    from: usize,
    budget: usize,
    stack: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    f(stack);
    for i in from..pool.len() {
        let size = shapes[pool[i]].size;
        if size <= budget {
            stack.push(pool[i]);
            multisets(shapes, pool, i, budget - size, stack, f);
            stack.pop();
        }
    }
}

fn materialize(all: &[Shape], s: &Shape, above: Option<usize>, parent: &mut Vec<Option<usize>>, cols: &mut Vec<u32>) {
    let me = parent.len();
    parent.push(above);
    cols.push(s.color);
    for &k in &s.children {
        materialize(all, &all[k], Some(me), parent, cols);
    }
}
