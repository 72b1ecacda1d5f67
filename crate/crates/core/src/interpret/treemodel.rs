//! Tree-models as colored trees, and the interpretation recovering the graph.
//!
//! A tree vertex with tree color `t`, depth `d` (root 0) and graph color `g`
//! (0 for internal vertices) gets color `((t-1)(h+1) + d)(cg+1) + g + 1`
//! where `h` is the tree height and `cg` the graph's color count.

use crate::error::{Error, Result};
use crate::graph::{validate_tree_model, ColoredGraph, RootedColoredTree, TreeModel};
use crate::logic::{Formula, Var};

use super::scheme::InterpretationScheme;
use super::treedepth::walk_up;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeModelAlphabet {
    pub tree_colors: u32,
    pub height: usize,
    pub graph_colors: u32,
}

impl TreeModelAlphabet {
    pub fn of(tm: &TreeModel, graph_colors: u32) -> Self {
        TreeModelAlphabet {
            tree_colors: tm.tree().num_colors(),
            height: tm.tree().depth(),
            graph_colors,
        }
    }

    pub fn code(&self, tree_color: u32, depth: usize, graph_color: u32) -> u32 {
        ((tree_color - 1) * (self.height as u32 + 1) + depth as u32) * (self.graph_colors + 1) + graph_color + 1
    }

    pub fn size(&self) -> u32 {
        self.tree_colors * (self.height as u32 + 1) * (self.graph_colors + 1)
    }

    fn codes_where(&self, pred: impl Fn(u32, usize, u32) -> bool) -> Vec<u32> {
        let mut out = Vec::new();
        for t in 1..=self.tree_colors {
            for d in 0..=self.height {
                for g in 0..=self.graph_colors {
                    if pred(t, d, g) {
                        out.push(self.code(t, d, g));
                    }
                }
            }
        }
        out
    }
}

/// The tree of `tm` recolored so that leaves also carry the colors of `g`;
/// graph vertex `i` sits on the `i`-th leaf.
pub fn encode_tree_model(g: &ColoredGraph, tm: &TreeModel) -> Result<RootedColoredTree> {
    if !validate_tree_model(g, tm)? {
        return Err(Error::precondition("the tree-model does not describe the graph"));
    }
    let alpha = TreeModelAlphabet::of(tm, g.num_colors());
    let t = tm.tree();
    let mut graph_color = vec![0; t.n()];
    for (i, &leaf) in tm.leaves().iter().enumerate() {
        graph_color[leaf] = g.color(i);
    }
    let colors = (0..t.n())
        .map(|v| alpha.code(t.color(v), t.depth_of(v), graph_color[v]))
        .collect();
    t.recolored(colors, alpha.size())
}

fn any_color(codes: &[u32], v: Var) -> Formula {
    Formula::any_or_false(codes.iter().map(|&c| Formula::color(c, v)).collect(), v)
}

/// Recovers the graph from [`encode_tree_model`]. Uses two auxiliary
/// variables.
pub fn tree_model_interpretation(tm: &TreeModel, graph_colors: u32) -> Result<InterpretationScheme> {
    let alpha = TreeModelAlphabet::of(tm, graph_colors);
    let (x1, x2, x3, x4) = (Var::new(1), Var::new(2), Var::new(3), Var::new(4));
    let h = alpha.height;
    let level = |d: usize, v: Var| any_color(&alpha.codes_where(|_, dd, _| dd == d), v);
    let leaf = |t: u32, d: usize, v: Var| any_color(&alpha.codes_where(|tt, dd, g| tt == t && dd == d && g > 0), v);
    // Both vertices have an ancestor at depth `a` in common.
    let common = |du: usize, dv: usize, a: usize| {
        Formula::exists(
            x3,
            Formula::and(vec![
                walk_up(x1, x3, x4, du, du - a, &level),
                walk_up(x2, x3, x4, dv, dv - a, &level),
            ]),
        )
    };
    let mut disjuncts = Vec::new();
    for t1 in 1..=alpha.tree_colors {
        for t2 in 1..=alpha.tree_colors {
            for du in 0..=h {
                for dv in 0..=h {
                    for a in 0..=du.min(dv) {
                        if !tm.verdict(t1, t2, du + dv - 2 * a) || du + dv == 2 * a {
                            continue;
                        }
                        let mut parts = vec![leaf(t1, du, x1), leaf(t2, dv, x2), common(du, dv, a)];
                        if a < du.min(dv) {
                            parts.push(Formula::not(common(du, dv, a + 1)));
                        }
                        disjuncts.push(Formula::and(parts));
                    }
                }
            }
        }
    }
    let edge = Formula::and(vec![
        Formula::not(Formula::eq(x1, x2)),
        Formula::any_or_false(disjuncts, x1),
    ]);
    let domain = any_color(&alpha.codes_where(|_, _, g| g > 0), x1);
    let colors = (1..=graph_colors.max(1))
        .map(|gc| any_color(&alpha.codes_where(|_, _, g| g == gc), x1))
        .collect();
    InterpretationScheme::with_declared_overhead(domain, edge, Some(colors), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::random_tree_model;
    use crate::interpret::apply_interpretation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip_on_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let tm = random_tree_model(&mut rng, 7, 2, 2);
            let mut g = tm.realize();
            let cols: Vec<u32> = (0..g.n()).map(|_| rng.gen_range(1..=2)).collect();
            g = g.with_colors(cols, 2).unwrap();
            let t = encode_tree_model(&g, &tm).unwrap();
            let scheme = tree_model_interpretation(&tm, 2).unwrap();
            let (h, dom) = crate::interpret::apply_interpretation_with_domain(&scheme, t.graph()).unwrap();
            assert_eq!(dom, tm.leaves());
            assert_eq!(h, g);
        }
    }

    #[test]
    fn single_leaf_model() {
        let tree = RootedColoredTree::singleton(1, 1).unwrap();
        let tm = TreeModel::new(tree, Default::default());
        let g = ColoredGraph::new(1);
        let t = encode_tree_model(&g, &tm).unwrap();
        assert_eq!(apply_interpretation(&tree_model_interpretation(&tm, 1).unwrap(), t.graph()).unwrap(), g);
    }

    #[test]
    fn mismatched_model_is_a_precondition_error() {
        let tree = RootedColoredTree::from_parents(vec![None, Some(0), Some(0)], vec![1, 1, 1], 1).unwrap();
        let tm = TreeModel::from_rule_list(tree, &[(1, 1, 2, false)]).unwrap();
        let g = ColoredGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(encode_tree_model(&g, &tm), Err(Error::Precondition(_))));
    }
}
