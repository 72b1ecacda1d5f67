//! Elimination forests as colored trees, and the interpretation recovering
//! the graph from them.
//!
//! For height budget `k` and `c` input colors, a vertex with color `c0`,
//! forest depth `d` (roots have depth 1), and ancestor-adjacency bits `b`
//! (bit `a-1` set iff it is adjacent to its ancestor at depth `a`) gets color
//!
//! ```text
//! ((c0 - 1) * k + (d - 1)) * 2^(k-1) + b + 1
//! ```
//!
//! A forest with several roots is hung below an extra vertex with the
//! reserved color `c * k * 2^(k-1) + 1`, which is also the alphabet size.

use crate::error::{Error, Result};
use crate::graph::{validate_elimination_forest, ColoredGraph, EliminationForest, RootedColoredTree};
use crate::logic::{Formula, Var};

use super::scheme::InterpretationScheme;

/// Color alphabet of encoded forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestAlphabet {
    pub k: usize,
    pub colors: u32,
}

impl ForestAlphabet {
    pub fn new(k: usize, colors: u32) -> Result<Self> {
        if k == 0 || colors == 0 {
            return Err(Error::invalid("the forest alphabet needs k >= 1 and at least one color"));
        }
        if k > 16 {
            return Err(Error::ResourceLimit(format!("height budget {k} is too large to encode")));
        }
        Ok(ForestAlphabet { k, colors })
    }

    fn bits(&self) -> u32 {
        1 << (self.k - 1)
    }

    pub fn code(&self, color: u32, depth: usize, bits: u32) -> u32 {
        ((color - 1) * self.k as u32 + (depth as u32 - 1)) * self.bits() + bits + 1
    }

    pub fn reserved(&self) -> u32 {
        self.colors * self.k as u32 * self.bits() + 1
    }

    pub fn size(&self) -> u32 {
        self.reserved()
    }

    fn codes_where(&self, pred: impl Fn(u32, usize, u32) -> bool) -> Vec<u32> {
        let mut out = Vec::new();
        for c in 1..=self.colors {
            for d in 1..=self.k {
                for b in 0..self.bits() {
                    if pred(c, d, b) {
                        out.push(self.code(c, d, b));
                    }
                }
            }
        }
        out
    }
}

/// Tree on `V(g)`, plus a super-root when the forest has several roots.
pub fn encode_elimination_forest(g: &ColoredGraph, ef: &EliminationForest, k: usize) -> Result<RootedColoredTree> {
    if !validate_elimination_forest(g, ef) {
        return Err(Error::invalid("not an elimination forest of the graph"));
    }
    if ef.height() > k {
        return Err(Error::invalid(format!(
            "forest height {} exceeds the budget {k}",
            ef.height()
        )));
    }
    let alpha = ForestAlphabet::new(k, g.num_colors())?;
    let n = g.n();
    let mut parent: Vec<Option<usize>> = ef.parents().to_vec();
    let mut colors = Vec::with_capacity(n + 1);
    for v in 0..n {
        let d = ef.depth_of(v);
        let mut bits = 0;
        for a in ef.ancestors(v) {
            if g.adjacent(v, a) {
                bits |= 1 << (ef.depth_of(a) - 1);
            }
        }
        colors.push(alpha.code(g.color(v), d, bits));
    }
    let roots = ef.roots();
    if roots.len() != 1 {
        for r in roots {
            parent[r] = Some(n);
        }
        parent.push(None);
        colors.push(alpha.reserved());
    }
    RootedColoredTree::from_parents(parent, colors, alpha.size())
}

fn any_color(codes: &[u32], v: Var) -> Formula {
    Formula::any_or_false(codes.iter().map(|&c| Formula::color(c, v)).collect(), v)
}

/// `anc` is the ancestor `steps` levels above `low`, which sits at forest
/// depth `depth`. Each step walks to the unique neighbor one level higher;
/// `spare` and `low` swap roles so only three names are ever used.
pub(crate) fn walk_up(
    low: Var,
    anc: Var,
    spare: Var,
    depth: usize,
    steps: usize,
    level: &dyn Fn(usize, Var) -> Formula,
) -> Formula {
    match steps {
        0 => Formula::eq(low, anc),
        1 => Formula::and(vec![Formula::edge(low, anc), level(depth - 1, anc)]),
        _ => Formula::exists(
            spare,
            Formula::and(vec![
                Formula::edge(low, spare),
                level(depth - 1, spare),
                walk_up(spare, anc, low, depth - 1, steps - 1, level),
            ]),
        ),
    }
}

/// Recovers `g` from `encode_elimination_forest(g, ef, k)` when `g` has `c`
/// colors. Uses one auxiliary variable.
pub fn depth_edge_interpretation(k: usize, c: u32) -> Result<InterpretationScheme> {
    let alpha = ForestAlphabet::new(k, c)?;
    let (x1, x2, x3) = (Var::new(1), Var::new(2), Var::new(3));
    let level = |d: usize, v: Var| any_color(&alpha.codes_where(|_, dd, _| dd == d), v);
    let mut disjuncts = Vec::new();
    for d in 2..=k {
        for a in 1..d {
            let bit = |v: Var| any_color(&alpha.codes_where(|_, dd, b| dd == d && b & (1 << (a - 1)) != 0), v);
            for (low, high) in [(x1, x2), (x2, x1)] {
                disjuncts.push(Formula::and(vec![bit(low), walk_up(low, high, x3, d, d - a, &level)]));
            }
        }
    }
    let edge = Formula::any_or_false(disjuncts, x1);
    let domain = Formula::not(Formula::color(alpha.reserved(), x1));
    let colors = (1..=c)
        .map(|c0| any_color(&alpha.codes_where(|cc, _, _| cc == c0), x1))
        .collect();
    InterpretationScheme::with_declared_overhead(domain, edge, Some(colors), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::compute_elimination_forest;
    use crate::graph::generators::gen_path;
    use crate::interpret::apply_interpretation;

    #[test]
    fn k2_chain() {
        let g = gen_path(2).unwrap();
        let ef = EliminationForest::new(vec![None, Some(0)]).unwrap();
        let t = encode_elimination_forest(&g, &ef, 2).unwrap();
        let alpha = ForestAlphabet::new(2, 1).unwrap();
        assert_eq!(t.color(0), alpha.code(1, 1, 0));
        assert_eq!(t.color(1), alpha.code(1, 2, 1));
        assert_eq!(t.n(), 2);
    }

    #[test]
    fn p3_with_center_root() {
        let g = gen_path(3).unwrap();
        let ef = EliminationForest::new(vec![Some(1), None, Some(1)]).unwrap();
        let t = encode_elimination_forest(&g, &ef, 2).unwrap();
        let alpha = ForestAlphabet::new(2, 1).unwrap();
        assert_eq!(t.color(0), alpha.code(1, 2, 1));
        assert_eq!(t.color(2), alpha.code(1, 2, 1));
    }

    #[test]
    fn edgeless_forest_gets_super_root() {
        let g = ColoredGraph::new(3);
        let ef = compute_elimination_forest(&g, 1).unwrap();
        let t = encode_elimination_forest(&g, &ef, 1).unwrap();
        let alpha = ForestAlphabet::new(1, 1).unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(t.root(), 3);
        assert_eq!(t.color(3), alpha.reserved());
        assert!((0..3).all(|v| t.color(v) == alpha.code(1, 1, 0)));
    }

    #[test]
    fn round_trip_on_small_graphs() {
        let g = ColoredGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)])
            .unwrap()
            .with_colors(vec![1, 2, 1, 2, 2, 1], 2)
            .unwrap();
        let ef = compute_elimination_forest(&g, 3).unwrap();
        let t = encode_elimination_forest(&g, &ef, 3).unwrap();
        let scheme = depth_edge_interpretation(3, 2).unwrap();
        assert_eq!(apply_interpretation(&scheme, t.graph()).unwrap(), g);
        assert_eq!(scheme.variable_overhead(), 1);
        let k1 = ColoredGraph::new(1);
        let ef = compute_elimination_forest(&k1, 1).unwrap();
        let t = encode_elimination_forest(&k1, &ef, 1).unwrap();
        assert_eq!(apply_interpretation(&depth_edge_interpretation(1, 1).unwrap(), t.graph()).unwrap(), k1);
    }
}
