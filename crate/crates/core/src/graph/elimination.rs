use rustc_hash::FxHashMap;

use super::colored::{ColoredGraph, Vertex};
use crate::error::{Error, Result};

/// Rooted forest over the vertices of a graph, stored as a parent map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<Option<Vertex>>,
}

impl EliminationForest {
    /// Fails if the parent map is out of range or cyclic.
    pub fn new(parent: Vec<Option<Vertex>>) -> Result<Self> {
        let n = parent.len();
        if let Some(bad) = parent.iter().flatten().find(|&&p| p >= n) {
            return Err(Error::invalid(format!("parent {bad} out of range")));
        }
        let f = EliminationForest { parent };
        for v in 0..n {
            let mut steps = 0;
            let mut u = v;
            while let Some(p) = f.parent[u] {
                u = p;
                steps += 1;
                if steps > n {
                    return Err(Error::invalid("parent map has a cycle"));
                }
            }
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    pub fn roots(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Number of vertices on the root path of `v`, `v` included.
    pub fn depth_of(&self, v: Vertex) -> usize {
        let mut d = 1;
        let mut u = v;
        while let Some(p) = self.parent[u] {
            u = p;
            d += 1;
        }
        d
    }

    /// Longest root-to-node path, counted in vertices.
    pub fn height(&self) -> usize {
        (0..self.n()).map(|v| self.depth_of(v)).max().unwrap_or(0)
    }

    /// Proper ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut u = v;
        while let Some(p) = self.parent[u] {
            out.push(p);
            u = p;
        }
        out
    }

    pub fn is_ancestor(&self, a: Vertex, v: Vertex) -> bool {
        a == v || self.ancestors(v).contains(&a)
    }
}

pub fn validate_elimination_forest(g: &ColoredGraph, ef: &EliminationForest) -> bool {
    if ef.n() != g.n() {
        return false;
    }
    g.edges()
        .into_iter()
        .all(|(u, v)| ef.is_ancestor(u, v) || ef.is_ancestor(v, u))
}

/// Exact search for an elimination forest of height at most `k`.
///
/// Exponential in `n`; intended for graphs with at most about 20 vertices.
pub fn compute_elimination_forest(g: &ColoredGraph, k: usize) -> Option<EliminationForest> {
    assert!(g.n() <= 64, "exact tree-depth search supports at most 64 vertices");
    let mut search = TreeDepthSearch::new(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    if search.td(all) > k {
        return None;
    }
    let mut parent = vec![None; g.n()];
    search.build(all, None, &mut parent);
    let ef = EliminationForest::new(parent).expect("search builds an acyclic forest");
    debug_assert!(validate_elimination_forest(g, &ef) && ef.height() <= k);
    Some(ef)
}

/// Exact tree-depth of a graph with at most 64 vertices.
pub fn tree_depth(g: &ColoredGraph) -> usize {
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    TreeDepthSearch::new(g).td(all)
}

struct TreeDepthSearch {
    nbr: Vec<u64>,
    memo: FxHashMap<u64, usize>,
}

impl TreeDepthSearch {
    fn new(g: &ColoredGraph) -> Self {
        let nbr = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect();
        TreeDepthSearch {
            nbr,
            memo: FxHashMap::default(),
        }
    }

    fn components(&self, set: u64) -> Vec<u64> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.nbr[v] & set & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    fn td(&mut self, set: u64) -> usize {
        if set == 0 {
            return 0;
        }
        if set.count_ones() == 1 {
            return 1;
        }
        if let Some(&d) = self.memo.get(&set) {
            return d;
        }
        let comps = self.components(set);
        let d = if comps.len() > 1 {
            comps.into_iter().map(|c| self.td(c)).max().unwrap()
        } else {
            let mut best = usize::MAX;
            let mut bits = set;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                best = best.min(1 + self.td(set & !(1 << v)));
                if best == 2 {
                    break;
                }
            }
            best
        };
        self.memo.insert(set, d);
        d
    }

    fn build(&mut self, set: u64, above: Option<Vertex>, parent: &mut [Option<Vertex>]) {
        for comp in self.components(set) {
            if comp.count_ones() == 1 {
                parent[comp.trailing_zeros() as usize] = above;
                continue;
            }
            let target = self.td(comp);
            let mut bits = comp;
            let mut chosen = None;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                if 1 + self.td(comp & !(1 << v)) == target {
                    chosen = Some(v as usize);
                    break;
                }
            }
            let v = chosen.expect("some vertex realizes the optimum");
            parent[v] = above;
            self.build(comp & !(1 << v), Some(v), parent);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::gen_path;

    fn cycle(n: usize) -> ColoredGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ColoredGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn singleton() {
        let ef = compute_elimination_forest(&ColoredGraph::new(1), 1).unwrap();
        assert_eq!(ef.roots(), vec![0]);
        assert_eq!(ef.height(), 1);
    }

    #[test]
    fn paths_have_logarithmic_depth() {
        let p7 = gen_path(7).unwrap();
        let ef = compute_elimination_forest(&p7, 3).unwrap();
        assert!(validate_elimination_forest(&p7, &ef));
        assert_eq!(ef.height(), 3);
        assert!(compute_elimination_forest(&p7, 2).is_none());
    }

    #[test]
    fn four_cycle_needs_three() {
        assert!(compute_elimination_forest(&cycle(4), 2).is_none());
        assert_eq!(tree_depth(&cycle(4)), 3);
    }

    #[test]
    fn validation() {
        let star = ColoredGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let ef = EliminationForest::new(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        assert!(validate_elimination_forest(&star, &ef));
        assert_eq!(ef.height(), 2);

        // P3 = 0-1-2: vertex 1 under 0, vertex 2 a separate root.
        let p3 = gen_path(3).unwrap();
        let bad = EliminationForest::new(vec![None, Some(0), None]).unwrap();
        assert!(!validate_elimination_forest(&p3, &bad));

        let chain = EliminationForest::new(vec![None, Some(0), Some(1), Some(2)]).unwrap();
        assert!(validate_elimination_forest(&cycle(4), &chain));
        assert!(EliminationForest::new(vec![Some(1), Some(0)]).is_err());
    }
}
