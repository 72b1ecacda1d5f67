use std::collections::BTreeMap;

use super::colored::{ColoredGraph, Vertex};
use super::tree::RootedColoredTree;
use crate::error::{Error, Result};

/// Key of an adjacency rule: unordered color pair plus tree distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleKey {
    pub lo: u32,
    pub hi: u32,
    pub distance: usize,
}

impl RuleKey {
    pub fn new(c1: u32, c2: u32, distance: usize) -> Self {
        RuleKey {
            lo: c1.min(c2),
            hi: c1.max(c2),
            distance,
        }
    }
}

/// A colored rooted tree whose leaves stand for graph vertices, with
/// adjacency decided by leaf colors and tree distance.
///
/// Graph vertex `i` is the `i`-th leaf in ascending tree-vertex order.
/// Rule entries that are absent mean non-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeModel {
    tree: RootedColoredTree,
    leaves: Vec<Vertex>,
    rule: BTreeMap<RuleKey, bool>,
}

impl TreeModel {
    pub fn new(tree: RootedColoredTree, rule: BTreeMap<RuleKey, bool>) -> Self {
        let leaves = tree.leaves();
        TreeModel { tree, leaves, rule }
    }

    /// Inserts `(c1, c2, d) -> edge` rules; conflicting duplicates are errors.
    pub fn from_rule_list(tree: RootedColoredTree, entries: &[(u32, u32, usize, bool)]) -> Result<Self> {
        let mut rule = BTreeMap::new();
        for &(c1, c2, d, e) in entries {
            let key = RuleKey::new(c1, c2, d);
            if let Some(prev) = rule.insert(key, e) {
                if prev != e {
                    return Err(Error::invalid(format!(
                        "contradictory rule entries for colors ({c1},{c2}) at distance {d}"
                    )));
                }
            }
        }
        Ok(TreeModel::new(tree, rule))
    }

    pub fn tree(&self) -> &RootedColoredTree {
        &self.tree
    }

    /// Tree vertex standing for each graph vertex.
    pub fn leaves(&self) -> &[Vertex] {
        &self.leaves
    }

    pub fn rule(&self) -> &BTreeMap<RuleKey, bool> {
        &self.rule
    }

    pub fn rule_mut(&mut self) -> &mut BTreeMap<RuleKey, bool> {
        &mut self.rule
    }

    pub fn verdict(&self, c1: u32, c2: u32, distance: usize) -> bool {
        self.rule
            .get(&RuleKey::new(c1, c2, distance))
            .copied()
            .unwrap_or(false)
    }

    /// Verdict of the rule for graph vertices `u`, `v`.
    pub fn predicts(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = (self.leaves[u], self.leaves[v]);
        self.verdict(self.tree.color(a), self.tree.color(b), self.tree.distance(a, b))
    }

    /// The graph this tree-model defines, with every vertex colored 1.
    pub fn realize(&self) -> ColoredGraph {
        let n = self.leaves.len();
        let mut g = ColoredGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if self.predicts(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// `(color, color, distance)` triples realized by some pair of leaves.
    pub fn realized_keys(&self) -> Vec<RuleKey> {
        let mut keys = std::collections::BTreeSet::new();
        for (i, &a) in self.leaves.iter().enumerate() {
            for &b in &self.leaves[i + 1..] {
                keys.insert(RuleKey::new(
                    self.tree.color(a),
                    self.tree.color(b),
                    self.tree.distance(a, b),
                ));
            }
        }
        keys.into_iter().collect()
    }
}

/// Errors on a leaf/vertex count mismatch; otherwise checks every pair.
pub fn validate_tree_model(g: &ColoredGraph, tm: &TreeModel) -> Result<bool> {
    if tm.leaves().len() != g.n() {
        return Err(Error::invalid(format!(
            "tree-model has {} leaves but the graph has {} vertices",
            tm.leaves().len(),
            g.n()
        )));
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if tm.predicts(u, v) != g.adjacent(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
