use std::collections::BTreeSet;

use super::colored::{ColoredGraph, Vertex};
use crate::error::{Error, Result};

/// A symmetric relation on the parts of a partition of a vertex subset.
///
/// Applying it XORs adjacency between every pair of vertices whose parts are
/// related; pairs touching a vertex outside the parts are left alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFlip {
    parts: Vec<Vec<Vertex>>,
    rel: BTreeSet<(usize, usize)>,
}

impl PartitionFlip {
    /// `rel` holds part-index pairs; each pair is stored in both orientations.
    pub fn new(parts: Vec<Vec<Vertex>>, rel: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for part in &parts {
            for &v in part {
                if !seen.insert(v) {
                    return Err(Error::invalid(format!("vertex {v} lies in two parts")));
                }
            }
        }
        let mut r = BTreeSet::new();
        for (a, b) in rel {
            if a >= parts.len() || b >= parts.len() {
                return Err(Error::invalid(format!(
                    "flip relates part ({a},{b}) but there are {} parts",
                    parts.len()
                )));
            }
            r.insert((a.min(b), a.max(b)));
        }
        Ok(PartitionFlip { parts, rel: r })
    }

    /// Single-part flip: complements adjacency inside `set`.
    pub fn within(set: Vec<Vertex>) -> Result<Self> {
        PartitionFlip::new(vec![set], [(0, 0)])
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rel.contains(&(a.min(b), a.max(b)))
    }

    /// Related part-index pairs `(a, b)` with `a <= b`.
    pub fn relation(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rel.iter().copied()
    }
}

pub fn apply_flip(g: &ColoredGraph, flip: &PartitionFlip) -> Result<ColoredGraph> {
    let mut part_of = vec![None; g.n()];
    for (i, part) in flip.parts.iter().enumerate() {
        for &v in part {
            if v >= g.n() {
                return Err(Error::invalid(format!("flip part names vertex {v} outside the graph")));
            }
            part_of[v] = Some(i);
        }
    }
    let mut out = g.clone();
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if let (Some(a), Some(b)) = (part_of[u], part_of[v]) {
                if flip.related(a, b) {
                    out.toggle_edge(u, v)?;
                }
            }
        }
    }
    Ok(out)
}
