//! Paths, half-graphs, `kP_t`, and their flips.

use super::colored::{ColoredGraph, Vertex};
use super::flip::{apply_flip, PartitionFlip};
use crate::error::{Error, Result};

/// Path `v1 - v2 - ... - vn`, all vertices colored 1.
pub fn gen_path(n: usize) -> Result<ColoredGraph> {
    if n == 0 {
        return Err(Error::invalid("a path needs at least one vertex"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    ColoredGraph::from_edges(n, &edges)
}

/// Half-graph `H_t` with its bipartition.
#[derive(Debug, Clone)]
pub struct HalfGraph {
    pub graph: ColoredGraph,
    /// `a_1..a_t` are vertices `0..t`.
    pub a: Vec<Vertex>,
    /// `b_1..b_t` are vertices `t..2t`.
    pub b: Vec<Vertex>,
}

impl HalfGraph {
    pub fn partition(&self) -> Vec<Vec<Vertex>> {
        vec![self.a.clone(), self.b.clone()]
    }
}

/// `a_i b_j` is an edge iff `i <= j`.
pub fn gen_half_graph(t: usize) -> Result<HalfGraph> {
    if t == 0 {
        return Err(Error::invalid("half-graph order must be positive"));
    }
    let mut g = ColoredGraph::new(2 * t);
    for i in 0..t {
        for j in i..t {
            g.add_edge(i, t + j)?;
        }
    }
    Ok(HalfGraph {
        graph: g,
        a: (0..t).collect(),
        b: (t..2 * t).collect(),
    })
}

/// Symmetric relation on the two sides `{A, B}` of a half-graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SideRelation {
    pub aa: bool,
    pub bb: bool,
    pub ab: bool,
}

impl SideRelation {
    pub const EMPTY: SideRelation = SideRelation {
        aa: false,
        bb: false,
        ab: false,
    };

    /// All eight symmetric relations on `{A, B}`.
    pub fn all() -> Vec<SideRelation> {
        (0..8u8)
            .map(|m| SideRelation {
                aa: m & 1 != 0,
                bb: m & 2 != 0,
                ab: m & 4 != 0,
            })
            .collect()
    }

    /// Parses a comma list of `AA`, `BB`, `AB` (or `BA`); empty means none.
    pub fn parse(text: &str) -> Result<Self> {
        let mut r = SideRelation::EMPTY;
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.to_ascii_uppercase().as_str() {
                "AA" => r.aa = true,
                "BB" => r.bb = true,
                "AB" | "BA" => r.ab = true,
                other => return Err(Error::invalid(format!("unknown side pair '{other}'"))),
            }
        }
        Ok(r)
    }

    fn pairs(self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.aa {
            out.push((0, 0));
        }
        if self.bb {
            out.push((1, 1));
        }
        if self.ab {
            out.push((0, 1));
        }
        out
    }
}

pub fn gen_flipped_half_graph(t: usize, rel: SideRelation) -> Result<HalfGraph> {
    let h = gen_half_graph(t)?;
    let flip = PartitionFlip::new(h.partition(), rel.pairs())?;
    Ok(HalfGraph {
        graph: apply_flip(&h.graph, &flip)?,
        ..h
    })
}

/// `k` disjoint paths on `t` vertices with layering `L_1..L_t`.
///
/// Vertex `(a, b)` for `a in 1..=k`, `b in 1..=t` has id `(a-1)*t + (b-1)`.
#[derive(Debug, Clone)]
pub struct LayeredPaths {
    pub graph: ColoredGraph,
    pub layers: Vec<Vec<Vertex>>,
}

pub fn gen_kpt(k: usize, t: usize) -> Result<LayeredPaths> {
    if k == 0 || t == 0 {
        return Err(Error::invalid("kP_t needs k, t >= 1"));
    }
    let id = |a: usize, b: usize| a * t + b;
    let mut g = ColoredGraph::new(k * t);
    for a in 0..k {
        for b in 1..t {
            g.add_edge(id(a, b - 1), id(a, b))?;
        }
    }
    let layers = (0..t).map(|b| (0..k).map(|a| id(a, b)).collect()).collect();
    Ok(LayeredPaths { graph: g, layers })
}

/// `rel` relates 1-based layer indices.
pub fn gen_layerwise_flipped_kpt(k: usize, t: usize, rel: &[(usize, usize)]) -> Result<ColoredGraph> {
    let p = gen_kpt(k, t)?;
    let mut pairs = Vec::new();
    for &(i, j) in rel {
        if i == 0 || j == 0 || i > t || j > t {
            return Err(Error::invalid(format!("layer pair ({i},{j}) outside 1..={t}")));
        }
        pairs.push((i - 1, j - 1));
    }
    let flip = PartitionFlip::new(p.layers, pairs)?;
    apply_flip(&p.graph, &flip)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths() {
        assert!(gen_path(0).is_err());
        assert_eq!(gen_path(1).unwrap().n(), 1);
        assert_eq!(gen_path(2).unwrap().edges(), vec![(0, 1)]);
        let p5 = gen_path(5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        assert_eq!((0..5).filter(|&v| p5.degree(v) == 1).count(), 2);
    }

    #[test]
    fn half_graphs() {
        assert_eq!(gen_half_graph(1).unwrap().graph.edges(), vec![(0, 1)]);
        // a1=0, a2=1, b1=2, b2=3
        assert_eq!(
            gen_half_graph(2).unwrap().graph.edges(),
            vec![(0, 2), (0, 3), (1, 3)]
        );
        for t in 1..8 {
            assert_eq!(gen_half_graph(t).unwrap().graph.edge_count(), t * (t + 1) / 2);
        }
    }

    #[test]
    fn flipping_the_cross_pair_reverses_the_order() {
        let t = 3;
        let h = gen_flipped_half_graph(t, SideRelation::parse("AB").unwrap()).unwrap();
        for i in 0..t {
            for j in 0..t {
                assert_eq!(h.graph.adjacent(i, t + j), i > j, "a{} b{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn flipping_side_a_adds_a_clique() {
        let t = 4;
        let base = gen_half_graph(t).unwrap().graph;
        let h = gen_flipped_half_graph(t, SideRelation::parse("AA").unwrap()).unwrap().graph;
        for u in 0..2 * t {
            for v in 0..2 * t {
                if u == v {
                    continue;
                }
                let expected = if u < t && v < t { true } else { base.adjacent(u, v) };
                assert_eq!(h.adjacent(u, v), expected);
            }
        }
        assert_eq!(gen_flipped_half_graph(t, SideRelation::EMPTY).unwrap().graph, base);
    }

    #[test]
    fn full_flip_on_order_two() {
        // Vertex order a1 a2 b1 b2; H_2 has a1b1, a1b2, a2b2.
        // Flipping AA, BB and AB complements every pair.
        let expected = [
            [false, true, false, false],
            [true, false, true, false],
            [false, true, false, true],
            [false, false, true, false],
        ];
        let h = gen_flipped_half_graph(2, SideRelation::parse("AA,BB,AB").unwrap()).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(h.graph.adjacent(u, v), expected[u][v], "{u} {v}");
            }
        }
    }

    #[test]
    fn eight_side_relations() {
        let all = SideRelation::all();
        assert_eq!(all.len(), 8);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn kpt() {
        assert_eq!(gen_kpt(1, 6).unwrap().graph, gen_path(6).unwrap());
        let p = gen_kpt(3, 1).unwrap();
        assert_eq!((p.graph.n(), p.graph.edge_count()), (3, 0));
        let p = gen_kpt(2, 3).unwrap();
        assert_eq!(p.graph.edge_count(), 4);
        assert!(p.layers.iter().all(|l| l.len() == 2));
        for k in 1..4 {
            for t in 1..5 {
                assert_eq!(gen_kpt(k, t).unwrap().graph.edge_count(), k * (t - 1));
            }
        }
    }

    #[test]
    fn layerwise_flip() {
        assert_eq!(gen_layerwise_flipped_kpt(2, 3, &[]).unwrap(), gen_kpt(2, 3).unwrap().graph);
        let g = gen_layerwise_flipped_kpt(2, 2, &[(1, 1)]).unwrap();
        // layer 1 is {(1,1), (2,1)} = {0, 2}
        assert!(g.adjacent(0, 2));
        assert_eq!(g.edge_count(), 3);
        assert!(gen_layerwise_flipped_kpt(2, 2, &[(1, 3)]).is_err());
    }
}
