use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Finite simple graph with every vertex carrying a color in `1..=num_colors`.
///
/// Vertices are `0..n`; the file formats shift them to 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    colors: Vec<u32>,
    num_colors: u32,
    adj: Vec<bool>,
    neighbors: Vec<Vec<Vertex>>,
}

impl ColoredGraph {
    /// Edgeless graph on `n` vertices, all colored 1.
    pub fn new(n: usize) -> Self {
        ColoredGraph {
            colors: vec![1; n],
            num_colors: 1,
            adj: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = ColoredGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_colors(mut self, colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        if colors.len() != self.n() {
            return Err(Error::invalid(format!(
                "{} colors given for {} vertices",
                colors.len(),
                self.n()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > num_colors) {
            return Err(Error::invalid(format!(
                "color {c} outside 1..={num_colors}"
            )));
        }
        self.colors = colors;
        self.num_colors = num_colors.max(1);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn set_color(&mut self, v: Vertex, c: u32) -> Result<()> {
        if c == 0 || c > self.num_colors {
            return Err(Error::invalid(format!(
                "color {c} outside 1..={}",
                self.num_colors
            )));
        }
        self.colors[v] = c;
        Ok(())
    }

    /// Raises the palette size; existing colors stay valid.
    pub fn set_num_colors(&mut self, c: u32) -> Result<()> {
        let used = self.colors.iter().copied().max().unwrap_or(1);
        if c < used {
            return Err(Error::invalid(format!(
                "palette {c} smaller than used color {used}"
            )));
        }
        self.num_colors = c.max(1);
        Ok(())
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u * self.n() + v]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        if self.adjacent(u, v) {
            return Err(Error::invalid(format!("duplicate edge {u}-{v}")));
        }
        self.set_edge(u, v, true);
        Ok(())
    }

    pub fn toggle_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_pair(u, v)?;
        let now = self.adjacent(u, v);
        self.set_edge(u, v, !now);
        Ok(())
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge {u}-{v} out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        Ok(())
    }

    fn set_edge(&mut self, u: Vertex, v: Vertex, on: bool) {
        let n = self.n();
        self.adj[u * n + v] = on;
        self.adj[v * n + u] = on;
        if on {
            self.neighbors[u].push(v);
            self.neighbors[v].push(u);
            self.neighbors[u].sort_unstable();
            self.neighbors[v].sort_unstable();
        } else {
            self.neighbors[u].retain(|&w| w != v);
            self.neighbors[v].retain(|&w| w != u);
        }
    }

    /// Induced subgraph on `keep`, relabeled by ascending original id.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> ColoredGraph {
        let order: Vec<Vertex> = keep.iter().copied().collect();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let mut g = ColoredGraph::new(order.len());
        g.num_colors = self.num_colors;
        for (i, &v) in order.iter().enumerate() {
            g.colors[i] = self.colors[v];
            for &w in &self.neighbors[v] {
                if index[w] != usize::MAX && v < w {
                    g.set_edge(i, index[w], true);
                }
            }
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let n = self.n();
        let mut g = ColoredGraph::new(n + other.n());
        g.num_colors = self.num_colors.max(other.num_colors);
        g.colors[..n].copy_from_slice(&self.colors);
        g.colors[n..].copy_from_slice(&other.colors);
        for (u, v) in self.edges() {
            g.set_edge(u, v, true);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + n, v + n, true);
        }
        g
    }

    /// Relabels by `perm`: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> ColoredGraph {
        let mut g = ColoredGraph::new(self.n());
        g.num_colors = self.num_colors;
        for v in 0..self.n() {
            g.colors[perm[v]] = self.colors[v];
        }
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = std::collections::VecDeque::from([source]);
        dist[source] = Some(0);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.neighbors[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}
