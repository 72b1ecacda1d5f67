use std::collections::BTreeSet;

use super::colored::{ColoredGraph, Vertex};
use crate::error::{Error, Result};

/// A colored tree with a designated root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedColoredTree {
    graph: ColoredGraph,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth_of: Vec<usize>,
}

impl RootedColoredTree {
    /// Builds a tree from its parent array; exactly one entry is `None`.
    pub fn from_parents(parent: Vec<Option<Vertex>>, colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::invalid("a tree needs at least one vertex"));
        }
        let roots: Vec<Vertex> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::invalid(format!(
                "a rooted tree needs exactly one root, found {}",
                roots.len()
            )));
        }
        let mut g = ColoredGraph::new(n).with_colors(colors, num_colors)?;
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                g.add_edge(v, p)?;
            }
        }
        Self::from_graph(g, roots[0])
    }

    /// Roots a tree-shaped graph at `root`.
    pub fn from_graph(graph: ColoredGraph, root: Vertex) -> Result<Self> {
        let n = graph.n();
        if root >= n {
            return Err(Error::invalid(format!("root {root} out of range")));
        }
        if graph.edge_count() + 1 != n || !graph.is_connected() {
            return Err(Error::invalid("graph is not a tree"));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth_of = vec![0; n];
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    children[u].push(w);
                    depth_of[w] = depth_of[u] + 1;
                    stack.push(w);
                }
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }
        Ok(RootedColoredTree {
            graph,
            root,
            parent,
            children,
            depth_of,
        })
    }

    pub fn singleton(color: u32, num_colors: u32) -> Result<Self> {
        Self::from_parents(vec![None], vec![color], num_colors)
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ColoredGraph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn color(&self, v: Vertex) -> u32 {
        self.graph.color(v)
    }

    pub fn num_colors(&self) -> u32 {
        self.graph.num_colors()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    /// Leaves (vertices without children) in ascending id order.
    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Distance of `v` from the root.
    pub fn depth_of(&self, v: Vertex) -> usize {
        self.depth_of[v]
    }

    /// Maximum distance from the root.
    pub fn depth(&self) -> usize {
        self.depth_of.iter().copied().max().unwrap_or(0)
    }

    /// Vertices of the subtree below `v`, including `v`.
    pub fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().copied());
        }
        out.sort_unstable();
        out
    }

    pub fn lca(&self, mut u: Vertex, mut v: Vertex) -> Vertex {
        while self.depth_of[u] > self.depth_of[v] {
            u = self.parent[u].unwrap();
        }
        while self.depth_of[v] > self.depth_of[u] {
            v = self.parent[v].unwrap();
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
        }
        u
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        let a = self.lca(u, v);
        self.depth_of[u] + self.depth_of[v] - 2 * self.depth_of[a]
    }

    pub fn is_ancestor(&self, a: Vertex, mut v: Vertex) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Restriction to a vertex set containing the root and closed under
    /// parents, relabeled by ascending id. Returns the tree and the kept ids.
    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> Result<(RootedColoredTree, Vec<Vertex>)> {
        if !keep.contains(&self.root) {
            return Err(Error::invalid("restriction must keep the root"));
        }
        for &v in keep {
            if let Some(p) = self.parent[v] {
                if !keep.contains(&p) {
                    return Err(Error::invalid(format!(
                        "vertex {v} kept without its parent {p}"
                    )));
                }
            }
        }
        let order: Vec<Vertex> = keep.iter().copied().collect();
        let graph = self.graph.induced(keep);
        let root = order.binary_search(&self.root).unwrap();
        Ok((RootedColoredTree::from_graph(graph, root)?, order))
    }

    /// Same tree with new colors.
    pub fn recolored(&self, colors: Vec<u32>, num_colors: u32) -> Result<Self> {
        let graph = self.graph.clone().with_colors(colors, num_colors)?;
        Ok(RootedColoredTree {
            graph,
            root: self.root,
            parent: self.parent.clone(),
            children: self.children.clone(),
            depth_of: self.depth_of.clone(),
        })
    }
}
