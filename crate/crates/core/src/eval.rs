//! Bottom-up relation-table model checking.
//!
//! Every distinct subformula is evaluated once into a dense table indexed by
//! its own free variables, so a subformula with `m` free variables costs
//! `n^m` cells regardless of how many variables the whole sentence uses.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Vertex};
use crate::logic::{Formula, Sentence, Var};

/// Tables larger than this many cells are refused.
pub const MAX_TABLE_CELLS: usize = 1 << 28;

/// Partial map from variables to vertices.
pub type Assignment = BTreeMap<Var, Vertex>;

/// Satisfying set of a formula over its sorted free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    vars: Vec<Var>,
    n: usize,
    cells: Vec<bool>,
}

impl Relation {
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// `tuple[i]` is the value of `vars()[i]`.
    pub fn contains(&self, tuple: &[Vertex]) -> bool {
        assert_eq!(tuple.len(), self.vars.len());
        let idx = tuple.iter().fold(0, |acc, &v| acc * self.n + v);
        self.cells[idx]
    }

    pub fn holds(&self, a: &Assignment) -> bool {
        let t: Vec<Vertex> = self.vars.iter().map(|v| a[v]).collect();
        self.contains(&t)
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Satisfying tuples in lexicographic order.
    pub fn tuples(&self) -> Vec<Vec<Vertex>> {
        let m = self.vars.len();
        let mut out = Vec::new();
        for (idx, &b) in self.cells.iter().enumerate() {
            if b {
                let mut t = vec![0; m];
                let mut rest = idx;
                for slot in t.iter_mut().rev() {
                    *slot = rest % self.n;
                    rest /= self.n;
                }
                out.push(t);
            }
        }
        out
    }

    pub fn assignments(&self) -> Vec<Assignment> {
        self.tuples()
            .into_iter()
            .map(|t| self.vars.iter().copied().zip(t).collect())
            .collect()
    }
}

/// Work counters of one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Distinct subformulas evaluated.
    pub nodes: usize,
    /// Tuples visited across all tables.
    pub tuples: u64,
}

pub fn model_check(g: &ColoredGraph, s: &Sentence) -> Result<bool> {
    Ok(evaluate_free(g, s.formula())?.cells[0])
}

pub fn evaluate_free(g: &ColoredGraph, f: &Formula) -> Result<Relation> {
    evaluate_with_stats(g, f).map(|(r, _)| r)
}

pub fn evaluate_with_stats(g: &ColoredGraph, f: &Formula) -> Result<(Relation, EvalStats)> {
    if g.is_empty() {
        return Err(Error::invalid("formulas are not evaluated on the empty graph"));
    }
    let mut dag = Dag::default();
    let root = dag.intern(f);
    let mut ev = Evaluator {
        g,
        n: g.n(),
        tables: Vec::with_capacity(dag.nodes.len()),
        stats: EvalStats::default(),
    };
    for id in 0..dag.nodes.len() {
        let t = ev.eval_node(&dag, id)?;
        ev.tables.push(t);
    }
    ev.stats.nodes = dag.nodes.len();
    let rel = ev.tables.swap_remove(root);
    Ok((rel, ev.stats))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Edge(Var, Var),
    Eq(Var, Var),
    Color(u32, Var),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Implies(usize, usize),
    Exists(Var, usize),
    Forall(Var, usize),
}

/// Hash-consed formula: children always have smaller ids than parents.
#[derive(Default)]
struct Dag {
    nodes: Vec<Node>,
    free: Vec<Vec<Var>>,
    index: FxHashMap<Node, usize>,
}

impl Dag {
    fn intern(&mut self, f: &Formula) -> usize {
        let node = match f {
            Formula::Edge(u, v) => Node::Edge(*u, *v),
            Formula::Eq(u, v) => Node::Eq(*u, *v),
            Formula::Color(c, v) => Node::Color(*c, *v),
            Formula::Not(c) => Node::Not(self.intern(c)),
            Formula::And(cs) => Node::And(cs.iter().map(|c| self.intern(c)).collect()),
            Formula::Or(cs) => Node::Or(cs.iter().map(|c| self.intern(c)).collect()),
            Formula::Implies(a, b) => Node::Implies(self.intern(a), self.intern(b)),
            Formula::Exists(v, b) => Node::Exists(*v, self.intern(b)),
            Formula::Forall(v, b) => Node::Forall(*v, self.intern(b)),
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let free: BTreeSet<Var> = match &node {
            Node::Edge(u, v) | Node::Eq(u, v) => [*u, *v].into(),
            Node::Color(_, v) => [*v].into(),
            Node::Not(c) => self.free[*c].iter().copied().collect(),
            Node::And(cs) | Node::Or(cs) => cs.iter().flat_map(|&c| self.free[c].iter().copied()).collect(),
            Node::Implies(a, b) => self.free[*a].iter().chain(&self.free[*b]).copied().collect(),
            Node::Exists(v, b) | Node::Forall(v, b) => {
                self.free[*b].iter().copied().filter(|w| w != v).collect()
            }
        };
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.free.push(free.into_iter().collect());
        self.index.insert(node, id);
        id
    }
}

struct Evaluator<'a> {
    g: &'a ColoredGraph,
    n: usize,
    tables: Vec<Relation>,
    stats: EvalStats,
}

/// Maps a tuple over the parent's variables to a cell of a child table.
struct Projection {
    /// For each parent position, the stride it contributes in the child.
    strides: Vec<usize>,
}

impl Projection {
    fn new(parent: &[Var], child: &[Var], n: usize) -> Self {
        let m = child.len();
        let strides = parent
            .iter()
            .map(|v| match child.iter().position(|w| w == v) {
                Some(i) => n.pow((m - 1 - i) as u32),
                None => 0,
            })
            .collect();
        Projection { strides }
    }

    fn index(&self, digits: &[Vertex]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }
}

fn table_size(n: usize, arity: usize) -> Result<usize> {
    match n.checked_pow(arity as u32) {
        Some(s) if s <= MAX_TABLE_CELLS => Ok(s),
        _ => Err(Error::ResourceLimit(format!(
            "a table over {arity} free variables on {n} vertices exceeds {MAX_TABLE_CELLS} cells"
        ))),
    }
}

/// Calls `f` with every tuple in `0..n` of length `m`, lexicographically.
fn for_each_tuple(n: usize, m: usize, mut f: impl FnMut(&[Vertex])) {
    let mut digits = vec![0; m];
    loop {
        f(&digits);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

impl Evaluator<'_> {
    fn eval_node(&mut self, dag: &Dag, id: usize) -> Result<Relation> {
        let vars = dag.free[id].clone();
        let n = self.n;
        let size = table_size(n, vars.len())?;
        let pos = |v: &Var| vars.iter().position(|w| w == v).unwrap();
        let mut cells = Vec::with_capacity(size);
        let g = self.g;
        match &dag.nodes[id] {
            Node::Edge(u, v) => {
                let (i, j) = (pos(u), pos(v));
                for_each_tuple(n, vars.len(), |t| cells.push(g.adjacent(t[i], t[j])));
            }
            Node::Eq(u, v) => {
                let (i, j) = (pos(u), pos(v));
                for_each_tuple(n, vars.len(), |t| cells.push(t[i] == t[j]));
            }
            Node::Color(c, v) => {
                let i = pos(v);
                for_each_tuple(n, vars.len(), |t| cells.push(g.color(t[i]) == *c));
            }
            Node::Not(c) => {
                let child = &self.tables[*c];
                cells.extend(child.cells.iter().map(|b| !b));
            }
            Node::And(cs) | Node::Or(cs) => {
                let is_and = matches!(dag.nodes[id], Node::And(_));
                let projs: Vec<Projection> = cs
                    .iter()
                    .map(|&c| Projection::new(&vars, &self.tables[c].vars, n))
                    .collect();
                let tables = &self.tables;
                for_each_tuple(n, vars.len(), |t| {
                    let mut it = cs.iter().zip(&projs).map(|(&c, p)| tables[c].cells[p.index(t)]);
                    cells.push(if is_and { it.all(|b| b) } else { it.any(|b| b) });
                });
            }
            Node::Implies(a, b) => {
                let pa = Projection::new(&vars, &self.tables[*a].vars, n);
                let pb = Projection::new(&vars, &self.tables[*b].vars, n);
                let (ta, tb) = (&self.tables[*a], &self.tables[*b]);
                for_each_tuple(n, vars.len(), |t| cells.push(!ta.cells[pa.index(t)] || tb.cells[pb.index(t)]));
            }
            Node::Exists(v, b) | Node::Forall(v, b) => {
                let is_exists = matches!(dag.nodes[id], Node::Exists(..));
                let body = &self.tables[*b];
                match body.vars.iter().position(|w| w == v) {
                    None => cells.extend_from_slice(&body.cells),
                    Some(k) => {
                        let stride = n.pow((body.vars.len() - 1 - k) as u32);
                        let p = Projection::new(&vars, &body.vars, n);
                        for_each_tuple(n, vars.len(), |t| {
                            let base = p.index(t);
                            let mut it = (0..n).map(|x| body.cells[base + x * stride]);
                            cells.push(if is_exists { it.any(|b| b) } else { it.all(|b| b) });
                        });
                    }
                }
                // The body table is what a quantifier node walks through.
                self.stats.tuples += body.cells.len() as u64;
                return Ok(Relation { vars, n, cells });
            }
        }
        self.stats.tuples += size as u64;
        Ok(Relation { vars, n, cells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::gen_path;
    use crate::logic::parse_formula;

    fn sentence(text: &str) -> Sentence {
        Sentence::new(parse_formula(text).unwrap()).unwrap()
    }

    #[test]
    fn basic_verdicts() {
        let p3 = gen_path(3).unwrap();
        assert!(model_check(&p3, &sentence("exists x1. exists x2. adj(x1,x2)")).unwrap());
        let k1 = ColoredGraph::new(1);
        assert!(!model_check(&k1, &sentence("exists x1. adj(x1,x1)")).unwrap());
        assert!(model_check(&k1, &sentence("exists x1. C1(x1)")).unwrap());
        assert!(!model_check(&k1, &sentence("exists x1. C7(x1)")).unwrap());
        assert!(model_check(&ColoredGraph::new(0), &sentence("exists x1. C1(x1)")).is_err());
    }

    #[test]
    fn edge_relation_of_k2() {
        let k2 = gen_path(2).unwrap();
        let r = evaluate_free(&k2, &parse_formula("adj(x1,x2)").unwrap()).unwrap();
        assert_eq!(r.tuples(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(r.vars(), &[Var::new(1), Var::new(2)]);
    }

    #[test]
    fn closed_formula_relation_is_nullary() {
        let k2 = gen_path(2).unwrap();
        let r = evaluate_free(&k2, &parse_formula("exists x1. exists x2. adj(x1,x2)").unwrap()).unwrap();
        assert_eq!(r.tuples(), vec![Vec::<Vertex>::new()]);
        let r = evaluate_free(&k2, &parse_formula("forall x1. exists x2. x1=x2 & C2(x2)").unwrap()).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn shared_subformulas_are_evaluated_once() {
        let k2 = gen_path(2).unwrap();
        let f = parse_formula("(exists x1. adj(x1,x2)) & (exists x1. adj(x1,x2)) & x2=x2").unwrap();
        let (_, stats) = evaluate_with_stats(&k2, &f).unwrap();
        assert_eq!(stats.nodes, 4);
    }

    #[test]
    fn variable_reuse_keeps_tables_small() {
        let p = gen_path(30).unwrap();
        // Distance-3 walks expressed with two variables only.
        let f = parse_formula("exists x2. adj(x1,x2) & (exists x1. adj(x2,x1) & (exists x2. adj(x1,x2)))").unwrap();
        let (r, stats) = evaluate_with_stats(&p, &f).unwrap();
        assert_eq!(r.len(), 30);
        assert!(stats.tuples <= (f.length() * 30 * 30) as u64);
    }
}
