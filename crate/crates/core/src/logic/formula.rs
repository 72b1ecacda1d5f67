use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A variable name `x<index>`; indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on index 0; use [`Var::try_new`] for untrusted input.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Var(index)
    }

    pub fn try_new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Var(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Shorthand for `Var::new`.
pub fn x(index: u32) -> Var {
    Var::new(index)
}

/// First-order formula over the vocabulary of colored graphs.
///
/// `And` and `Or` are n-ary and always hold at least two children when built
/// through the smart constructors or the parser.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Edge(Var, Var),
    Eq(Var, Var),
    Color(u32, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    pub fn edge(u: Var, v: Var) -> Self {
        Formula::Edge(u, v)
    }

    pub fn eq(u: Var, v: Var) -> Self {
        Formula::Eq(u, v)
    }

    pub fn color(c: u32, v: Var) -> Self {
        assert!(c >= 1, "color indices start at 1");
        Formula::Color(c, v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction of at least one formula; a single child is returned as is.
    pub fn and(children: Vec<Formula>) -> Self {
        match children.len() {
            0 => panic!("empty conjunction"),
            1 => children.into_iter().next().unwrap(),
            _ => Formula::And(children),
        }
    }

    /// Disjunction of at least one formula; a single child is returned as is.
    pub fn or(children: Vec<Formula>) -> Self {
        match children.len() {
            0 => panic!("empty disjunction"),
            1 => children.into_iter().next().unwrap(),
            _ => Formula::Or(children),
        }
    }

    /// Disjunction that falls back to `!(v=v)` when there are no disjuncts.
    pub fn any_or_false(children: Vec<Formula>, v: Var) -> Self {
        if children.is_empty() {
            Formula::falsum(v)
        } else {
            Formula::or(children)
        }
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    /// Canonical false: `!(v=v)`.
    pub fn falsum(v: Var) -> Self {
        Formula::not(Formula::eq(v, v))
    }

    /// Canonical true: `v=v`.
    pub fn verum(v: Var) -> Self {
        Formula::eq(v, v)
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Edge(..) | Formula::Eq(..) | Formula::Color(..) => Vec::new(),
            Formula::Not(c) | Formula::Exists(_, c) | Formula::Forall(_, c) => vec![c],
            Formula::And(cs) | Formula::Or(cs) => cs.iter().collect(),
            Formula::Implies(a, b) => vec![a, b],
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Edge(..) | Formula::Eq(..) | Formula::Color(..))
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Exists(..) | Formula::Forall(..))
    }

    /// Number of AST nodes.
    pub fn length(&self) -> usize {
        1 + self.children().into_iter().map(Formula::length).sum::<usize>()
    }

    /// Height of the AST; atoms have depth 1.
    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + b.quantifier_rank(),
            _ => self
                .children()
                .into_iter()
                .map(Formula::quantifier_rank)
                .max()
                .unwrap_or(0),
        }
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Edge(u, v) | Formula::Eq(u, v) => {
                out.insert(*u);
                out.insert(*v);
            }
            Formula::Color(_, v) => {
                out.insert(*v);
            }
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                out.insert(*v);
                b.collect_variables(out);
            }
            _ => {
                for c in self.children() {
                    c.collect_variables(out);
                }
            }
        }
    }

    /// Number of distinct variable names.
    pub fn variable_count(&self) -> usize {
        self.variables().len()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Formula::Edge(u, v) | Formula::Eq(u, v) => [*u, *v].into_iter().collect(),
            Formula::Color(_, v) => [*v].into_iter().collect(),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let mut s = b.free_vars();
                s.remove(v);
                s
            }
            _ => self
                .children()
                .into_iter()
                .flat_map(|c| c.free_vars())
                .collect(),
        }
    }

    pub fn max_color(&self) -> u32 {
        match self {
            Formula::Color(c, _) => *c,
            _ => self
                .children()
                .into_iter()
                .map(Formula::max_color)
                .max()
                .unwrap_or(0),
        }
    }

    /// Simultaneous renaming of every occurrence (binding and use).
    ///
    /// Variables absent from `map` are kept. The map must be injective on the
    /// variables of `self` after defaulting, otherwise distinct variables
    /// would be merged.
    pub fn rename_variables(&self, map: &BTreeMap<Var, Var>) -> Result<Formula> {
        let vars = self.variables();
        let mut images = BTreeMap::new();
        for v in &vars {
            let img = *map.get(v).unwrap_or(v);
            if let Some(prev) = images.insert(img, *v) {
                return Err(Error::invalid(format!(
                    "renaming is not injective: {prev} and {v} both map to {img}"
                )));
            }
        }
        Ok(self.rename_unchecked(&|v| *map.get(&v).unwrap_or(&v)))
    }

    pub(crate) fn rename_unchecked(&self, f: &dyn Fn(Var) -> Var) -> Formula {
        match self {
            Formula::Edge(u, v) => Formula::Edge(f(*u), f(*v)),
            Formula::Eq(u, v) => Formula::Eq(f(*u), f(*v)),
            Formula::Color(c, v) => Formula::Color(*c, f(*v)),
            Formula::Not(c) => Formula::not(c.rename_unchecked(f)),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.rename_unchecked(f)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.rename_unchecked(f)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_unchecked(f), b.rename_unchecked(f))
            }
            Formula::Exists(v, b) => Formula::exists(f(*v), b.rename_unchecked(f)),
            Formula::Forall(v, b) => Formula::forall(f(*v), b.rename_unchecked(f)),
        }
    }

    /// Replaces every edge atom `adj(xi,xj)` by `subst(xi, xj)`.
    pub fn substitute_edge_atoms(&self, subst: &mut dyn FnMut(Var, Var) -> Formula) -> Formula {
        self.map_atoms(&mut |atom| match atom {
            Formula::Edge(u, v) => subst(*u, *v),
            other => other.clone(),
        })
    }

    /// Rebuilds the formula with every atom replaced by `f(atom)`.
    pub fn map_atoms(&self, f: &mut dyn FnMut(&Formula) -> Formula) -> Formula {
        match self {
            Formula::Edge(..) | Formula::Eq(..) | Formula::Color(..) => f(self),
            Formula::Not(c) => Formula::not(c.map_atoms(f)),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.map_atoms(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Exists(v, b) => Formula::exists(*v, b.map_atoms(f)),
            Formula::Forall(v, b) => Formula::forall(*v, b.map_atoms(f)),
        }
    }

    /// Renames bound variables so that the binder at nesting depth `d`
    /// (outermost is 1) becomes `x_{offset + d}`. Free variables are kept,
    /// so this is only capture-free on sentences or when `offset` exceeds
    /// every free variable index.
    pub fn normalize_bound_by_depth(&self, offset: u32) -> Formula {
        fn go(f: &Formula, depth: u32, offset: u32, env: &mut Vec<(Var, Var)>) -> Formula {
            let look = |v: Var, env: &Vec<(Var, Var)>| {
                env.iter()
                    .rev()
                    .find(|(from, _)| *from == v)
                    .map(|(_, to)| *to)
                    .unwrap_or(v)
            };
            match f {
                Formula::Edge(u, v) => Formula::Edge(look(*u, env), look(*v, env)),
                Formula::Eq(u, v) => Formula::Eq(look(*u, env), look(*v, env)),
                Formula::Color(c, v) => Formula::Color(*c, look(*v, env)),
                Formula::Not(c) => Formula::not(go(c, depth, offset, env)),
                Formula::And(cs) => {
                    Formula::And(cs.iter().map(|c| go(c, depth, offset, env)).collect())
                }
                Formula::Or(cs) => {
                    Formula::Or(cs.iter().map(|c| go(c, depth, offset, env)).collect())
                }
                Formula::Implies(a, b) => {
                    Formula::implies(go(a, depth, offset, env), go(b, depth, offset, env))
                }
                Formula::Exists(v, b) | Formula::Forall(v, b) => {
                    let target = Var::new(offset + depth + 1);
                    env.push((*v, target));
                    let body = go(b, depth + 1, offset, env);
                    env.pop();
                    if matches!(f, Formula::Exists(..)) {
                        Formula::exists(target, body)
                    } else {
                        Formula::forall(target, body)
                    }
                }
            }
        }
        go(self, 0, offset, &mut Vec::new())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_formula(self))
    }
}

/// A formula without free variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(formula: Formula) -> Result<Self> {
        let free = formula.free_vars();
        if free.is_empty() {
            Ok(Sentence(formula))
        } else {
            let names: Vec<String> = free.iter().map(Var::to_string).collect();
            Err(Error::invalid(format!(
                "not a sentence; free variables: {}",
                names.join(", ")
            )))
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
