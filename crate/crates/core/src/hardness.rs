//! Reduction from model checking on arbitrary graphs to model checking on
//! paths with a bounded number of variables.
//!
//! `xi_formula(k)` says that `x1` and `x2` are at distance exactly `k` on a
//! path using only the names `x1..x4`. Vertex `v_i` of the source graph is
//! mapped to the path vertex at distance `i - 1` from an endpoint, and each
//! edge atom is replaced by a disjunction over the source edges.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eval::model_check;
use crate::graph::generators::gen_path;
use crate::graph::{ColoredGraph, Vertex};
use crate::logic::{Formula, Sentence, Var};

/// Bijection on `{1, 2, 3, 4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermutationSigma([u32; 4]);

impl PermutationSigma {
    /// `images[i-1]` is the image of `i`.
    pub fn new(images: [u32; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if !(1..=4).contains(&i) || std::mem::replace(&mut seen[i as usize - 1], true) {
                return Err(Error::invalid(format!("{images:?} is not a permutation of 1..=4")));
            }
        }
        Ok(PermutationSigma(images))
    }

    pub fn identity() -> Self {
        PermutationSigma([1, 2, 3, 4])
    }

    /// The step permutation of the walk recursion.
    pub fn omega() -> Self {
        PermutationSigma([2, 4, 3, 1])
    }

    /// Swaps 2 and 3.
    pub fn rho() -> Self {
        PermutationSigma([1, 3, 2, 4])
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize - 1]
    }

    /// `self ∘ other`, that is `i ↦ self(other(i))`.
    pub fn compose(&self, other: &PermutationSigma) -> Self {
        PermutationSigma([1, 2, 3, 4].map(|i| self.apply(other.apply(i))))
    }

    fn var(&self, i: u32) -> Var {
        Var::new(self.apply(i))
    }
}

/// Walk formula with free variables `x_σ(1), x_σ(2), x_σ(3)`: there is a
/// non-backtracking walk of length `k` from `x_σ(1)` to `x_σ(3)` whose first
/// step goes to `x_σ(2)`.
pub fn chi_formula(k: usize, sigma: PermutationSigma) -> Formula {
    assert!(k >= 1, "chi is defined for k >= 1");
    let mut f = None;
    // Built inside out: level `k` uses sigma ∘ omega^(k-1).
    let mut perms = Vec::with_capacity(k);
    let mut p = sigma;
    for _ in 0..k {
        perms.push(p);
        p = p.compose(&PermutationSigma::omega());
    }
    for (level, s) in perms.iter().enumerate().rev() {
        f = Some(if level + 1 == k {
            Formula::and(vec![Formula::edge(s.var(1), s.var(2)), Formula::eq(s.var(2), s.var(3))])
        } else {
            Formula::and(vec![
                Formula::edge(s.var(1), s.var(2)),
                Formula::exists(
                    s.var(4),
                    Formula::and(vec![
                        Formula::not(Formula::eq(s.var(1), s.var(4))),
                        Formula::edge(s.var(2), s.var(4)),
                        f.take().unwrap(),
                    ]),
                ),
            ])
        });
    }
    f.unwrap()
}

/// Distance exactly `k` between `x1` and `x2` on paths.
pub fn xi_formula(k: usize) -> Formula {
    if k == 0 {
        Formula::eq(Var::new(1), Var::new(2))
    } else {
        Formula::exists(Var::new(3), chi_formula(k, PermutationSigma::rho()))
    }
}

/// `xi_formula(k)` with its second argument moved to `target`, using
/// `spare` for the two inner names.
fn xi_at(k: usize, target: Var, spare: [Var; 2]) -> Formula {
    let map: BTreeMap<Var, Var> = [
        (Var::new(2), target),
        (Var::new(3), spare[0]),
        (Var::new(4), spare[1]),
    ]
    .into();
    xi_formula(k).rename_variables(&map).expect("renaming into distinct names")
}

/// With `x1` on an endpoint `p`, holds of `(p, f(u), f(v))` exactly when `uv` is
/// an edge, where `f` sends `ordering[i]` to the path vertex at distance `i`
/// from `p`.
pub fn epsilon_formula(g: &ColoredGraph, ordering: &[Vertex]) -> Result<Formula> {
    let pos = check_ordering(g, ordering)?;
    let (x1, x2, x3, x4) = (Var::new(1), Var::new(2), Var::new(3), Var::new(4));
    let mut disjuncts = Vec::new();
    for (i, &u) in ordering.iter().enumerate() {
        let mut nbrs: Vec<usize> = g.neighbors(u).iter().map(|&w| pos[w]).collect();
        nbrs.sort_unstable();
        for j in nbrs {
            disjuncts.push(Formula::and(vec![xi_formula(i), xi_at(j, x3, [x2, x4])]));
        }
    }
    Ok(Formula::any_or_false(disjuncts, x1))
}

fn check_ordering(g: &ColoredGraph, ordering: &[Vertex]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; g.n()];
    if ordering.len() != g.n() {
        return Err(Error::invalid("the ordering must list every vertex once"));
    }
    for (i, &v) in ordering.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return Err(Error::invalid("the ordering must list every vertex once"));
        }
        pos[v] = i;
    }
    Ok(pos)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub path: ColoredGraph,
    pub psi: Sentence,
    /// Source vertex placed at each path position.
    pub ordering: Vec<Vertex>,
    pub quantifier_rank: usize,
    /// `max(q + 1, 4)`.
    pub variable_budget: usize,
}

/// Builds a path and a sentence that holds on it exactly when `phi` holds
/// on `g`. Vertices are ordered by ascending id.
pub fn reduce_to_path(g: &ColoredGraph, phi: &Sentence) -> Result<ReductionOutput> {
    if g.n() < 3 {
        return Err(Error::precondition(format!(
            "the reduction needs at least 3 vertices, got {}",
            g.n()
        )));
    }
    let ordering: Vec<Vertex> = (0..g.n()).collect();
    let x1 = Var::new(1);
    let q = phi.formula().quantifier_rank();
    let normalized = phi.formula().normalize_bound_by_depth(1);
    let epsilon = epsilon_formula(g, &ordering)?;
    let by_color: BTreeMap<u32, Vec<usize>> = ordering.iter().enumerate().fold(BTreeMap::new(), |mut m, (i, &v)| {
        m.entry(g.color(v)).or_insert_with(Vec::new).push(i);
        m
    });

    let psi_prime = normalized.map_atoms(&mut |atom| match atom {
        Formula::Edge(u, v) if u == v => Formula::falsum(*u),
        Formula::Edge(u, v) => {
            let (i, j) = (u.index(), v.index());
            let s = (2..=4).find(|t| *t != i && *t != j).unwrap();
            let map: BTreeMap<Var, Var> = [(Var::new(2), *u), (Var::new(3), *v), (Var::new(4), Var::new(s))].into();
            epsilon.rename_variables(&map).expect("renaming into distinct names")
        }
        Formula::Color(c, v) => {
            let spare: Vec<Var> = (2..=4).filter(|&t| t != v.index()).take(2).map(Var::new).collect();
            let positions = by_color.get(c).cloned().unwrap_or_default();
            Formula::any_or_false(
                positions.into_iter().map(|m| xi_at(m, *v, [spare[0], spare[1]])).collect(),
                *v,
            )
        }
        other => other.clone(),
    });

    let (x2, x3) = (Var::new(2), Var::new(3));
    let guard = Formula::exists(
        x2,
        Formula::forall(x3, Formula::implies(Formula::edge(x1, x3), Formula::eq(x2, x3))),
    );
    let psi = Sentence::new(Formula::exists(x1, Formula::and(vec![psi_prime, guard])))?;
    Ok(ReductionOutput {
        path: gen_path(g.n())?,
        psi,
        ordering,
        quantifier_rank: q,
        variable_budget: (q + 1).max(4),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossValidation {
    pub lhs: bool,
    pub rhs: bool,
    pub agree: bool,
}

pub fn cross_validate(g: &ColoredGraph, phi: &Sentence) -> Result<CrossValidation> {
    let out = reduce_to_path(g, phi)?;
    let lhs = model_check(g, phi)?;
    let rhs = model_check(&out.path, &out.psi)?;
    Ok(CrossValidation {
        lhs,
        rhs,
        agree: lhs == rhs,
    })
}
