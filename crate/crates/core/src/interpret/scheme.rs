use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::eval::{evaluate_free, Assignment};
use crate::graph::{ColoredGraph, Vertex};
use crate::logic::{Formula, Sentence, Var};

/// One-dimensional interpretation: a domain formula in `x1`, an edge formula
/// in `x1, x2`, and optionally one formula in `x1` per output color.
///
/// Without color formulas, interpreted vertices keep their host colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpretationScheme {
    domain: Formula,
    edge: Formula,
    colors: Option<Vec<Formula>>,
    variable_overhead: usize,
}

impl InterpretationScheme {
    /// The overhead is set to exactly the number of auxiliary variables.
    pub fn new(domain: Formula, edge: Formula, colors: Option<Vec<Formula>>) -> Result<Self> {
        let mut s = InterpretationScheme {
            domain,
            edge,
            colors,
            variable_overhead: 0,
        };
        s.check_free_variables()?;
        s.variable_overhead = s.auxiliary_variables().len();
        Ok(s)
    }

    /// Like [`InterpretationScheme::new`] but with a caller-declared pool size;
    /// translation fails if the formulas need more auxiliary variables.
    pub fn with_declared_overhead(
        domain: Formula,
        edge: Formula,
        colors: Option<Vec<Formula>>,
        variable_overhead: usize,
    ) -> Result<Self> {
        let s = InterpretationScheme {
            domain,
            edge,
            colors,
            variable_overhead,
        };
        s.check_free_variables()?;
        Ok(s)
    }

    fn check_free_variables(&self) -> Result<()> {
        let x1: BTreeSet<Var> = [Var::new(1)].into();
        let x12: BTreeSet<Var> = [Var::new(1), Var::new(2)].into();
        if !self.domain.free_vars().is_subset(&x1) {
            return Err(Error::invalid("the domain formula may only have x1 free"));
        }
        if !self.edge.free_vars().is_subset(&x12) {
            return Err(Error::invalid("the edge formula may only have x1 and x2 free"));
        }
        if let Some(cs) = &self.colors {
            if cs.is_empty() {
                return Err(Error::invalid("at least one color formula is needed"));
            }
            if cs.iter().any(|c| !c.free_vars().is_subset(&x1)) {
                return Err(Error::invalid("color formulas may only have x1 free"));
            }
        }
        Ok(())
    }

    pub fn identity() -> Self {
        Self::new(
            Formula::eq(Var::new(1), Var::new(1)),
            Formula::edge(Var::new(1), Var::new(2)),
            None,
        )
        .unwrap()
    }

    pub fn complement() -> Self {
        let (x1, x2) = (Var::new(1), Var::new(2));
        Self::new(
            Formula::eq(x1, x1),
            Formula::and(vec![
                Formula::not(Formula::edge(x1, x2)),
                Formula::not(Formula::eq(x1, x2)),
            ]),
            None,
        )
        .unwrap()
    }

    pub fn domain(&self) -> &Formula {
        &self.domain
    }

    pub fn edge(&self) -> &Formula {
        &self.edge
    }

    pub fn colors(&self) -> Option<&[Formula]> {
        self.colors.as_deref()
    }

    pub fn variable_overhead(&self) -> usize {
        self.variable_overhead
    }

    /// Variables other than the parameter slots; each needs a fresh name.
    ///
    /// `x2` is a parameter of the edge formula only, so it counts here when
    /// the domain or a color formula uses it.
    fn auxiliary_variables(&self) -> Vec<Var> {
        let (x1, x2) = (Var::new(1), Var::new(2));
        let mut aux: BTreeSet<Var> = self.edge.variables();
        aux.remove(&x1);
        aux.remove(&x2);
        let mut unary = self.domain.variables();
        for c in self.colors.iter().flatten() {
            unary.extend(c.variables());
        }
        unary.remove(&x1);
        aux.extend(unary);
        aux.into_iter().collect()
    }
}

/// The interpreted graph together with the host vertex behind each of its
/// vertices.
pub fn apply_interpretation_with_domain(
    scheme: &InterpretationScheme,
    g: &ColoredGraph,
) -> Result<(ColoredGraph, Vec<Vertex>)> {
    let (x1, x2) = (Var::new(1), Var::new(2));
    let dom_rel = evaluate_free(g, &scheme.domain)?;
    let point = |v: Vertex| -> Assignment { [(x1, v)].into() };
    let domain: Vec<Vertex> = (0..g.n()).filter(|&v| dom_rel.holds(&point(v))).collect();
    let edge_rel = evaluate_free(g, &scheme.edge)?;
    let m = domain.len();
    let mut out = ColoredGraph::new(m);
    for i in 0..m {
        let pair = |a: Vertex, b: Vertex| -> Assignment { [(x1, a), (x2, b)].into() };
        if edge_rel.holds(&pair(domain[i], domain[i])) {
            return Err(Error::invalid(format!(
                "the edge formula is reflexive at host vertex {}",
                domain[i]
            )));
        }
        for j in (i + 1)..m {
            let forward = edge_rel.holds(&pair(domain[i], domain[j]));
            if forward != edge_rel.holds(&pair(domain[j], domain[i])) {
                return Err(Error::invalid(format!(
                    "the edge formula is not symmetric on host vertices {} and {}",
                    domain[i], domain[j]
                )));
            }
            if forward {
                out.add_edge(i, j)?;
            }
        }
    }
    let out = match &scheme.colors {
        None => out.with_colors(domain.iter().map(|&v| g.color(v)).collect(), g.num_colors())?,
        Some(formulas) => {
            let rels = formulas
                .iter()
                .map(|f| evaluate_free(g, f))
                .collect::<Result<Vec<_>>>()?;
            let mut cols = Vec::with_capacity(m);
            for &v in &domain {
                let hits: Vec<usize> = (0..rels.len()).filter(|&i| rels[i].holds(&point(v))).collect();
                if hits.len() != 1 {
                    return Err(Error::invalid(format!(
                        "host vertex {v} satisfies {} color formulas instead of one",
                        hits.len()
                    )));
                }
                cols.push(hits[0] as u32 + 1);
            }
            out.with_colors(cols, formulas.len() as u32)?
        }
    };
    Ok((out, domain))
}

pub fn apply_interpretation(scheme: &InterpretationScheme, g: &ColoredGraph) -> Result<ColoredGraph> {
    apply_interpretation_with_domain(scheme, g).map(|(h, _)| h)
}

/// Rewrites a sentence about interpreted graphs into one about hosts.
///
/// Quantifiers are relativized to the domain formula, edge and color atoms
/// are replaced by instances of the scheme formulas, and the scheme's
/// auxiliary variables are renamed to the indices right above the largest
/// variable of `phi`.
pub fn backwards_translate(phi: &Sentence, scheme: &InterpretationScheme) -> Result<Sentence> {
    let aux = scheme.auxiliary_variables();
    if aux.len() > scheme.variable_overhead {
        return Err(Error::precondition(format!(
            "the scheme needs {} auxiliary variables but declares {}",
            aux.len(),
            scheme.variable_overhead
        )));
    }
    let top = phi.formula().variables().iter().map(|v| v.index()).max().unwrap_or(0);
    let mut pool = BTreeMap::new();
    for (i, &v) in aux.iter().enumerate() {
        pool.insert(v, Var::new(top + 1 + i as u32));
    }
    let tr = Translator { scheme, pool };
    Sentence::new(tr.translate(phi.formula())?)
}

struct Translator<'a> {
    scheme: &'a InterpretationScheme,
    pool: BTreeMap<Var, Var>,
}

impl Translator<'_> {
    fn unary(&self, f: &Formula, v: Var) -> Result<Formula> {
        let mut map = self.pool.clone();
        map.insert(Var::new(1), v);
        // x2 is auxiliary for unary formulas and already lives in the pool.
        f.rename_variables(&map)
    }

    fn translate(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Edge(u, v) if u == v => Formula::falsum(*u),
            Formula::Edge(u, v) => {
                let mut pool_without_x2 = self.pool.clone();
                pool_without_x2.remove(&Var::new(2));
                let mut map = pool_without_x2;
                map.insert(Var::new(1), *u);
                map.insert(Var::new(2), *v);
                self.scheme.edge.rename_variables(&map)?
            }
            Formula::Eq(..) => f.clone(),
            Formula::Color(c, v) => match &self.scheme.colors {
                None => f.clone(),
                Some(cs) => match cs.get(*c as usize - 1) {
                    Some(g) => self.unary(g, *v)?,
                    None => Formula::falsum(*v),
                },
            },
            Formula::Not(c) => Formula::not(self.translate(c)?),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| self.translate(c)).collect::<Result<_>>()?),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| self.translate(c)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => Formula::implies(self.translate(a)?, self.translate(b)?),
            Formula::Exists(v, b) => Formula::exists(
                *v,
                Formula::and(vec![self.unary(&self.scheme.domain, *v)?, self.translate(b)?]),
            ),
            Formula::Forall(v, b) => Formula::forall(
                *v,
                Formula::implies(self.unary(&self.scheme.domain, *v)?, self.translate(b)?),
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::model_check;
    use crate::logic::parse_formula;

    fn k(n: usize) -> ColoredGraph {
        let mut g = ColoredGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn scheme(domain: &str, edge: &str) -> InterpretationScheme {
        InterpretationScheme::new(parse_formula(domain).unwrap(), parse_formula(edge).unwrap(), None).unwrap()
    }

    #[test]
    fn complement_of_complete_is_edgeless() {
        let s = scheme("x1=x1", "!adj(x1,x2) & !(x1=x2)");
        assert_eq!(apply_interpretation(&s, &k(3)).unwrap(), ColoredGraph::new(3));
    }

    #[test]
    fn domain_restriction_is_induced() {
        let g = k(3).with_colors(vec![1, 2, 1], 2).unwrap();
        let s = scheme("C1(x1)", "adj(x1,x2)");
        let (h, dom) = apply_interpretation_with_domain(&s, &g).unwrap();
        assert_eq!(dom, vec![0, 2]);
        assert_eq!(h.edges(), vec![(0, 1)]);
        assert_eq!(h.colors(), &[1, 1]);
    }

    #[test]
    fn reflexive_and_asymmetric_edges_are_rejected() {
        assert!(apply_interpretation(&scheme("x1=x1", "x1=x2"), &k(2)).is_err());
        let g = ColoredGraph::new(2).with_colors(vec![1, 2], 2).unwrap();
        assert!(apply_interpretation(&scheme("x1=x1", "C1(x1) & C2(x2)"), &g).is_err());
    }

    #[test]
    fn translation_relativizes_and_renames() {
        let s = InterpretationScheme::new(
            parse_formula("C1(x1)").unwrap(),
            parse_formula("exists x3. adj(x1,x3) & adj(x3,x2)").unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(s.variable_overhead(), 1);
        let phi = Sentence::new(parse_formula("exists x1. forall x2. adj(x1,x2)").unwrap()).unwrap();
        let t = backwards_translate(&phi, &s).unwrap();
        assert_eq!(
            t.to_string(),
            "exists x1. C1(x1) & (forall x2. C1(x2) -> (exists x3. adj(x1,x3) & adj(x3,x2)))"
        );
        assert!(t.formula().variable_count() <= phi.formula().variable_count() + 1);
        let phi = Sentence::new(parse_formula("exists x1. adj(x1,x1)").unwrap()).unwrap();
        assert!(!model_check(&k(3), &backwards_translate(&phi, &s).unwrap()).unwrap());
    }

    #[test]
    fn undersized_pool_reports_requirement() {
        let s = InterpretationScheme::with_declared_overhead(
            parse_formula("x1=x1").unwrap(),
            parse_formula("exists x3. exists x4. adj(x1,x3) & adj(x3,x4) & adj(x4,x2)").unwrap(),
            None,
            1,
        )
        .unwrap();
        let phi = Sentence::new(parse_formula("exists x1. exists x2. adj(x1,x2)").unwrap()).unwrap();
        let err = backwards_translate(&phi, &s).unwrap_err();
        assert!(err.to_string().contains("needs 2"));
    }
}
