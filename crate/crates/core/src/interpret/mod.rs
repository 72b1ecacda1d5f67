//! Interpretations, backwards translation, and model checking through tree
//! decompositions.

mod scheme;
mod treedepth;
mod treemodel;

pub use scheme::{apply_interpretation, apply_interpretation_with_domain, backwards_translate, InterpretationScheme};
pub use treedepth::{depth_edge_interpretation, encode_elimination_forest, ForestAlphabet};
pub use treemodel::{encode_tree_model, tree_model_interpretation, TreeModelAlphabet};

use crate::error::{Error, Result};
use crate::eval::model_check;
use crate::graph::{compute_elimination_forest, ColoredGraph, RootedColoredTree, TreeModel};
use crate::kernel::reduce_tree;
use crate::logic::Sentence;

/// Evaluates `phi` on the FO^s kernel of `t`.
pub fn mc_tree(t: &RootedColoredTree, phi: &Sentence, s: usize) -> Result<bool> {
    let vc = phi.formula().variable_count();
    if vc > s {
        return Err(Error::precondition(format!(
            "the sentence uses {vc} variables but the budget is {s}"
        )));
    }
    model_check(reduce_tree(t, s.max(1)).kernel.graph(), phi)
}

/// Model checking on a graph of tree-depth at most `k`, through its
/// encoded elimination forest.
pub fn mc_treedepth(g: &ColoredGraph, phi: &Sentence, k: usize, s: usize) -> Result<bool> {
    if g.n() > 64 {
        return Err(Error::ResourceLimit("exact tree-depth search is limited to 64 vertices".into()));
    }
    let ef = compute_elimination_forest(g, k)
        .ok_or_else(|| Error::precondition(format!("the graph has tree-depth greater than {k}")))?;
    let tree = encode_elimination_forest(g, &ef, k)?;
    let scheme = depth_edge_interpretation(k, g.num_colors())?;
    let psi = backwards_translate(phi, &scheme)?;
    mc_tree(&tree, &psi, s + scheme.variable_overhead())
}

/// Model checking through a tree-model of the graph.
pub fn mc_treemodel(g: &ColoredGraph, tm: &TreeModel, phi: &Sentence, s: usize) -> Result<bool> {
    let tree = encode_tree_model(g, tm)?;
    let scheme = tree_model_interpretation(tm, g.num_colors())?;
    let psi = backwards_translate(phi, &scheme)?;
    mc_tree(&tree, &psi, s + scheme.variable_overhead())
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
    fn kernel_pipeline_on_a_star() {
        let t = RootedColoredTree::from_parents(vec![None, Some(0), Some(0), Some(0), Some(0), Some(0)], vec![1; 6], 1)
            .unwrap();
        let phi = sentence("exists x1. exists x2. !(x1=x2) & (exists x3. adj(x3,x1) & adj(x3,x2))");
        assert!(mc_tree(&t, &phi, 3).unwrap());
        assert!(mc_tree(&t, &phi, 2).is_err());
        let k1 = RootedColoredTree::singleton(1, 1).unwrap();
        assert!(mc_tree(&k1, &sentence("exists x1. C1(x1)"), 1).unwrap());
    }

    #[test]
    fn treedepth_pipeline_on_paths() {
        let p7 = gen_path(7).unwrap();
        let far = sentence("exists x1. exists x2. exists x3. adj(x1,x2) & adj(x2,x3) & !(x1=x3)");
        assert!(mc_treedepth(&p7, &far, 3, 3).unwrap());
        assert!(mc_treedepth(&p7, &far, 2, 3).is_err());
        let edgeless = ColoredGraph::new(4);
        let adj = sentence("exists x1. exists x2. adj(x1,x2)");
        assert!(!mc_treedepth(&edgeless, &adj, 1, 2).unwrap());
    }
}
