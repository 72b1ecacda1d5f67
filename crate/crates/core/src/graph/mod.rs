//! Colored graphs, rooted colored trees, and the structures built on them.

mod colored;
mod elimination;
mod flip;
pub mod generators;
pub mod io;
mod sc;
mod tree;
mod treemodel;

pub use colored::{ColoredGraph, Vertex};
pub use elimination::{compute_elimination_forest, tree_depth, validate_elimination_forest, EliminationForest};
pub use flip::{apply_flip, PartitionFlip};
pub use sc::{build_sc_graph, ScRecipe};
pub use tree::RootedColoredTree;
pub use treemodel::{validate_tree_model, RuleKey, TreeModel};
