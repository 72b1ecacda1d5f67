//! First-order model checking on colored graphs and bounded-depth colored
//! trees, parameterized by the number of variables of the sentence.
//!
//! The crate is organized bottom-up:
//!
//! * [`logic`]: formula syntax, the text grammar, and syntactic transforms.
//! * [`graph`]: colored graphs, rooted colored trees, flips, generators,
//!   elimination forests, tree-models, SC-depth recipes, and file formats.
//! * [`eval`]: the relation-table model checker used as ground truth.
//! * [`pebble`]: FO^s equivalence via the s-pebble game.
//! * [`kernel`]: FO^s-preserving kernels for bounded-depth colored trees.
//! * [`interpret`]: interpretations, backwards translation, and the
//!   decomposition-based model-checking pipelines.
//! * [`hardness`]: the reduction from arbitrary graphs to paths.
//! * [`corpus`]: seeded random generators for property suites.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod graph;
pub mod hardness;
pub mod interpret;
pub mod kernel;
pub mod logic;
pub mod pebble;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, EliminationForest, PartitionFlip, RootedColoredTree, TreeModel};
pub use logic::{Formula, Sentence, Var};
