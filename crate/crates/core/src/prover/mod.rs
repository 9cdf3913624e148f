//! Parameterized best-first exploration of an and-or tree over Horn clauses.
//!
//! Goal nodes are OR nodes (one AND child per applicable clause); AND nodes
//! hold the instantiated clause body. A prover variant is a
//! [`HeuristicParams`] value; its linear score over [`FeatureVector`] decides
//! which open goal to expand next. Budgets count expansions, so every run is
//! replayable.

mod params;
mod search;
mod tree;

pub use params::{features, score, FeatureVector, HeuristicParams, NUM_FEATURES};
pub use search::{search, SearchOutcome};
pub use tree::{AndNode, GoalNode, SearchTree, Status};
