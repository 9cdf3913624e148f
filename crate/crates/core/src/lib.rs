//! Self-playable theorem proving over Horn clauses.
//!
//! Two prover variants explore the and-or tree of a target goal, harvest the
//! subgoals they manage to prove (each tagged with an importance value), and
//! are scored by how much of the opponent's harvest they can re-prove. The
//! winner is mutated and the game repeats until some variant proves the
//! target. Every proof is re-checked by an independent checker.
//!
//! The numeric parts are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the command-line tool uses.

pub mod arena;
pub mod checker;
pub mod error;
pub mod evolution;
pub mod kernel;
pub mod prover;
pub mod scalar;
pub mod theory_io;
pub mod valuation;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Params = prover::HeuristicParams<f64>;
pub type Outcome = prover::SearchOutcome<f64>;
pub type Tree = prover::SearchTree<f64>;
pub type Conjecture = valuation::ScoredConjecture<f64>;
pub type Dataset = valuation::ConjectureDataset<f64>;
pub type Match = arena::MatchResult<f64>;
pub type MatchReport = arena::SelfPlayOutcome<f64>;
pub type Mutation = evolution::MutationConfig<f64>;
pub type Report = evolution::EvolutionReport<f64>;
pub type GenerationLog = evolution::GenerationRecord<f64>;
