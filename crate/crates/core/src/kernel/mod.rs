//! First-order terms, substitutions, unification with occurs check, and
//! variable renaming.
//!
//! Everything here is immutable after construction. Freshness of variables is
//! driven by a caller-owned counter so each search is replayable.

mod subst;
mod term;
mod unify;

pub use subst::{apply_subst, Apply, Substitution};
pub use term::{sym, Atom, Clause, Symbol, Term};
pub use unify::{
    alpha_equivalent, canonicalize, merge, rename_apart, standardize_apart, unify, unify_atoms,
    unify_atoms_with, unify_with,
};
