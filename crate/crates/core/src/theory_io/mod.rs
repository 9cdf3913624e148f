//! Concrete syntax and file formats.
//!
//! Theories use the usual logic-programming surface: lowercase functors and
//! predicates, variables starting with an uppercase letter or underscore,
//! `:-` and `.`, and `%` line comments. Records (datasets, generation logs)
//! are JSON, one record per line.

mod format;
mod parse;

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Atom, Symbol};

pub use crate::kernel::Clause;
pub use format::format;
pub use parse::{
    parse_atom, parse_clause, parse_goal, parse_goal_in, parse_term, parse_theory,
    parse_theory_bytes,
};

/// An ordered list of clauses with one arity per predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    clauses: Vec<Clause>,
    predicates: BTreeMap<Symbol, usize>,
    functors: BTreeMap<Symbol, usize>,
}

impl Theory {
    /// Builds a theory, renumbering clause ids by position and checking arities.
    pub fn new(mut clauses: Vec<Clause>) -> Result<Theory> {
        for (i, c) in clauses.iter_mut().enumerate() {
            c.id = i;
        }
        let (predicates, functors) = parse::record_arities(&clauses)?;
        Ok(Theory {
            clauses,
            predicates,
            functors,
        })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: usize) -> Option<&Clause> {
        self.clauses.get(id)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn arity(&self, predicate: &str) -> Option<usize> {
        self.predicates.get(predicate).copied()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.predicates.iter().map(|(k, v)| (k, *v))
    }

    pub fn facts(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.is_fact())
    }

    /// Errors only when the predicate is known with a different arity.
    pub fn check_arity(&self, atom: &Atom) -> Result<()> {
        match self.arity(&atom.predicate) {
            Some(a) if a != atom.arity() => Err(Error::ArityConflict {
                kind: "predicate",
                name: atom.predicate.to_string(),
                first: a,
                second: atom.arity(),
            }),
            _ => Ok(()),
        }
    }

    /// Checks that `atom` names a predicate of this theory with the right arity.
    pub fn validate_goal(&self, atom: &Atom) -> Result<()> {
        if self.arity(&atom.predicate).is_none() {
            return Err(Error::UnknownPredicate(atom.predicate.to_string()));
        }
        self.check_arity(atom)
    }

    pub fn functor_arity(&self, functor: &str) -> Option<usize> {
        self.functors.get(functor).copied()
    }
}

/// Serializes records one JSON object per line, each line `\n`-terminated.
pub fn to_json_lines<T: Serialize>(records: &[T]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

/// Parses JSON lines, skipping blank lines. Errors carry the 1-based line number.
pub fn from_json_lines<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Malformed(format!("line {}: {e}", i + 1)))
        })
        .collect()
}
