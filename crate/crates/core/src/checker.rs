//! Independent proof checking.
//!
//! The checker only applies stored bindings and compares terms. It never
//! unifies and never searches, and it shares nothing with the prover beyond
//! the kernel and the theory representation.
//!
//! A proof node names a clause by id and carries a binding. Before the
//! binding is applied the clause is renamed apart deterministically: every
//! clause variable `V` becomes `_CV` (see [`clause_var`]). At the root the
//! binding may also instantiate the claimed goal's variables, which witnesses
//! an existential query. Below the root a node's goal must be left unchanged
//! by its binding, so every inner node proves its goal for all values of the
//! goal's remaining variables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kernel::{alpha_equivalent, Apply, Atom, Clause, Substitution, Symbol};
use crate::theory_io::Theory;

/// Prefix the checker puts in front of clause variables when renaming apart.
pub const CLAUSE_VAR_PREFIX: &str = "_C";

/// The name a clause variable gets inside a proof binding.
pub fn clause_var(var: &str) -> Symbol {
    format!("{CLAUSE_VAR_PREFIX}{var}").into()
}

/// The clause as the checker sees it, with variables renamed by [`clause_var`].
pub fn renamed_for_check(clause: &Clause) -> Clause {
    let map: Vec<(Symbol, Symbol)> = clause
        .vars()
        .into_iter()
        .map(|v| {
            let renamed = clause_var(&v);
            (v, renamed)
        })
        .collect();
    clause.rename(&map)
}

/// A derivation tree. Field names match the JSON proof file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proof {
    pub goal: Atom,
    #[serde(rename = "clause")]
    pub clause_id: usize,
    pub binding: Substitution,
    #[serde(rename = "subs")]
    pub subproofs: Vec<Proof>,
}

impl Proof {
    pub fn size(&self) -> usize {
        1 + self.subproofs.iter().map(Proof::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.subproofs.iter().map(Proof::depth).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proof serializes")
    }

    pub fn from_json(text: &str) -> crate::Result<Proof> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    /// Root goal is not alpha-equivalent to the claimed goal.
    GoalMismatch,
    BadClauseId,
    HeadMismatch,
    /// Number of subproofs differs from the clause body length.
    ArityMismatch,
    /// Binding mentions a variable that is neither a clause variable nor (at the root) a goal variable.
    BadBinding,
    /// An inner node's binding instantiates its own goal.
    GoalInstantiated,
    /// A subproof's goal differs from the instantiated body atom.
    SubgoalMismatch,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RejectReason::GoalMismatch => "goal-mismatch",
            RejectReason::BadClauseId => "bad-clause-id",
            RejectReason::HeadMismatch => "head-mismatch",
            RejectReason::ArityMismatch => "arity-mismatch",
            RejectReason::BadBinding => "bad-binding",
            RejectReason::GoalInstantiated => "goal-instantiated",
            RejectReason::SubgoalMismatch => "subgoal-mismatch",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    /// `path` lists subproof indices from the root to the first failing node.
    Rejected {
        reason: RejectReason,
        path: Vec<usize>,
    },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted => f.write_str("accepted"),
            Verdict::Rejected { reason, path } => write!(f, "rejected: {reason} at path {path:?}"),
        }
    }
}

/// Checks that `proof` derives `claimed_goal` in `theory`.
///
/// Failures are reported for the first failing node in depth-first order.
pub fn check_proof(theory: &Theory, claimed_goal: &Atom, proof: &Proof) -> Verdict {
    if !alpha_equivalent(&proof.goal, claimed_goal) {
        return Verdict::Rejected {
            reason: RejectReason::GoalMismatch,
            path: Vec::new(),
        };
    }
    let mut path = Vec::new();
    match check_node(theory, proof, true, &mut path) {
        Ok(()) => Verdict::Accepted,
        Err(reason) => Verdict::Rejected { reason, path },
    }
}

fn check_node(
    theory: &Theory,
    node: &Proof,
    root: bool,
    path: &mut Vec<usize>,
) -> Result<(), RejectReason> {
    let clause = theory
        .clause(node.clause_id)
        .ok_or(RejectReason::BadClauseId)?;
    let clause = renamed_for_check(clause);
    let b = &node.binding;

    if clause.head.apply(b) != node.goal.apply(b) {
        return Err(RejectReason::HeadMismatch);
    }
    if clause.body.len() != node.subproofs.len() {
        return Err(RejectReason::ArityMismatch);
    }
    let clause_vars = clause.vars();
    let goal_vars = node.goal.vars();
    let allowed = |v: &Symbol| clause_vars.contains(v) || (root && goal_vars.contains(v));
    if !b.domain().all(allowed) {
        return Err(RejectReason::BadBinding);
    }
    if !root && node.goal.apply(b) != node.goal {
        return Err(RejectReason::GoalInstantiated);
    }
    for (i, (body_atom, sub)) in clause.body.iter().zip(&node.subproofs).enumerate() {
        path.push(i);
        if body_atom.apply(b) != sub.goal {
            return Err(RejectReason::SubgoalMismatch);
        }
        check_node(theory, sub, false, path)?;
        path.pop();
    }
    Ok(())
}
