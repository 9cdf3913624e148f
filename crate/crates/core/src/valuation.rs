//! Importance of search-tree nodes and harvesting of proved subgoals.
//!
//! The root is worth 1. A goal splits its value among its AND children by
//! harmonic rank: the children are ordered by the mean score of their
//! subgoals (best first; AND nodes without subgoals go last by clause id) and
//! the `j`-th of `k` receives the share `(1/j) / H_k`. Every subgoal of an AND
//! node inherits that node's value times `gamma`, since each conjunct is
//! needed. Ranks rather than raw scores keep values in `(0, 1]` and make them
//! invariant under positive rescaling of the heuristic weights.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::checker::{check_proof, renamed_for_check};
use crate::error::{Error, Result};
use crate::kernel::{canonicalize, unify_atoms, Atom};
use crate::prover::{SearchOutcome, SearchTree};
use crate::scalar::Scalar;
use crate::theory_io::{from_json_lines, to_json_lines, Theory};

/// Which player of a match something belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Per-node values of one search tree, indexed like the tree's node vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeValues<S> {
    pub goal: Vec<S>,
    /// Fraction of the parent goal's value given to each AND node.
    pub and_share: Vec<S>,
    pub and_value: Vec<S>,
}

pub fn node_values<S: Scalar>(tree: &SearchTree<S>, gamma: S) -> Result<NodeValues<S>> {
    if !(gamma > S::zero() && gamma <= S::one()) {
        return Err(Error::InvalidArgument(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    let mut goal = vec![S::zero(); tree.len()];
    let mut and_share = vec![S::zero(); tree.ands().len()];
    let mut and_value = vec![S::zero(); tree.ands().len()];
    if tree.is_empty() {
        return Ok(NodeValues {
            goal,
            and_share,
            and_value,
        });
    }
    goal[0] = S::one();

    // Parents are created before their children, so one pass in creation
    // order sees every goal's value before distributing it.
    for g in 0..tree.len() {
        let children = &tree.goal(g).children;
        if children.is_empty() {
            continue;
        }
        let mut ranked: Vec<(Option<S>, usize, usize)> = children
            .iter()
            .map(|&a| {
                let and = tree.and_node(a);
                (mean_score(tree, &and.children), and.clause_id, a)
            })
            .collect();
        ranked.sort_by(|x, y| rank_order(x, y));
        let harmonic = (1..=ranked.len()).fold(S::zero(), |h, i| h + S::one() / S::from_count(i));
        for (j, &(_, _, a)) in ranked.iter().enumerate() {
            let share = S::one() / S::from_count(j + 1) / harmonic;
            and_share[a] = share;
            and_value[a] = goal[g] * share;
            for &c in &tree.and_node(a).children {
                goal[c] = and_value[a] * gamma;
            }
        }
    }
    Ok(NodeValues {
        goal,
        and_share,
        and_value,
    })
}

fn mean_score<S: Scalar>(tree: &SearchTree<S>, children: &[usize]) -> Option<S> {
    if children.is_empty() {
        return None;
    }
    let sum = children
        .iter()
        .fold(S::zero(), |acc, &c| acc + tree.goal(c).score);
    Some(sum / S::from_count(children.len()))
}

fn rank_order<S: Scalar>(x: &(Option<S>, usize, usize), y: &(Option<S>, usize, usize)) -> Ordering {
    match (x.0, y.0) {
        (Some(a), Some(b)) => b
            .partial_cmp(&a)
            .unwrap_or(Ordering::Equal)
            .then(x.1.cmp(&y.1)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => x.1.cmp(&y.1),
    }
}

/// A proved subgoal with its estimated importance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoredConjecture<S> {
    pub goal: Atom,
    pub value: S,
    pub prover: Side,
    pub generation: usize,
}

/// Proved subgoals harvested from one prover's search.
///
/// Goals are canonical and pairwise distinct; entries are sorted by
/// descending value, ties by goal text.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureDataset<S> {
    pub entries: Vec<ScoredConjecture<S>>,
    pub origin: Side,
}

impl<S: Scalar> ConjectureDataset<S> {
    pub fn empty(origin: Side) -> Self {
        ConjectureDataset {
            entries: Vec::new(),
            origin,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_value(&self) -> S {
        self.entries.iter().fold(S::zero(), |acc, e| acc + e.value)
    }

    /// One JSON record per line: `{"goal", "value", "prover", "generation"}`.
    pub fn to_json_lines(&self) -> String {
        to_json_lines(&self.entries).expect("dataset serializes")
    }

    /// Reads a dataset file and checks every record invariant.
    pub fn from_json_lines(text: &str, origin: Side) -> Result<Self> {
        let entries: Vec<ScoredConjecture<S>> = from_json_lines(text)?;
        for e in &entries {
            if canonicalize(&e.goal) != e.goal {
                return Err(Error::Malformed(format!(
                    "goal `{}` is not canonical",
                    e.goal
                )));
            }
            if !(e.value > S::zero() && e.value <= S::one()) {
                return Err(Error::Malformed(format!(
                    "value {} outside (0, 1]",
                    e.value
                )));
            }
        }
        let mut sorted = entries.clone();
        sort_entries(&mut sorted);
        if sorted != entries {
            return Err(Error::Malformed(
                "dataset lines are not in canonical order".into(),
            ));
        }
        if entries.windows(2).any(|w| w[0].goal == w[1].goal) {
            return Err(Error::Malformed("duplicate goal in dataset".into()));
        }
        Ok(ConjectureDataset { entries, origin })
    }
}

fn sort_entries<S: Scalar>(entries: &mut [ScoredConjecture<S>]) {
    entries.sort_by(|x, y| {
        y.value
            .partial_cmp(&x.value)
            .unwrap_or(Ordering::Equal)
            .then_with(|| x.goal.to_string().cmp(&y.goal.to_string()))
    });
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarvestOptions {
    /// Skip subgoals that unify directly with a fact of the theory.
    pub trivial_filter: bool,
}

impl Default for HarvestOptions {
    fn default() -> Self {
        HarvestOptions {
            trivial_filter: true,
        }
    }
}

/// True when `atom` unifies with some fact of `theory` in one step.
pub fn is_one_step_trivial(theory: &Theory, atom: &Atom) -> bool {
    theory
        .facts()
        .any(|f| unify_atoms(&renamed_for_check(f).head, atom).is_some())
}

/// Collects every proved non-root goal of `outcome` into a dataset.
///
/// Each candidate's proof is re-checked before it is admitted; a rejected
/// proof is an integrity error.
pub fn harvest<S: Scalar>(
    outcome: &SearchOutcome<S>,
    values: &NodeValues<S>,
    side: Side,
    generation: usize,
    theory: &Theory,
    options: HarvestOptions,
) -> Result<ConjectureDataset<S>> {
    let tree = &outcome.tree;
    let mut best: BTreeMap<Atom, S> = BTreeMap::new();
    for (index, node) in tree.goals().iter().enumerate().skip(1) {
        if !node.is_proved() {
            continue;
        }
        if options.trivial_filter && is_one_step_trivial(theory, &node.atom) {
            continue;
        }
        let proof = tree
            .proof_of(index)
            .ok_or_else(|| Error::Integrity(format!("proved goal {} has no proof", node.atom)))?;
        let verdict = check_proof(theory, &node.atom, &proof);
        if !verdict.is_accepted() {
            return Err(Error::Integrity(format!(
                "harvested goal {}: {verdict}",
                node.atom
            )));
        }
        let value = values.goal[index];
        best.entry(canonicalize(&node.atom))
            .and_modify(|v| {
                if value > *v {
                    *v = value;
                }
            })
            .or_insert(value);
    }
    let mut entries: Vec<ScoredConjecture<S>> = best
        .into_iter()
        .map(|(goal, value)| ScoredConjecture {
            goal,
            value,
            prover: side,
            generation,
        })
        .collect();
    sort_entries(&mut entries);
    Ok(ConjectureDataset {
        entries,
        origin: side,
    })
}
