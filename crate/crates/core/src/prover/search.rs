use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::checker::Proof;
use crate::error::Result;
use crate::kernel::{merge, rename_apart, unify_atoms, Apply, Atom, Substitution};
use crate::scalar::Scalar;
use crate::theory_io::Theory;

use super::params::{features, score, HeuristicParams};
use super::tree::{AndNode, GoalNode, SearchTree, Status};

/// Result of one best-first search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome<S> {
    pub tree: SearchTree<S>,
    pub root_proved: bool,
    pub proof: Option<Proof>,
    pub expansions_used: usize,
    pub budget: usize,
    /// Creation indices of the goal nodes in the order they were expanded.
    pub expansion_order: Vec<usize>,
}

struct Candidate<S> {
    score: S,
    index: usize,
}

impl<S: Scalar> PartialEq for Candidate<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for Candidate<S> {}

impl<S: Scalar> PartialOrd for Candidate<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for Candidate<S> {
    // Max-heap order: higher score first, then smaller creation index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .partial_cmp(&other.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.index.cmp(&self.index))
    }
}

struct Search<'a, S> {
    theory: &'a Theory,
    params: &'a HeuristicParams<S>,
    tree: SearchTree<S>,
    frontier: BinaryHeap<Candidate<S>>,
    fresh: u64,
}

/// Best-first and-or search for `goal` with at most `budget` expansions.
///
/// The open goal with the highest score is expanded next (ties go to the
/// older node). Expanding a goal tries every clause in id order. Goals below
/// an already proved goal or a failed AND node are never selected.
pub fn search<S: Scalar>(
    theory: &Theory,
    goal: &Atom,
    params: &HeuristicParams<S>,
    budget: usize,
) -> Result<SearchOutcome<S>> {
    theory.validate_goal(goal)?;
    params.validate()?;

    let f = features(goal, 0, 0);
    let root = GoalNode {
        atom: goal.clone(),
        depth: 0,
        features: f,
        score: score(params, &f),
        status: Status::Open,
        parent: None,
        children: Vec::new(),
        answer: None,
    };
    let mut s = Search {
        theory,
        params,
        tree: SearchTree {
            goals: vec![root],
            ands: Vec::new(),
        },
        frontier: BinaryHeap::new(),
        fresh: 0,
    };
    s.frontier.push(Candidate {
        score: s.tree.goals[0].score,
        index: 0,
    });

    let mut order = Vec::new();
    while order.len() < budget && !s.tree.goals[0].is_proved() {
        let Some(next) = s.pop_live() else { break };
        s.expand(next);
        order.push(next);
    }

    let root_proved = s.tree.goals[0].is_proved();
    let proof = if root_proved {
        s.tree.proof_of(0)
    } else {
        None
    };
    Ok(SearchOutcome {
        tree: s.tree,
        root_proved,
        proof,
        expansions_used: order.len(),
        budget,
        expansion_order: order,
    })
}

impl<S: Scalar> Search<'_, S> {
    fn pop_live(&mut self) -> Option<usize> {
        while let Some(c) = self.frontier.pop() {
            if self.is_live(c.index) {
                return Some(c.index);
            }
        }
        None
    }

    fn is_live(&self, index: usize) -> bool {
        let goals = &self.tree.goals;
        if goals[index].status != Status::Open {
            return false;
        }
        let mut cur = index;
        while let Some(a) = goals[cur].parent {
            let and = &self.tree.ands[a];
            if and.status == Status::Failed {
                return false;
            }
            cur = and.parent;
            if goals[cur].status == Status::Proved || goals[cur].status == Status::Failed {
                return false;
            }
        }
        true
    }

    fn expand(&mut self, index: usize) {
        let atom = self.tree.goals[index].atom.clone();
        let depth = self.tree.goals[index].depth;
        self.tree.goals[index].status = Status::Expanded;

        for clause in self.theory.clauses() {
            if clause.head.predicate != atom.predicate || clause.head.arity() != atom.arity() {
                continue;
            }
            let (renamed, renaming) = rename_apart(clause, &mut self.fresh);
            let Some(mgu) = unify_atoms(&atom, &renamed.head) else {
                continue;
            };

            let and_index = self.tree.ands.len();
            let mut and = AndNode {
                clause_id: clause.id,
                binding: mgu,
                renaming,
                parent: index,
                children: Vec::new(),
                status: Status::Open,
            };
            if renamed.body.is_empty() {
                and.status = Status::Proved;
            } else if depth + 1 > self.params.depth_limit {
                and.status = Status::Failed;
            } else {
                let body_len = renamed.body.len();
                for b in &renamed.body {
                    let child_atom = b.apply(&and.binding);
                    let f = features(&child_atom, depth + 1, body_len);
                    let sc = score(self.params, &f);
                    let child = self.tree.goals.len();
                    self.tree.goals.push(GoalNode {
                        atom: child_atom,
                        depth: depth + 1,
                        features: f,
                        score: sc,
                        status: Status::Open,
                        parent: Some(and_index),
                        children: Vec::new(),
                        answer: None,
                    });
                    and.children.push(child);
                    self.frontier.push(Candidate {
                        score: sc,
                        index: child,
                    });
                }
            }
            self.tree.ands.push(and);
            self.tree.goals[index].children.push(and_index);
        }

        if self.settle_goal(index) {
            self.propagate(index);
        }
    }

    /// Re-derives a goal's status from its AND children. Returns true when
    /// the goal just became proved or failed.
    fn settle_goal(&mut self, index: usize) -> bool {
        let goal = &self.tree.goals[index];
        if goal.status != Status::Expanded {
            return false;
        }
        if let Some(a) = self.tree.chosen_and(index) {
            let answer = self.and_answer(a);
            let goal = &mut self.tree.goals[index];
            goal.answer = answer;
            goal.status = Status::Proved;
            return true;
        }
        let all_failed = goal
            .children
            .iter()
            .all(|&a| self.tree.ands[a].status == Status::Failed);
        if all_failed {
            self.tree.goals[index].status = Status::Failed;
            return true;
        }
        false
    }

    fn and_answer(&self, a: usize) -> Option<Substitution> {
        let and = &self.tree.ands[a];
        let mut solution = and.binding.clone();
        for &c in &and.children {
            solution = merge(solution, self.tree.goals[c].answer.as_ref()?)?;
        }
        Some(solution)
    }

    fn propagate(&mut self, mut index: usize) {
        while let Some(a) = self.tree.goals[index].parent {
            if self.tree.ands[a].status != Status::Open {
                return;
            }
            match self.tree.goals[index].status {
                Status::Failed => self.tree.ands[a].status = Status::Failed,
                Status::Proved => {
                    let and = &self.tree.ands[a];
                    if !and.children.iter().all(|&c| self.tree.goals[c].is_proved()) {
                        return;
                    }
                    // Conjuncts whose answers disagree on a shared variable
                    // cannot be combined; no alternative answers are kept.
                    self.tree.ands[a].status = match self.and_answer(a) {
                        Some(_) => Status::Proved,
                        None => Status::Failed,
                    };
                }
                _ => return,
            }
            let parent = self.tree.ands[a].parent;
            if !self.settle_goal(parent) {
                return;
            }
            index = parent;
        }
    }
}
