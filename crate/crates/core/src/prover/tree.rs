use serde::Serialize;

use crate::checker::{clause_var, Proof};
use crate::kernel::{Apply, Atom, Substitution, Symbol, Term};

use super::params::FeatureVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Open,
    Expanded,
    Proved,
    Failed,
}

/// An OR node: one goal, alternatives are its [`AndNode`] children.
#[derive(Clone, Debug, PartialEq)]
pub struct GoalNode<S> {
    pub atom: Atom,
    pub depth: usize,
    pub features: FeatureVector<S>,
    pub score: S,
    pub status: Status,
    /// Index of the AND node that created this goal; `None` for the root.
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Solution of the subtree through the chosen AND child, once proved.
    pub(crate) answer: Option<Substitution>,
}

impl<S> GoalNode<S> {
    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }
}

/// An AND node: one clause applied to its parent goal; every child must be proved.
#[derive(Clone, Debug, PartialEq)]
pub struct AndNode {
    pub clause_id: usize,
    /// Most general unifier of the parent goal and the renamed clause head.
    pub binding: Substitution,
    /// `(clause variable, fresh variable)` pairs used when renaming the clause apart.
    pub renaming: Vec<(Symbol, Symbol)>,
    pub parent: usize,
    pub children: Vec<usize>,
    /// `Open` while some child is undecided, never `Expanded`.
    pub status: Status,
}

/// And-or search tree. Goal nodes are stored in creation order, so a goal's
/// index is its creation index; the root has index 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchTree<S> {
    pub(crate) goals: Vec<GoalNode<S>>,
    pub(crate) ands: Vec<AndNode>,
}

impl<S> SearchTree<S> {
    pub fn goals(&self) -> &[GoalNode<S>] {
        &self.goals
    }

    pub fn ands(&self) -> &[AndNode] {
        &self.ands
    }

    pub fn goal(&self, index: usize) -> &GoalNode<S> {
        &self.goals[index]
    }

    pub fn and_node(&self, index: usize) -> &AndNode {
        &self.ands[index]
    }

    pub fn root(&self) -> &GoalNode<S> {
        &self.goals[0]
    }

    pub fn len(&self) -> usize {
        self.goals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goals.is_empty()
    }

    /// Goal-node indices from the root down to `index`.
    pub fn path_to(&self, index: usize) -> Vec<usize> {
        let mut path = vec![index];
        let mut cur = index;
        while let Some(a) = self.goals[cur].parent {
            cur = self.ands[a].parent;
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// The proved AND child with the smallest clause id.
    pub fn chosen_and(&self, goal: usize) -> Option<usize> {
        self.goals[goal]
            .children
            .iter()
            .copied()
            .filter(|&a| self.ands[a].status == Status::Proved)
            .min_by_key(|&a| self.ands[a].clause_id)
    }

    /// A proof of the goal at `index`, taking that goal's atom as the claim.
    pub fn proof_of(&self, index: usize) -> Option<Proof> {
        let answer = self.goals[index].answer.as_ref()?;
        Some(self.build_proof(index, answer, true))
    }

    fn build_proof(&self, index: usize, answer: &Substitution, top: bool) -> Proof {
        let node = &self.goals[index];
        let and = &self.ands[self
            .chosen_and(index)
            .expect("proved goal has a proved AND child")];
        let mut binding: Substitution = and
            .renaming
            .iter()
            .map(|(orig, fresh)| (clause_var(orig), Term::Var(fresh.clone()).apply(answer)))
            .collect();
        let goal = if top {
            for v in node.atom.vars() {
                let t = Term::Var(v.clone()).apply(answer);
                if t != Term::Var(v.clone()) {
                    binding.insert(v, t);
                }
            }
            node.atom.clone()
        } else {
            node.atom.apply(answer)
        };
        Proof {
            goal,
            clause_id: and.clause_id,
            binding,
            subproofs: and
                .children
                .iter()
                .map(|&c| self.build_proof(c, answer, false))
                .collect(),
        }
    }
}
