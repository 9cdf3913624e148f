//! Matches between two prover variants.
//!
//! The naive game counts how many fixed obligations each side discharges.
//! The self-play game lets each side harvest value-tagged subgoals from its
//! own attempt at a target and then scores each side on the opponent's
//! harvest: the values a side collects were decided by the other side.

use serde::Serialize;

use crate::checker::{check_proof, Proof};
use crate::error::{Error, Result};
use crate::kernel::Atom;
use crate::prover::{search, HeuristicParams, SearchOutcome};
use crate::scalar::Scalar;
use crate::theory_io::Theory;
use crate::valuation::{harvest, node_values, ConjectureDataset, HarvestOptions};

pub use crate::valuation::Side;

/// Which rung of the tie-break ladder decided a match.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    /// Some side proved the target during the harvest phase.
    Target,
    Score,
    Count,
    /// Fewer expansions spent on the scored attempts.
    Economy,
    /// Everything tied: side A, the incumbent, keeps the title.
    Incumbent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchResult<S> {
    pub score_a: S,
    pub score_b: S,
    pub proved_count_a: usize,
    pub proved_count_b: usize,
    /// Expansions spent on the scored attempts (cross phase, or all
    /// obligations in the naive game).
    pub expansions_a: usize,
    pub expansions_b: usize,
    /// Expansions spent on the target during the harvest phase.
    pub harvest_expansions_a: usize,
    pub harvest_expansions_b: usize,
    pub dataset_a_size: usize,
    pub dataset_b_size: usize,
    pub target_proved_by: Option<Side>,
    pub winner: Side,
    pub decided_by: Decision,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Expansions for each side's attempt on the target.
    pub harvest: usize,
    /// Expansions per opposing dataset entry.
    pub cross: usize,
}

impl Budgets {
    pub fn new(harvest: usize, cross: usize) -> Result<Self> {
        let b = Budgets { harvest, cross };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.harvest < 1 || self.cross < 1 {
            return Err(Error::InvalidArgument("budgets must be at least 1".into()));
        }
        Ok(())
    }
}

/// Tie-break ladder: score, then entries proved, then fewer expansions, then A.
pub fn decide_winner<S: Scalar>(r: &MatchResult<S>) -> (Side, Decision) {
    use std::cmp::Ordering::*;
    match r.score_a.partial_cmp(&r.score_b) {
        Some(Greater) => return (Side::A, Decision::Score),
        Some(Less) => return (Side::B, Decision::Score),
        _ => {}
    }
    match r.proved_count_a.cmp(&r.proved_count_b) {
        Greater => return (Side::A, Decision::Count),
        Less => return (Side::B, Decision::Count),
        Equal => {}
    }
    match r.expansions_a.cmp(&r.expansions_b) {
        Less => (Side::A, Decision::Economy),
        Greater => (Side::B, Decision::Economy),
        Equal => (Side::A, Decision::Incumbent),
    }
}

fn verified<S: Scalar>(theory: &Theory, goal: &Atom, outcome: &SearchOutcome<S>) -> Result<bool> {
    if !outcome.root_proved {
        return Ok(false);
    }
    let proof = outcome
        .proof
        .as_ref()
        .ok_or_else(|| Error::Integrity(format!("{goal} marked proved without a proof")))?;
    match check_proof(theory, goal, proof) {
        v if v.is_accepted() => Ok(true),
        v => Err(Error::Integrity(format!("proof of {goal}: {v}"))),
    }
}

fn empty_result<S: Scalar>() -> MatchResult<S> {
    MatchResult {
        score_a: S::zero(),
        score_b: S::zero(),
        proved_count_a: 0,
        proved_count_b: 0,
        expansions_a: 0,
        expansions_b: 0,
        harvest_expansions_a: 0,
        harvest_expansions_b: 0,
        dataset_a_size: 0,
        dataset_b_size: 0,
        target_proved_by: None,
        winner: Side::A,
        decided_by: Decision::Incumbent,
    }
}

struct Sweep<S> {
    score: S,
    proved: usize,
    expansions: usize,
}

fn sweep<'a, S: Scalar>(
    theory: &Theory,
    params: &HeuristicParams<S>,
    goals: impl Iterator<Item = (&'a Atom, S)>,
    budget: usize,
) -> Result<Sweep<S>> {
    let mut acc = Sweep {
        score: S::zero(),
        proved: 0,
        expansions: 0,
    };
    for (goal, value) in goals {
        let out = search(theory, goal, params, budget)?;
        acc.expansions += out.expansions_used;
        if verified(theory, goal, &out)? {
            acc.proved += 1;
            acc.score = acc.score + value;
        }
    }
    Ok(acc)
}

/// Obligation-counting game: each side attempts every obligation.
pub fn naive_match<S: Scalar>(
    theory: &Theory,
    obligations: &[Atom],
    pa: &HeuristicParams<S>,
    pb: &HeuristicParams<S>,
    budget: usize,
) -> Result<MatchResult<S>> {
    for o in obligations {
        theory.validate_goal(o)?;
    }
    pa.validate()?;
    pb.validate()?;
    let run = |p: &HeuristicParams<S>| {
        sweep(theory, p, obligations.iter().map(|o| (o, S::one())), budget)
    };
    let (a, b) = rayon::join(|| run(pa), || run(pb));
    let (a, b) = (a?, b?);
    let mut r = empty_result();
    r.score_a = a.score;
    r.score_b = b.score;
    r.proved_count_a = a.proved;
    r.proved_count_b = b.proved;
    r.expansions_a = a.expansions;
    r.expansions_b = b.expansions;
    (r.winner, r.decided_by) = decide_winner(&r);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfPlayOutcome<S> {
    pub result: MatchResult<S>,
    pub dataset_a: ConjectureDataset<S>,
    pub dataset_b: ConjectureDataset<S>,
    /// Checked proof of the target when some side discharged it.
    pub target_proof: Option<Proof>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfPlayConfig<S> {
    pub budgets: Budgets,
    pub gamma: S,
    pub generation: usize,
    pub harvest: HarvestOptions,
}

/// Self-play game on `target`.
///
/// Harvest phase: both sides search the target. If one proves it, it wins
/// (both: fewer expansions, then A). Otherwise each side's proved subgoals
/// become its dataset. Cross phase: A attempts B's dataset and B attempts A's,
/// each side scoring the values of the entries it proves.
pub fn self_play_match<S: Scalar>(
    theory: &Theory,
    target: &Atom,
    pa: &HeuristicParams<S>,
    pb: &HeuristicParams<S>,
    cfg: &SelfPlayConfig<S>,
) -> Result<SelfPlayOutcome<S>> {
    if !(cfg.gamma > S::zero() && cfg.gamma <= S::one()) {
        return Err(Error::InvalidArgument(format!(
            "gamma must lie in (0, 1], got {}",
            cfg.gamma
        )));
    }
    cfg.budgets.validate()?;
    theory.validate_goal(target)?;
    pa.validate()?;
    pb.validate()?;

    let attempt = |p: &HeuristicParams<S>| search(theory, target, p, cfg.budgets.harvest);
    let (out_a, out_b) = rayon::join(|| attempt(pa), || attempt(pb));
    let (out_a, out_b) = (out_a?, out_b?);
    let proved_a = verified(theory, target, &out_a)?;
    let proved_b = verified(theory, target, &out_b)?;

    let mut r = empty_result();
    r.harvest_expansions_a = out_a.expansions_used;
    r.harvest_expansions_b = out_b.expansions_used;

    if proved_a || proved_b {
        let side = match (proved_a, proved_b) {
            (true, true) if out_b.expansions_used < out_a.expansions_used => Side::B,
            (true, _) => Side::A,
            _ => Side::B,
        };
        r.target_proved_by = Some(side);
        r.winner = side;
        r.decided_by = Decision::Target;
        let proof = match side {
            Side::A => out_a.proof,
            Side::B => out_b.proof,
        };
        return Ok(SelfPlayOutcome {
            result: r,
            dataset_a: ConjectureDataset::empty(Side::A),
            dataset_b: ConjectureDataset::empty(Side::B),
            target_proof: proof,
        });
    }

    let collect = |out: &SearchOutcome<S>, side: Side| -> Result<ConjectureDataset<S>> {
        let values = node_values(&out.tree, cfg.gamma)?;
        harvest(out, &values, side, cfg.generation, theory, cfg.harvest)
    };
    let dataset_a = collect(&out_a, Side::A)?;
    let dataset_b = collect(&out_b, Side::B)?;

    let cross = |p: &HeuristicParams<S>, d: &ConjectureDataset<S>| {
        sweep(
            theory,
            p,
            d.entries.iter().map(|e| (&e.goal, e.value)),
            cfg.budgets.cross,
        )
    };
    let (a, b) = rayon::join(|| cross(pa, &dataset_b), || cross(pb, &dataset_a));
    let (a, b) = (a?, b?);

    r.score_a = a.score;
    r.score_b = b.score;
    r.proved_count_a = a.proved;
    r.proved_count_b = b.proved;
    r.expansions_a = a.expansions;
    r.expansions_b = b.expansions;
    r.dataset_a_size = dataset_a.len();
    r.dataset_b_size = dataset_b.len();
    (r.winner, r.decided_by) = decide_winner(&r);
    Ok(SelfPlayOutcome {
        result: r,
        dataset_a,
        dataset_b,
        target_proof: None,
    })
}
