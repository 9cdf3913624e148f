//! Champion/challenger evolution of prover parameters.
//!
//! Each generation plays one self-play match on the target. The winner
//! becomes the next champion; the loop stops as soon as a side proves the
//! target or the generation limit is reached.
//!
//! Randomness lives only in mutation. The generator is ChaCha8 seeded from a
//! `u64` (`rand_chacha::ChaCha8Rng::seed_from_u64`). Every call to [`mutate`]
//! consumes exactly 16 words: for each of the five weights a mask draw and two
//! Box-Muller draws, then one word for the depth-limit step. Draws happen
//! whether or not a mutation fires, so streams stay aligned across runs.

use std::ops::ControlFlow;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::arena::{self_play_match, Budgets, SelfPlayConfig, Side};
use crate::checker::{check_proof, Proof};
use crate::error::{Error, Result};
use crate::kernel::Atom;
use crate::prover::HeuristicParams;
use crate::scalar::Scalar;
use crate::theory_io::Theory;
use crate::valuation::HarvestOptions;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MutationConfig<S> {
    /// Standard deviation of the Gaussian weight step.
    pub sigma: S,
    /// Per-weight mutation probability.
    pub p_mut: S,
    /// Largest change to the depth limit, in either direction.
    pub depth_limit_step: usize,
    pub seed: u64,
}

impl<S: Scalar> MutationConfig<S> {
    pub fn validate(&self) -> Result<()> {
        if self.sigma < S::zero() || !self.sigma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "sigma must be finite and >= 0, got {}",
                self.sigma
            )));
        }
        if !(self.p_mut >= S::zero() && self.p_mut <= S::one()) {
            return Err(Error::InvalidArgument(format!(
                "p_mut must lie in [0, 1], got {}",
                self.p_mut
            )));
        }
        Ok(())
    }
}

impl<S: Scalar> Default for MutationConfig<S> {
    fn default() -> Self {
        MutationConfig {
            sigma: S::from_f64_lossy(0.2),
            p_mut: S::from_f64_lossy(0.5),
            depth_limit_step: 1,
            seed: 0,
        }
    }
}

/// Seeded random stream used by [`mutate`].
#[derive(Clone, Debug)]
pub struct MutationRng(ChaCha8Rng);

impl MutationRng {
    pub fn new(seed: u64) -> Self {
        MutationRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)` from the top 53 bits of one word.
    fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by Box-Muller, always two words.
    fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    fn word(&mut self) -> u64 {
        self.0.next_u64()
    }
}

pub fn mutate<S: Scalar>(
    params: &HeuristicParams<S>,
    rng: &mut MutationRng,
    cfg: &MutationConfig<S>,
) -> HeuristicParams<S> {
    let mut out = params.clone();
    for w in out.weights.iter_mut() {
        let mask = rng.uniform();
        let step = rng.normal();
        if S::from_f64_lossy(mask) < cfg.p_mut {
            *w = *w + cfg.sigma * S::from_f64_lossy(step);
        }
    }
    let word = rng.word();
    let k = cfg.depth_limit_step as u64;
    if k > 0 {
        let step = (word % (2 * k + 1)) as i64 - k as i64;
        out.depth_limit = (out.depth_limit as i64 + step).max(1) as usize;
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    /// Champion against one mutant of itself.
    #[default]
    Challenger,
    /// Two independent mutants of the champion.
    FreshPair,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionConfig<S> {
    pub budgets: Budgets,
    pub gamma: S,
    pub mutation: MutationConfig<S>,
    pub max_generations: usize,
    pub pairing: Pairing,
    pub harvest: HarvestOptions,
}

impl<S: Scalar> EvolutionConfig<S> {
    pub fn new(budgets: Budgets, mutation: MutationConfig<S>, max_generations: usize) -> Self {
        EvolutionConfig {
            budgets,
            gamma: S::from_f64_lossy(0.9),
            mutation,
            max_generations,
            pairing: Pairing::Challenger,
            harvest: HarvestOptions::default(),
        }
    }
}

/// One line of the generation log.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenerationRecord<S> {
    pub generation: usize,
    /// Side A of the match (the champion itself under [`Pairing::Challenger`]).
    pub champion_params: HeuristicParams<S>,
    /// Side B of the match.
    pub challenger_params: HeuristicParams<S>,
    pub score_a: S,
    pub score_b: S,
    pub winner: Side,
    pub dataset_sizes: [usize; 2],
    pub target_proved: bool,
    pub seed: u64,
}

impl<S: Scalar> GenerationRecord<S> {
    pub fn winner_params(&self) -> &HeuristicParams<S> {
        match self.winner {
            Side::A => &self.champion_params,
            Side::B => &self.challenger_params,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvolutionOutcome<S> {
    Solved {
        generation: usize,
        params: HeuristicParams<S>,
        proof: Proof,
    },
    Exhausted {
        limit: usize,
    },
    /// Stopped early by the caller (wall-clock ceiling) after this many generations.
    Truncated {
        generations: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionReport<S> {
    pub generations: Vec<GenerationRecord<S>>,
    pub outcome: EvolutionOutcome<S>,
    /// Expansions over all searches of all generations, both phases.
    pub total_expansions: usize,
}

#[derive(Serialize)]
struct ReportFile<'a, S> {
    outcome: &'static str,
    generation: usize,
    winning_params: Option<&'a HeuristicParams<S>>,
    proof: Option<&'a Proof>,
    total_expansions: usize,
    truncated: bool,
}

impl<S: Scalar> EvolutionReport<S> {
    pub fn is_solved(&self) -> bool {
        matches!(self.outcome, EvolutionOutcome::Solved { .. })
    }

    /// The generation log: one JSON record per line.
    pub fn log_json_lines(&self) -> String {
        crate::theory_io::to_json_lines(&self.generations).expect("records serialize")
    }

    /// Final report: outcome, generation, winning params, proof and totals.
    pub fn to_json(&self) -> String {
        let file = match &self.outcome {
            EvolutionOutcome::Solved {
                generation,
                params,
                proof,
            } => ReportFile {
                outcome: "solved",
                generation: *generation,
                winning_params: Some(params),
                proof: Some(proof),
                total_expansions: self.total_expansions,
                truncated: false,
            },
            EvolutionOutcome::Exhausted { limit } => ReportFile {
                outcome: "exhausted",
                generation: *limit,
                winning_params: None,
                proof: None,
                total_expansions: self.total_expansions,
                truncated: false,
            },
            EvolutionOutcome::Truncated { generations } => ReportFile {
                outcome: "truncated",
                generation: *generations,
                winning_params: None,
                proof: None,
                total_expansions: self.total_expansions,
                truncated: true,
            },
        };
        serde_json::to_string_pretty(&file).expect("report serializes")
    }
}

pub fn evolve<S: Scalar>(
    theory: &Theory,
    target: &Atom,
    init: &HeuristicParams<S>,
    cfg: &EvolutionConfig<S>,
) -> Result<EvolutionReport<S>> {
    evolve_with(theory, target, init, cfg, |_| ControlFlow::Continue(()))
}

/// Like [`evolve`], calling `observer` after each generation's record is
/// appended. Returning `Break` stops the run with a truncated outcome.
pub fn evolve_with<S: Scalar>(
    theory: &Theory,
    target: &Atom,
    init: &HeuristicParams<S>,
    cfg: &EvolutionConfig<S>,
    mut observer: impl FnMut(&GenerationRecord<S>) -> ControlFlow<()>,
) -> Result<EvolutionReport<S>> {
    cfg.budgets.validate()?;
    cfg.mutation.validate()?;
    init.validate()?;
    theory.validate_goal(target)?;

    let mut rng = MutationRng::new(cfg.mutation.seed);
    let mut champion = init.clone();
    let mut generations = Vec::new();
    let mut total_expansions = 0;

    for generation in 0..cfg.max_generations {
        let (pa, pb) = match cfg.pairing {
            Pairing::Challenger => (champion.clone(), mutate(&champion, &mut rng, &cfg.mutation)),
            Pairing::FreshPair => {
                let a = mutate(&champion, &mut rng, &cfg.mutation);
                (a, mutate(&champion, &mut rng, &cfg.mutation))
            }
        };
        let match_cfg = SelfPlayConfig {
            budgets: cfg.budgets,
            gamma: cfg.gamma,
            generation,
            harvest: cfg.harvest,
        };
        let played = self_play_match(theory, target, &pa, &pb, &match_cfg)?;
        let r = &played.result;
        total_expansions +=
            r.harvest_expansions_a + r.harvest_expansions_b + r.expansions_a + r.expansions_b;

        let record = GenerationRecord {
            generation,
            champion_params: pa,
            challenger_params: pb,
            score_a: r.score_a,
            score_b: r.score_b,
            winner: r.winner,
            dataset_sizes: [r.dataset_a_size, r.dataset_b_size],
            target_proved: r.target_proved_by.is_some(),
            seed: cfg.mutation.seed,
        };
        let flow = observer(&record);
        champion = record.winner_params().clone();
        generations.push(record);

        if let Some(proof) = played.target_proof {
            if !check_proof(theory, target, &proof).is_accepted() {
                return Err(Error::Integrity(format!(
                    "winning proof of {target} rejected"
                )));
            }
            return Ok(EvolutionReport {
                generations,
                outcome: EvolutionOutcome::Solved {
                    generation,
                    params: champion,
                    proof,
                },
                total_expansions,
            });
        }
        if flow.is_break() {
            let n = generations.len();
            return Ok(EvolutionReport {
                generations,
                outcome: EvolutionOutcome::Truncated { generations: n },
                total_expansions,
            });
        }
    }
    Ok(EvolutionReport {
        generations,
        outcome: EvolutionOutcome::Exhausted {
            limit: cfg.max_generations,
        },
        total_expansions,
    })
}
