//! `horn-arena`: prove, match, evolve and check from the command line.
//!
//! Exit codes: 0 proved/solved/accepted, 1 negative outcome, 2 usage or
//! configuration error, 3 malformed input file, 4 integrity error.

mod files;

use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use horn_arena::arena::{naive_match, self_play_match, Budgets, SelfPlayConfig};
use horn_arena::checker::{check_proof, Proof, Verdict};
use horn_arena::evolution::{
    evolve_with, EvolutionConfig, EvolutionOutcome, MutationConfig, Pairing,
};
use horn_arena::prover::{search, Status};
use horn_arena::theory_io::to_json_lines;
use horn_arena::valuation::HarvestOptions;
use horn_arena::Outcome;
use serde::Serialize;

use files::{load_goal, load_obligations, load_params, load_theory, run_error, Failure, OutDir};

#[derive(Parser)]
#[command(
    name = "horn-arena",
    version,
    about = "Self-playable theorem proving over Horn clauses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a proof of one goal.
    Prove(ProveArgs),
    /// Play one match between two parameter files.
    Match(MatchArgs),
    /// Evolve parameters by repeated self-play until the target is proved.
    Evolve(EvolveArgs),
    /// Verify a proof file against a theory.
    Check(CheckArgs),
}

#[derive(Args)]
struct ProveArgs {
    #[arg(long)]
    theory: PathBuf,
    #[command(flatten)]
    goal: GoalArgs,
    /// Heuristic parameters (JSON); defaults to uniform weights, depth limit 16.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Maximum number of expansions.
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GoalArgs {
    /// Goal text, e.g. "even(s(s(z)))".
    #[arg(long)]
    goal: Option<String>,
    #[arg(long)]
    goal_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TargetArgs {
    /// Target goal text.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    target_file: Option<PathBuf>,
}

#[derive(Args)]
struct GameArgs {
    #[arg(long, default_value_t = 1000)]
    harvest_budget: usize,
    #[arg(long, default_value_t = 100)]
    cross_budget: usize,
    /// Per-level discount of subgoal values, in (0, 1].
    #[arg(long, default_value_t = 0.9)]
    gamma: f64,
    /// Keep subgoals that unify with a fact in one step.
    #[arg(long)]
    no_trivial_filter: bool,
}

impl GameArgs {
    fn budgets(&self) -> Result<Budgets, Failure> {
        Budgets::new(self.harvest_budget, self.cross_budget)
            .map_err(|e| Failure::from_core(e, "budgets", false))
    }

    fn harvest(&self) -> HarvestOptions {
        HarvestOptions {
            trivial_filter: !self.no_trivial_filter,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Naive,
    SelfPlay,
}

#[derive(Args)]
struct MatchArgs {
    #[arg(long)]
    theory: PathBuf,
    #[arg(long, value_enum, default_value = "self-play")]
    mode: Mode,
    #[arg(long)]
    params_a: Option<PathBuf>,
    #[arg(long)]
    params_b: Option<PathBuf>,
    /// Target goal text (self-play).
    #[arg(long, conflicts_with = "target_file")]
    target: Option<String>,
    #[arg(long)]
    target_file: Option<PathBuf>,
    /// One goal per line (naive).
    #[arg(long)]
    obligations: Option<PathBuf>,
    /// Per-obligation budget (naive).
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    #[command(flatten)]
    game: GameArgs,
    /// Generation number stamped on dataset entries.
    #[arg(long, default_value_t = 0)]
    generation: usize,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    Challenger,
    FreshPair,
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long)]
    theory: PathBuf,
    #[command(flatten)]
    target: TargetArgs,
    #[arg(long)]
    init_params: Option<PathBuf>,
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 0.2)]
    sigma: f64,
    #[arg(long, default_value_t = 0.5)]
    p_mut: f64,
    #[arg(long, default_value_t = 1)]
    depth_step: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    max_generations: usize,
    #[arg(long, value_enum, default_value = "challenger")]
    pairing: PairingArg,
    /// Wall-clock safety ceiling in seconds; when hit the run stops and the
    /// report is marked truncated.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    theory: PathBuf,
    #[arg(long)]
    proof: PathBuf,
    /// Claimed goal; defaults to the proof's root goal.
    #[arg(long)]
    goal: Option<String>,
}

#[derive(Serialize)]
struct Stats {
    goal: String,
    proved: bool,
    expansions_used: usize,
    budget: usize,
    goal_nodes: usize,
    and_nodes: usize,
    proved_goals: usize,
    failed_goals: usize,
    open_goals: usize,
    max_depth: usize,
    expansion_order: Vec<usize>,
}

impl Stats {
    fn of(out: &Outcome, goal: String) -> Stats {
        let goals = out.tree.goals();
        let count = |s: Status| goals.iter().filter(|g| g.status == s).count();
        Stats {
            goal,
            proved: out.root_proved,
            expansions_used: out.expansions_used,
            budget: out.budget,
            goal_nodes: goals.len(),
            and_nodes: out.tree.ands().len(),
            proved_goals: count(Status::Proved),
            failed_goals: count(Status::Failed),
            open_goals: count(Status::Open),
            max_depth: goals.iter().map(|g| g.depth).max().unwrap_or(0),
            expansion_order: out.expansion_order.clone(),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn prove(args: ProveArgs) -> Result<bool, Failure> {
    let theory = load_theory(&args.theory)?;
    let goal = load_goal(
        args.goal.goal.as_deref(),
        args.goal.goal_file.as_deref(),
        &theory,
        "--goal",
    )?;
    let params = load_params(args.params.as_deref())?;
    let out_dir = OutDir::create(&args.out_dir)?;

    let out = search(&theory, &goal, &params, args.budget).map_err(run_error)?;
    out_dir.write("stats.json", &json(&Stats::of(&out, goal.to_string())))?;
    match &out.proof {
        Some(proof) => {
            if let v @ Verdict::Rejected { .. } = check_proof(&theory, &goal, proof) {
                return Err(Failure::Integrity(format!(
                    "emitted proof of {goal} rejected: {v}"
                )));
            }
            let path = out_dir.write("proof.json", &(proof.to_json() + "\n"))?;
            println!(
                "proved {goal} in {} expansions; proof written to {}",
                out.expansions_used,
                path.display()
            );
            Ok(true)
        }
        None => {
            println!(
                "not proved: {goal} ({} of {} expansions used)",
                out.expansions_used, args.budget
            );
            Ok(false)
        }
    }
}

fn play(args: MatchArgs) -> Result<bool, Failure> {
    let theory = load_theory(&args.theory)?;
    let pa = load_params(args.params_a.as_deref())?;
    let pb = load_params(args.params_b.as_deref())?;
    let out_dir = OutDir::create(&args.out_dir)?;

    let result = match args.mode {
        Mode::Naive => {
            let path = args
                .obligations
                .as_deref()
                .ok_or_else(|| Failure::Usage("--obligations is required in naive mode".into()))?;
            let obligations = load_obligations(path, &theory)?;
            naive_match(&theory, &obligations, &pa, &pb, args.budget).map_err(run_error)?
        }
        Mode::SelfPlay => {
            let target = load_goal(
                args.target.as_deref(),
                args.target_file.as_deref(),
                &theory,
                "--target",
            )?;
            let cfg = SelfPlayConfig {
                budgets: args.game.budgets()?,
                gamma: args.game.gamma,
                generation: args.generation,
                harvest: args.game.harvest(),
            };
            let played = self_play_match(&theory, &target, &pa, &pb, &cfg).map_err(run_error)?;
            out_dir.write("dataset_a.jsonl", &played.dataset_a.to_json_lines())?;
            out_dir.write("dataset_b.jsonl", &played.dataset_b.to_json_lines())?;
            if let Some(proof) = &played.target_proof {
                out_dir.write("target_proof.json", &(proof.to_json() + "\n"))?;
            }
            played.result
        }
    };
    out_dir.write("match.json", &json(&result))?;
    println!(
        "winner {} by {}: score {} vs {}, proved {} vs {}",
        result.winner,
        format!("{:?}", result.decided_by).to_lowercase(),
        result.score_a,
        result.score_b,
        result.proved_count_a,
        result.proved_count_b
    );
    Ok(true)
}

fn run_evolution(args: EvolveArgs) -> Result<bool, Failure> {
    let theory = load_theory(&args.theory)?;
    let target = load_goal(
        args.target.target.as_deref(),
        args.target.target_file.as_deref(),
        &theory,
        "--target",
    )?;
    let init = load_params(args.init_params.as_deref())?;
    let out_dir = OutDir::create(&args.out_dir)?;
    let ceiling = match args.time_limit {
        Some(s) if !(s > 0.0 && s.is_finite()) => {
            return Err(Failure::Usage(format!(
                "--time-limit must be positive, got {s}"
            )));
        }
        s => s.map(Duration::from_secs_f64),
    };

    let mutation = MutationConfig {
        sigma: args.sigma,
        p_mut: args.p_mut,
        depth_limit_step: args.depth_step,
        seed: args.seed,
    };
    let mut cfg = EvolutionConfig::new(args.game.budgets()?, mutation, args.max_generations);
    cfg.gamma = args.game.gamma;
    cfg.harvest = args.game.harvest();
    cfg.pairing = match args.pairing {
        PairingArg::Challenger => Pairing::Challenger,
        PairingArg::FreshPair => Pairing::FreshPair,
    };

    let start = Instant::now();
    let mut log = Vec::new();
    let mut write_error = None;
    let report = evolve_with(&theory, &target, &init, &cfg, |record| {
        log.push(record.clone());
        let text = to_json_lines(&log).expect("records serialize");
        if let Err(e) = out_dir.write("generations.jsonl", &text) {
            write_error = Some(e);
            return ControlFlow::Break(());
        }
        match ceiling {
            Some(limit) if start.elapsed() >= limit => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    })
    .map_err(run_error)?;
    if let Some(e) = write_error {
        return Err(e);
    }

    out_dir.write("generations.jsonl", &report.log_json_lines())?;
    out_dir.write("report.json", &(report.to_json() + "\n"))?;
    match &report.outcome {
        EvolutionOutcome::Solved {
            generation, params, ..
        } => {
            println!(
                "solved at generation {generation} with {}",
                params.to_json()
            );
            Ok(true)
        }
        EvolutionOutcome::Exhausted { limit } => {
            println!("not solved within {limit} generations");
            Ok(false)
        }
        EvolutionOutcome::Truncated { generations } => {
            eprintln!(
                "time limit reached after {generations} generations; report marked truncated"
            );
            Ok(false)
        }
    }
}

fn check(args: CheckArgs) -> Result<bool, Failure> {
    let theory = load_theory(&args.theory)?;
    let text = String::from_utf8(files::read(&args.proof)?)
        .map_err(|_| Failure::Input(format!("{}: invalid UTF-8", args.proof.display())))?;
    let proof = Proof::from_json(&text)
        .map_err(|e| Failure::from_core(e, &args.proof.display().to_string(), true))?;
    let goal = match &args.goal {
        Some(g) => load_goal(Some(g), None::<&Path>, &theory, "--goal")?,
        None => proof.goal.clone(),
    };
    match check_proof(&theory, &goal, &proof) {
        Verdict::Accepted => {
            println!("accepted: {goal}");
            Ok(true)
        }
        v => {
            println!("{v}");
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Prove(a) => prove(a),
        Command::Match(a) => play(a),
        Command::Evolve(a) => run_evolution(a),
        Command::Check(a) => check(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("horn-arena: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
