//! Sweeps target size and harvest budget on the distractor fixture and
//! reports how default, hand-picked and evolved provers fare.
//!
//! cargo run --release -p horn-arena --example calibrate -- <N> <harvest> <cross>

use std::time::Instant;

use horn_arena::arena::Budgets;
use horn_arena::evolution::{evolve, EvolutionConfig, EvolutionOutcome, MutationConfig};
use horn_arena::prover::search;
use horn_arena::theory_io::{parse_goal, parse_theory};
use horn_arena::Params;

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("number"))
        .collect();
    let (n, harvest, cross) = (args[0], args[1], args[2]);
    let theory = parse_theory(include_str!("../fixtures/distractor.thy")).unwrap();
    let numeral = (0..2 * n).fold("z".to_string(), |t, _| format!("s({t})"));
    let target = parse_goal(&format!("even({numeral})")).unwrap();

    let default = Params::default();
    let hand = Params::new([0.0, 0.0, 0.0, 0.0, -1.0], 16).unwrap();
    for (name, p) in [("default", &default), ("hand-picked", &hand)] {
        let out = search(&theory, &target, p, harvest).unwrap();
        println!(
            "{name}: proved={} expansions={} tree={}",
            out.root_proved,
            out.expansions_used,
            out.tree.len()
        );
    }

    let mut solved = 0;
    for seed in 0..10 {
        let start = Instant::now();
        let mutation = MutationConfig {
            seed,
            ..MutationConfig::default()
        };
        let cfg = EvolutionConfig::new(Budgets::new(harvest, cross).unwrap(), mutation, 50);
        let rep = evolve(&theory, &target, &default, &cfg).unwrap();
        let at = match &rep.outcome {
            EvolutionOutcome::Solved { generation, .. } => {
                solved += 1;
                format!(
                    "solved at {generation} by {:?}",
                    rep.generations.last().unwrap().winner_params().weights
                )
            }
            other => format!("{other:?}"),
        };
        let changes = rep
            .generations
            .iter()
            .filter(|g| g.winner == horn_arena::arena::Side::B)
            .count();
        println!(
            "seed {seed}: {at}, champion changes {changes}, {:.2}s",
            start.elapsed().as_secs_f64()
        );
    }
    println!("solved {solved}/10");
}
