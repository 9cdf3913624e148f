mod common;

use common::*;
use horn_arena::arena::{naive_match, self_play_match, Budgets, Decision, SelfPlayConfig, Side};
use horn_arena::checker::check_proof;
use horn_arena::evolution::{
    evolve, mutate, EvolutionConfig, EvolutionOutcome, MutationConfig, MutationRng, Pairing,
};
use horn_arena::kernel::canonicalize;
use horn_arena::prover::{search, SearchTree};
use horn_arena::valuation::{harvest, node_values, ConjectureDataset, HarvestOptions};
use horn_arena::Params;
use proptest::prelude::*;

/// Goal values recomputed top-down from the definition: rank a goal's AND
/// children by mean child score (childless ones last), break ties by clause
/// id, give rank j the share (1/j)/H_k, and discount by gamma per level.
fn reference_values(tree: &SearchTree<f64>, gamma: f64) -> Vec<f64> {
    fn visit(tree: &SearchTree<f64>, g: usize, v: f64, gamma: f64, out: &mut Vec<f64>) {
        out[g] = v;
        let node = tree.goal(g);
        let mut keyed: Vec<(f64, usize, usize)> = node
            .children
            .iter()
            .map(|&a| {
                let and = tree.and_node(a);
                let key = if and.children.is_empty() {
                    f64::NEG_INFINITY
                } else {
                    and.children
                        .iter()
                        .map(|&c| tree.goal(c).score)
                        .sum::<f64>()
                        / and.children.len() as f64
                };
                (key, and.clause_id, a)
            })
            .collect();
        keyed.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap().then(x.1.cmp(&y.1)));
        let h: f64 = (1..=keyed.len()).map(|i| 1.0 / i as f64).sum();
        for (j, &(_, _, a)) in keyed.iter().enumerate() {
            let share = 1.0 / (j + 1) as f64 / h;
            for &c in &tree.and_node(a).children {
                visit(tree, c, v * share * gamma, gamma, out);
            }
        }
    }
    let mut out = vec![0.0; tree.len()];
    visit(tree, 0, 1.0, gamma, &mut out);
    out
}

#[test]
fn values_match_the_reference() {
    let mut g = Gen::new(77);
    for i in 0..30 {
        let (theory, goal) = if i % 2 == 0 {
            (distractor(), even_target(3 + g.below(8)))
        } else {
            (arith(), mixed_goal(&mut g))
        };
        let out = search(&theory, &goal, &g.any_params(), 200).unwrap();
        let gamma = [0.5, 0.9, 1.0][g.below(3)];
        let v = node_values(&out.tree, gamma).unwrap();
        for (a, b) in v.goal.iter().zip(reference_values(&out.tree, gamma)) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}

#[test]
fn gamma_outside_unit_interval_is_rejected() {
    let out = search(&even(), &even_target(1), &Params::default(), 10).unwrap();
    for gamma in [0.0, -0.5, 1.5, f64::NAN] {
        assert!(node_values(&out.tree, gamma).is_err());
    }
}

fn check_dataset(d: &ConjectureDataset<f64>) {
    for w in d.entries.windows(2) {
        assert!(w[0].value >= w[1].value);
        assert_ne!(w[0].goal, w[1].goal);
    }
    for e in &d.entries {
        assert_eq!(canonicalize(&e.goal), e.goal);
        assert!(e.value > 0.0 && e.value <= 1.0);
    }
    let back = ConjectureDataset::from_json_lines(&d.to_json_lines(), d.origin).unwrap();
    assert_eq!(&back, d);
}

#[test]
fn harvested_entries_are_proved_and_ordered() {
    let theory = distractor();
    let mut g = Gen::new(8);
    let mut seen = 0;
    for _ in 0..20 {
        let out = search(&theory, &even_target(12), &g.any_params(), 300).unwrap();
        let values = node_values(&out.tree, 0.9).unwrap();
        let d = harvest(
            &out,
            &values,
            Side::A,
            0,
            &theory,
            HarvestOptions::default(),
        )
        .unwrap();
        seen += d.len();
        check_dataset(&d);
        for e in &d.entries {
            let idx = (1..out.tree.len())
                .find(|&i| {
                    out.tree.goal(i).is_proved() && canonicalize(&out.tree.goal(i).atom) == e.goal
                })
                .unwrap();
            assert!(check_proof(&theory, &e.goal, &out.tree.proof_of(idx).unwrap()).is_accepted());
        }
    }
    assert!(seen > 0);
}

fn mirrored(a: &Params, b: &Params, budgets: Budgets) {
    let theory = distractor();
    let target = even_target(16);
    let cfg = SelfPlayConfig {
        budgets,
        gamma: 0.9,
        generation: 3,
        harvest: HarvestOptions::default(),
    };
    let ab = self_play_match(&theory, &target, a, b, &cfg).unwrap();
    let ba = self_play_match(&theory, &target, b, a, &cfg).unwrap();
    let (x, y) = (&ab.result, &ba.result);
    assert_eq!(x.score_a, y.score_b);
    assert_eq!(x.score_b, y.score_a);
    assert_eq!(x.proved_count_a, y.proved_count_b);
    let entries = |d: &ConjectureDataset<f64>| {
        d.entries
            .iter()
            .map(|e| (e.goal.clone(), e.value))
            .collect::<Vec<_>>()
    };
    assert_eq!(entries(&ab.dataset_a), entries(&ba.dataset_b));
    assert_eq!(entries(&ab.dataset_b), entries(&ba.dataset_a));
    let tied = x.decided_by == Decision::Incumbent
        || (x.decided_by == Decision::Target
            && x.harvest_expansions_a == x.harvest_expansions_b
            && (x.winner, y.winner) == (Side::A, Side::A));
    if tied {
        assert_eq!(y.decided_by, x.decided_by);
        assert_eq!(y.winner, Side::A);
    } else {
        assert_eq!(x.winner, y.winner.other());
    }
    assert!(x.score_a <= ab.dataset_b.total_value() + 1e-12);
    assert!(x.score_b <= ab.dataset_a.total_value() + 1e-12);
}

#[test]
fn self_play_is_antisymmetric() {
    let mut g = Gen::new(31);
    for _ in 0..6 {
        let (a, b) = (g.params(16), g.params(16));
        mirrored(&a, &b, Budgets::new(300, 40).unwrap());
    }
}

#[test]
fn larger_cross_budget_never_lowers_a_score() {
    let theory = distractor();
    let target = even_target(16);
    let mut g = Gen::new(2);
    for _ in 0..4 {
        let (a, b) = (g.params(16), g.params(16));
        let run = |cross| {
            let cfg = SelfPlayConfig {
                budgets: Budgets::new(300, cross).unwrap(),
                gamma: 0.9,
                generation: 0,
                harvest: HarvestOptions::default(),
            };
            self_play_match(&theory, &target, &a, &b, &cfg)
                .unwrap()
                .result
        };
        let (lo, hi) = (run(5), run(50));
        assert!(lo.score_a <= hi.score_a && lo.score_b <= hi.score_b);
    }
}

#[test]
fn naive_match_is_antisymmetric() {
    let theory = arith();
    let mut g = Gen::new(4);
    let obligations: Vec<_> = (0..15).map(|_| mixed_goal(&mut g)).collect();
    for _ in 0..5 {
        let shallow = 3 + g.below(4);
        let (a, b) = (g.params(shallow), g.params(8));
        let x = naive_match(&theory, &obligations, &a, &b, 40).unwrap();
        let y = naive_match(&theory, &obligations, &b, &a, 40).unwrap();
        assert_eq!((x.score_a, x.score_b), (y.score_b, y.score_a));
        if x.decided_by == Decision::Incumbent {
            assert_eq!((x.winner, y.winner), (Side::A, Side::A));
        } else {
            assert_eq!(x.winner, y.winner.other());
        }
    }
}

fn small_config(seed: u64) -> EvolutionConfig<f64> {
    let mutation = MutationConfig {
        seed,
        ..MutationConfig::default()
    };
    EvolutionConfig::new(Budgets::new(300, 40).unwrap(), mutation, 6)
}

#[test]
fn evolution_is_reproducible_and_keeps_lineage() {
    let theory = distractor();
    let target = even_target(16);
    for seed in 0..3 {
        let cfg = small_config(seed);
        let r1 = evolve(&theory, &target, &Params::default(), &cfg).unwrap();
        let r2 = evolve(&theory, &target, &Params::default(), &cfg).unwrap();
        assert_eq!(r1.log_json_lines(), r2.log_json_lines());
        assert_eq!(r1.to_json(), r2.to_json());
        for w in r1.generations.windows(2) {
            assert_eq!(&w[1].champion_params, w[0].winner_params());
            assert_eq!(w[1].generation, w[0].generation + 1);
        }
        match &r1.outcome {
            EvolutionOutcome::Solved {
                generation, proof, ..
            } => {
                assert_eq!(generation + 1, r1.generations.len());
                assert!(check_proof(&theory, &target, proof).is_accepted());
            }
            EvolutionOutcome::Exhausted { limit } => assert_eq!(*limit, r1.generations.len()),
            EvolutionOutcome::Truncated { .. } => unreachable!(),
        }
    }
}

#[test]
fn fresh_pairs_and_single_precision_run() {
    let theory = distractor();
    let target = even_target(10);
    let mut cfg = small_config(1);
    cfg.pairing = Pairing::FreshPair;
    let r = evolve(&theory, &target, &Params::default(), &cfg).unwrap();
    assert!(!r.generations.is_empty());

    let m32 = MutationConfig::<f32> {
        seed: 1,
        ..MutationConfig::default()
    };
    let cfg32 = EvolutionConfig::new(Budgets::new(300, 40).unwrap(), m32, 6);
    let r32 = evolve(
        &theory,
        &target,
        &horn_arena::prover::HeuristicParams::<f32>::default(),
        &cfg32,
    )
    .unwrap();
    assert!(!r32.generations.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutation_draws_stay_aligned(seed in any::<u64>(), p in 0.0f64..=1.0, sigma in 0.0f64..2.0) {
        let base = Gen::new(seed).any_params();
        let cfg = MutationConfig { sigma, p_mut: p, depth_limit_step: 2, seed };
        let other = MutationConfig { p_mut: 1.0 - p, ..cfg };
        let mut r1 = MutationRng::new(seed);
        let mut r2 = MutationRng::new(seed);
        let _ = mutate(&base, &mut r1, &cfg);
        let _ = mutate(&base, &mut r2, &other);
        prop_assert_eq!(mutate(&base, &mut r1, &cfg), mutate(&base, &mut r2, &cfg));
    }

    #[test]
    fn zero_probability_keeps_weights(seed in any::<u64>()) {
        let base = Gen::new(seed).any_params();
        let cfg = MutationConfig { p_mut: 0.0, ..MutationConfig::default() };
        let out = mutate(&base, &mut MutationRng::new(seed), &cfg);
        prop_assert_eq!(out.weights, base.weights);
        prop_assert!(out.depth_limit.abs_diff(base.depth_limit) <= 1 && out.depth_limit >= 1);
    }
}
