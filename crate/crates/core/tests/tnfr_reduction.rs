use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spikeflow::tnfr::toys::{network, suite};
use spikeflow::tnfr::{simulate, verify_reduction, verify_reduction_with, CheckOptions, Mutation, ReductionConfig, TnfrError};

fn opts() -> CheckOptions {
    CheckOptions { max_arcs: 4096, ..CheckOptions::default() }
}

/// Tiny random configurations that satisfy every assumption, up to three
/// standard-or-accept neurons and `t <= 3`.
fn random_configs(count: usize, seed: u64) -> Vec<ReductionConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let extra: Vec<i64> = (0..rng.random_range(0..=2)).map(|_| rng.random_range(1..=3)).collect();
        let ids: Vec<u32> = std::iter::once(1).chain((0..extra.len()).map(|i| 3 + i as u32)).collect();
        let mut syn = Vec::new();
        for _ in 0..rng.random_range(1..=4) {
            let pre = if rng.random_bool(0.4) { 0 } else { ids[rng.random_range(0..ids.len())] };
            let post = ids[rng.random_range(0..ids.len())];
            syn.push((pre, post, rng.random_range(1..=2), rng.random_range(0..=2)));
        }
        let t = rng.random_range(1..=3);
        let total = (3 + extra.len()) as u32 * t;
        let cfg = ReductionConfig::new(network(rng.random_range(1..=2), &extra, &syn), t, rng.random_range(1..=total));
        match simulate(&cfg) {
            Ok(_) => out.push(cfg),
            Err(TnfrError::Assumption { index: 7, .. }) => {}
            Err(e) => panic!("generator produced an invalid config: {e}"),
        }
    }
    out
}

#[test]
fn reduction_agrees_with_simulation_on_suite() {
    for (name, cfg, expected) in suite() {
        let rep = verify_reduction(&cfg, &opts()).unwrap();
        assert_eq!(rep.accepted, expected, "{name}");
        assert!(rep.passed, "{name}: {}", rep.counterexample.unwrap_or_default());
        if expected {
            assert_eq!(rep.witness_value, Some(3), "{name}");
        }
    }
}

#[test]
fn reduction_agrees_with_simulation_on_random_configs() {
    let configs = random_configs(300, 7);
    let accepted = configs.iter().filter(|c| simulate(c).unwrap().accepted).count();
    assert!(accepted > 20 && accepted < 280, "unbalanced sample: {accepted} accepts");
    for cfg in &configs {
        let rep = verify_reduction(cfg, &opts()).unwrap();
        assert!(rep.passed, "{}", rep.counterexample.unwrap_or_default());
    }
}

#[test]
fn dropping_the_failure_gadget_turns_accepts_into_no() {
    for (name, cfg, expected) in suite() {
        let rep = verify_reduction_with(&cfg, Mutation::DropFailureGadget, &opts()).unwrap();
        assert!(!rep.checker_yes, "{name}");
        assert_eq!(rep.passed, !expected, "{name}");
    }
}

#[test]
fn dropping_the_constant_tie_turns_rejects_into_yes() {
    for (name, cfg, _) in suite() {
        let rep = verify_reduction_with(&cfg, Mutation::DropConstantTie, &opts()).unwrap();
        assert!(rep.checker_yes, "{name}");
    }
}

#[test]
fn instance_size_is_linear_in_neurons_times_steps() {
    for cfg in random_configs(100, 11) {
        let rep = verify_reduction(&cfg, &opts()).unwrap();
        let nt = cfg.snn.neurons().len() * cfg.t as usize;
        assert!(rep.nodes <= 12 * nt + 16, "{} nodes for n*t = {nt}", rep.nodes);
        assert!(rep.arcs <= 20 * nt + 16, "{} arcs for n*t = {nt}", rep.arcs);
    }
}
