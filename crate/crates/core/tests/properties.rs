mod common;

use proptest::prelude::*;
use spikeflow::flow::{edmonds_karp, generate_random, min_cut, parse_dimacs, to_dimacs, validate_flow, FlowNetwork};
use spikeflow::naive::decide_naive;
use spikeflow::snn::{Leak, Neuron, NeuronId, Role, SpikingNetwork, StopCondition};
use spikeflow::spiking_maxflow::{solve, Mode};

fn random_network() -> impl Strategy<Value = FlowNetwork> {
    (4usize..=9, any::<u64>(), 1u64..=6).prop_flat_map(|(n, seed, c)| {
        let max_m = n * (n - 1) / 2;
        (n - 1..=max_m).prop_map(move |m| generate_random(n, m, c, seed).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn residual_solver_is_exact(g in random_network()) {
        let out = solve(&g, Mode::Residual).unwrap();
        prop_assert_eq!(out.value, common::brute_force_max_flow(&g));
        prop_assert!(validate_flow(&g, &out.flow).is_ok());
        let (_, cut) = min_cut(&g, &out.flow);
        prop_assert_eq!(cut, out.value);
    }

    #[test]
    fn faithful_mode_never_overshoots(g in random_network()) {
        let out = solve(&g, Mode::PaperFaithful).unwrap();
        prop_assert!(validate_flow(&g, &out.flow).is_ok());
        prop_assert!(out.value <= edmonds_karp(&g).value);
        prop_assert!(out.augmentations() <= g.edge_count());
        for ep in &out.episode_stats {
            prop_assert!(ep.timesteps <= 2 * g.edge_count() as u64 + 1);
            prop_assert!(ep.max_hr_spikes <= 1);
        }
    }

    #[test]
    fn dimacs_round_trip(g in random_network()) {
        let text = to_dimacs(&g);
        let back = parse_dimacs(text.as_bytes()).unwrap();
        prop_assert_eq!(to_dimacs(&back), text);
    }

    #[test]
    fn generator_is_deterministic_and_connected(n in 3usize..12, seed in any::<u64>()) {
        let m = n - 1 + (seed % 3) as usize;
        let m = m.min(n * (n - 1) / 2);
        let a = generate_random(n, m, 4, seed).unwrap();
        prop_assert_eq!(to_dimacs(&a), to_dimacs(&generate_random(n, m, 4, seed).unwrap()));
        prop_assert_eq!(a.edge_count(), m);
        prop_assert!(a.is_weakly_connected() && a.has_st_path());
    }

    #[test]
    fn netlist_round_trip(thresholds in proptest::collection::vec(1i64..5, 1..5), syn in proptest::collection::vec((0u32..5, 0u32..5, 0u32..3, -2i64..4), 0..8)) {
        let mut net = SpikingNetwork::new();
        for (i, &th) in thresholds.iter().enumerate() {
            net.add_neuron(Neuron::new(i as u32, th, 0, Leak::new(1, 2).unwrap(), 0, Role::Standard)).unwrap();
        }
        for (pre, post, d, w) in syn {
            let _ = net.connect(NeuronId(pre), NeuronId(post), d, w);
        }
        net.schedule(NeuronId(0), 0).unwrap();
        let back = SpikingNetwork::parse_netlist(net.to_netlist().as_bytes()).unwrap();
        prop_assert_eq!(back.to_netlist(), net.to_netlist());
        let stop = StopCondition::StepCount(6);
        prop_assert_eq!(back.run(6, &stop).trace, net.run(6, &stop).trace);
    }
}

#[test]
fn cut_oracle_agrees_with_flow_enumeration() {
    let count = common::all_networks(4, 5, 2, false, |g| {
        assert_eq!(common::brute_force_max_flow(g), common::enumerate_max_flow(g), "{}", to_dimacs(g));
    });
    assert!(count > 1000);
}

#[test]
fn naive_decider_on_random_small_graphs() {
    for seed in 0..30 {
        let g = generate_random(4, 4, 2, seed).unwrap();
        let best = edmonds_karp(&g).value;
        for d in 0..=best + 1 {
            assert_eq!(decide_naive(&g, d).unwrap().accept, best > d, "seed {seed} d {d}");
        }
    }
}
