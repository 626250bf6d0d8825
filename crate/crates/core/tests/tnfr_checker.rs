mod common;

use proptest::prelude::*;
use spikeflow::tnfr::{check_feasible, CheckOptions, NodeKind, Provenance, TnfrInstance};

/// Random instance with up to 5 nodes and 8 arcs, every domain at most 4 values.
fn instance() -> impl Strategy<Value = TnfrInstance> {
    (3usize..=5, 0u64..=4).prop_flat_map(|(n, d)| {
        let kinds = proptest::collection::vec(prop_oneof![6 => Just(NodeKind::Plain), 1 => Just(NodeKind::Reservoir), 1 => Just(NodeKind::Supply)], n - 2);
        let arcs = proptest::collection::vec((0..n, 0..n, 0u64..=3, 0u64..=2), 1..=8);
        (kinds, arcs).prop_map(move |(kinds, arcs)| {
            let mut inst = TnfrInstance::new();
            inst.add_node(NodeKind::Source, Provenance::default());
            inst.add_node(NodeKind::Sink, Provenance::default());
            for k in kinds {
                inst.add_node(k, Provenance::default());
            }
            for (u, v, lo, width) in arcs {
                // keep domains {0} u [lo, hi] at four values or fewer
                let lo = lo.max(1);
                let hi = (lo + width).min(lo + 2);
                inst.add_arc(u, v, lo, hi, Provenance::default());
            }
            inst.d = d;
            inst
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn checker_matches_enumeration(inst in instance()) {
        let got = check_feasible(&inst, &CheckOptions::default()).unwrap();
        prop_assert_eq!(got.feasible, common::brute_force_tnfr(&inst));
        if let Some(w) = got.witness {
            prop_assert!(inst.validate(&w).unwrap() > inst.d);
        }
    }
}

/// Stand-alone energy gadget. The source sends the `fires` spike units as
/// one rigid arc plus the channel unit, so value > `fires` needs both.
fn energy_gadget(e: u64, fires: u64) -> TnfrInstance {
    let mut inst = TnfrInstance::new();
    let p = Provenance::default;
    let s = inst.add_node(NodeKind::Source, p());
    let t = inst.add_node(NodeKind::Sink, p());
    let j = inst.add_node(NodeKind::Plain, p());
    let t_e = inst.add_node(NodeKind::Plain, p());
    inst.add_arc(s, j, 0, 1, p());
    if fires > 0 {
        inst.add_arc(s, j, fires, fires, p());
    }
    inst.add_arc(j, t_e, e, e, p());
    if e > 1 {
        let r_e = inst.add_node(NodeKind::Reservoir, p());
        let slack = inst.add_node(NodeKind::Supply, p());
        inst.add_arc(t_e, r_e, e - 1, e - 1, p());
        inst.add_arc(slack, j, 0, e - 1, p());
    }
    inst.add_arc(t_e, t, 0, 1, p());
    inst.d = fires;
    inst
}

#[test]
fn energy_gadget_admits_channel_iff_budget_left() {
    for e in 1..=6 {
        for fires in 0..=7 {
            let inst = energy_gadget(e, fires);
            let got = check_feasible(&inst, &CheckOptions::default()).unwrap().feasible;
            assert_eq!(got, fires < e, "e={e} fires={fires}");
            assert_eq!(got, common::brute_force_tnfr(&inst), "e={e} fires={fires}");
        }
    }
}
