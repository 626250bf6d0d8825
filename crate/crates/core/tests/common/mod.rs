//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use spikeflow::flow::FlowNetwork;
use spikeflow::tnfr::TnfrInstance;

/// Max flow by enumerating every s-t cut (max-flow min-cut).
pub fn brute_force_max_flow(g: &FlowNetwork) -> u64 {
    let n = g.node_count();
    let (s, t) = (g.source(), g.sink());
    let inner: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = u64::MAX;
    for mask in 0u32..(1 << inner.len()) {
        let mut side = vec![false; n];
        side[s] = true;
        for (i, &v) in inner.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        let cut = g.edges().iter().filter(|e| side[e.from] && !side[e.to]).map(|e| e.capacity).sum();
        best = best.min(cut);
    }
    best
}

/// Max flow by enumerating every integral assignment; only for tiny graphs.
pub fn enumerate_max_flow(g: &FlowNetwork) -> u64 {
    let m = g.edge_count();
    let mut flows = vec![0u64; m];
    let mut best = 0;
    loop {
        let mut bal = vec![0i64; g.node_count()];
        for (e, &f) in g.edges().iter().zip(&flows) {
            bal[e.from] -= f as i64;
            bal[e.to] += f as i64;
        }
        let ok = (0..g.node_count()).all(|v| v == g.source() || v == g.sink() || bal[v] == 0);
        if ok {
            best = best.max((-bal[g.source()]) as u64);
        }
        let mut i = 0;
        loop {
            if i == m {
                return best;
            }
            if flows[i] < g.edges()[i].capacity {
                flows[i] += 1;
                break;
            }
            flows[i] = 0;
            i += 1;
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Every network with `2..=max_nodes` nodes (source 0, sink last), at most
/// `max_edges` simple edges and capacities in `1..=c_max`. With
/// `up_to_isomorphism`, edge sets that are a relabelling of inner nodes of
/// an earlier one are skipped.
pub fn all_networks(max_nodes: usize, max_edges: usize, c_max: u64, up_to_isomorphism: bool, mut visit: impl FnMut(&FlowNetwork)) -> usize {
    let mut count = 0;
    for n in 2..=max_nodes {
        let t = n - 1;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && v != 0 && u != t)
            .collect();
        let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u, v)).expect("pair exists");
        let inner: Vec<usize> = (1..t).collect();
        let images: Vec<Vec<usize>> = permutations(&inner)
            .into_iter()
            .map(|perm| {
                let relabel = |x: usize| if x == 0 || x == t { x } else { perm[x - 1] };
                pairs.iter().map(|&(u, v)| index(relabel(u), relabel(v))).collect()
            })
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let k = mask.count_ones() as usize;
            if k > max_edges {
                continue;
            }
            if up_to_isomorphism {
                let image = |map: &Vec<usize>| (0..pairs.len()).filter(|i| mask >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << map[i]);
                if images.iter().any(|m| image(m) < mask) {
                    continue;
                }
            }
            let chosen: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let mut caps = vec![1u64; k];
            loop {
                let edges: Vec<(usize, usize, u64)> = chosen.iter().zip(&caps).map(|(&(u, v), &c)| (u, v, c)).collect();
                visit(&FlowNetwork::from_edges(n, 0, t, &edges).expect("valid by construction"));
                count += 1;
                let mut i = 0;
                while i < k && caps[i] == c_max {
                    caps[i] = 1;
                    i += 1;
                }
                if i == k {
                    break;
                }
                caps[i] += 1;
            }
        }
    }
    count
}

/// Feasibility of `value > d` by trying every admissible arc flow.
pub fn brute_force_tnfr(inst: &TnfrInstance) -> bool {
    let doms: Vec<Vec<u64>> = inst
        .arcs
        .iter()
        .map(|a| std::iter::once(0).chain(a.cmin.max(1)..=a.cmax).collect())
        .collect();
    let mut idx = vec![0usize; doms.len()];
    loop {
        let flow: Vec<u64> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
        if matches!(inst.validate(&flow), Ok(v) if v > inst.d) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return false;
            }
            if idx[i] + 1 < doms[i].len() {
                idx[i] += 1;
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
