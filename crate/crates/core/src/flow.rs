//! Flow networks, the classical Edmonds-Karp reference, the random DAG
//! generator and DIMACS I/O.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("node {node} out of range (network has {n} nodes)")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("source {0} may not have incoming edges")]
    SourceIncoming(NodeId),
    #[error("sink {0} may not have outgoing edges")]
    SinkOutgoing(NodeId),
    #[error("source and sink must differ")]
    SourceIsSink,
    #[error("cannot generate {m} edges on {n} nodes (need {lo}..={hi})")]
    Infeasible { n: usize, m: usize, lo: usize, hi: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub capacity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNetwork {
    n: usize,
    source: NodeId,
    sink: NodeId,
    edges: Vec<Edge>,
}

impl FlowNetwork {
    pub fn new(n: usize, source: NodeId, sink: NodeId) -> Result<Self, FlowError> {
        for node in [source, sink] {
            if node >= n {
                return Err(FlowError::NodeOutOfRange { node, n });
            }
        }
        if source == sink {
            return Err(FlowError::SourceIsSink);
        }
        Ok(FlowNetwork { n, source, sink, edges: Vec::new() })
    }

    /// Builds a network from `(from, to, capacity)` triples.
    pub fn from_edges(n: usize, source: NodeId, sink: NodeId, edges: &[(NodeId, NodeId, u64)]) -> Result<Self, FlowError> {
        let mut g = FlowNetwork::new(n, source, sink)?;
        for &(u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, from: NodeId, to: NodeId, capacity: u64) -> Result<EdgeId, FlowError> {
        for node in [from, to] {
            if node >= self.n {
                return Err(FlowError::NodeOutOfRange { node, n: self.n });
            }
        }
        if from == to {
            return Err(FlowError::SelfLoop(from));
        }
        if to == self.source {
            return Err(FlowError::SourceIncoming(self.source));
        }
        if from == self.sink {
            return Err(FlowError::SinkOutgoing(self.sink));
        }
        self.edges.push(Edge { from, to, capacity });
        Ok(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn max_capacity(&self) -> u64 {
        self.edges.iter().map(|e| e.capacity).max().unwrap_or(0)
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(move |&i| self.edges[i].from == node)
    }

    pub fn in_edges(&self, node: NodeId) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(move |&i| self.edges[i].to == node)
    }

    /// Incidence lists `(out, in)` per node.
    pub fn adjacency(&self) -> (Vec<Vec<EdgeId>>, Vec<Vec<EdgeId>>) {
        let mut out = vec![Vec::new(); self.n];
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.from].push(i);
            inc[e.to].push(i);
        }
        (out, inc)
    }

    /// True if every node lies in one component of the underlying
    /// undirected graph.
    pub fn is_weakly_connected(&self) -> bool {
        let present = vec![true; self.edges.len()];
        weakly_connected(self.n, &self.edges, &present)
    }

    pub fn has_st_path(&self) -> bool {
        let present = vec![true; self.edges.len()];
        reaches(self.n, &self.edges, &present, self.source, self.sink)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowAssignment {
    pub flows: Vec<u64>,
    pub value: u64,
}

impl FlowAssignment {
    pub fn zero(g: &FlowNetwork) -> Self {
        FlowAssignment { flows: vec![0; g.edge_count()], value: 0 }
    }

    /// Sets `value` to the net outflow of the source.
    pub fn recompute_value(&mut self, g: &FlowNetwork) {
        self.value = g.out_edges(g.source()).map(|e| self.flows[e]).sum();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionInstance {
    pub network: FlowNetwork,
    pub d: u64,
}

impl DecisionInstance {
    /// Reference answer: is the maximum flow value strictly above `d`?
    pub fn answer(&self) -> bool {
        edmonds_karp(&self.network).value > self.d
    }
}

/// One hop of a residual path: an edge used forward or against its
/// direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualArc {
    pub edge: EdgeId,
    pub forward: bool,
}

impl ResidualArc {
    pub fn tail(self, g: &FlowNetwork) -> NodeId {
        let e = g.edge(self.edge);
        if self.forward { e.from } else { e.to }
    }

    pub fn head(self, g: &FlowNetwork) -> NodeId {
        let e = g.edge(self.edge);
        if self.forward { e.to } else { e.from }
    }

    pub fn residual(self, g: &FlowNetwork, f: &FlowAssignment) -> u64 {
        if self.forward { g.edge(self.edge).capacity - f.flows[self.edge] } else { f.flows[self.edge] }
    }
}

/// Fewest-edge augmenting path in the residual graph, or `None`.
/// Neighbours are scanned in edge-id order, forward arcs before reverse.
pub fn bfs_shortest_augmenting_path(g: &FlowNetwork, f: &FlowAssignment) -> Option<Vec<ResidualArc>> {
    let (out, inc) = g.adjacency();
    bfs_with(g, f, &out, &inc, &mut 0)
}

fn bfs_with(
    g: &FlowNetwork,
    f: &FlowAssignment,
    out: &[Vec<EdgeId>],
    inc: &[Vec<EdgeId>],
    ops: &mut u64,
) -> Option<Vec<ResidualArc>> {
    let (s, t) = (g.source(), g.sink());
    let mut parent: Vec<Option<ResidualArc>> = vec![None; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        *ops += 1;
        let arcs = out[u]
            .iter()
            .map(|&e| ResidualArc { edge: e, forward: true })
            .chain(inc[u].iter().map(|&e| ResidualArc { edge: e, forward: false }));
        for arc in arcs {
            *ops += 1;
            let v = arc.head(g);
            if seen[v] || arc.residual(g, f) == 0 {
                continue;
            }
            seen[v] = true;
            parent[v] = Some(arc);
            if v == t {
                let mut path = Vec::new();
                let mut cur = t;
                while let Some(a) = parent[cur] {
                    path.push(a);
                    cur = a.tail(g);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(v);
        }
    }
    None
}

/// Statistics of a classical Edmonds-Karp run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalStats {
    /// BFS queue pops plus arc inspections plus path updates.
    pub ops: u64,
    pub augmentations: u64,
    pub path_lengths: Vec<usize>,
}

pub fn edmonds_karp(g: &FlowNetwork) -> FlowAssignment {
    edmonds_karp_with_stats(g).0
}

pub fn edmonds_karp_with_stats(g: &FlowNetwork) -> (FlowAssignment, ClassicalStats) {
    let (out, inc) = g.adjacency();
    let mut f = FlowAssignment::zero(g);
    let mut stats = ClassicalStats::default();
    while let Some(path) = bfs_with(g, &f, &out, &inc, &mut stats.ops) {
        let delta = path.iter().map(|a| a.residual(g, &f)).min().expect("paths are non-empty");
        for a in &path {
            stats.ops += 1;
            if a.forward {
                f.flows[a.edge] += delta;
            } else {
                f.flows[a.edge] -= delta;
            }
        }
        stats.augmentations += 1;
        stats.path_lengths.push(path.len());
    }
    f.recompute_value(g);
    (f, stats)
}

/// Source side of the minimum cut induced by `f` and its capacity.
pub fn min_cut(g: &FlowNetwork, f: &FlowAssignment) -> (Vec<bool>, u64) {
    let (out, inc) = g.adjacency();
    let mut side = vec![false; g.node_count()];
    side[g.source()] = true;
    let mut queue = VecDeque::from([g.source()]);
    while let Some(u) = queue.pop_front() {
        for &e in &out[u] {
            let v = g.edge(e).to;
            if !side[v] && f.flows[e] < g.edge(e).capacity {
                side[v] = true;
                queue.push_back(v);
            }
        }
        for &e in &inc[u] {
            let v = g.edge(e).from;
            if !side[v] && f.flows[e] > 0 {
                side[v] = true;
                queue.push_back(v);
            }
        }
    }
    let cap = g.edges().iter().filter(|e| side[e.from] && !side[e.to]).map(|e| e.capacity).sum();
    (side, cap)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Length { expected: usize, got: usize },
    Capacity { edge: EdgeId, flow: u64, capacity: u64 },
    Conservation { node: NodeId, inflow: u64, outflow: u64 },
    Value { reported: u64, actual: u64 },
}

pub fn validate_flow(g: &FlowNetwork, f: &FlowAssignment) -> Result<(), Vec<Violation>> {
    if f.flows.len() != g.edge_count() {
        return Err(vec![Violation::Length { expected: g.edge_count(), got: f.flows.len() }]);
    }
    let mut violations = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if f.flows[i] > e.capacity {
            violations.push(Violation::Capacity { edge: i, flow: f.flows[i], capacity: e.capacity });
        }
    }
    let mut inflow = vec![0u64; g.node_count()];
    let mut outflow = vec![0u64; g.node_count()];
    for (i, e) in g.edges().iter().enumerate() {
        outflow[e.from] += f.flows[i];
        inflow[e.to] += f.flows[i];
    }
    for node in 0..g.node_count() {
        if node != g.source() && node != g.sink() && inflow[node] != outflow[node] {
            violations.push(Violation::Conservation { node, inflow: inflow[node], outflow: outflow[node] });
        }
    }
    if f.value != outflow[g.source()] {
        violations.push(Violation::Value { reported: f.value, actual: outflow[g.source()] });
    }
    if violations.is_empty() { Ok(()) } else { Err(violations) }
}

fn weakly_connected(n: usize, edges: &[Edge], present: &[bool]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut components = n;
    for (e, &on) in edges.iter().zip(present) {
        if !on {
            continue;
        }
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components <= 1
}

fn reaches(n: usize, edges: &[Edge], present: &[bool], from: NodeId, to: NodeId) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (e, &on) in edges.iter().zip(present) {
        if on {
            adj[e.from].push(e.to);
        }
    }
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    false
}

/// Random DAG with `n_edges` edges on `n_nodes` nodes.
///
/// Starts from the complete DAG `i -> j` (`j > i`) and deletes uniformly
/// chosen edges, undoing any deletion that disconnects the underlying
/// undirected graph or removes every directed path from node 0 to node
/// `n - 1`. An edge whose deletion was undone can never become deletable
/// again, so it leaves the candidate pool. Capacities are drawn uniformly
/// from `1..=c_max` in edge order once the topology is fixed.
pub fn generate_random(n_nodes: usize, n_edges: usize, c_max: u64, seed: u64) -> Result<FlowNetwork, FlowError> {
    let hi = n_nodes * n_nodes.saturating_sub(1) / 2;
    let lo = n_nodes.saturating_sub(1);
    if n_nodes < 2 || n_edges < lo || n_edges > hi || c_max == 0 {
        return Err(FlowError::Infeasible { n: n_nodes, m: n_edges, lo, hi });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(hi);
    for i in 0..n_nodes {
        for j in i + 1..n_nodes {
            edges.push(Edge { from: i, to: j, capacity: 0 });
        }
    }
    let mut present = vec![true; edges.len()];
    let mut pool: Vec<usize> = (0..edges.len()).collect();
    let mut remaining = edges.len();
    while remaining > n_edges {
        if pool.is_empty() {
            return Err(FlowError::Infeasible { n: n_nodes, m: n_edges, lo, hi });
        }
        let k = rng.random_range(0..pool.len());
        let e = pool.swap_remove(k);
        present[e] = false;
        if weakly_connected(n_nodes, &edges, &present) && reaches(n_nodes, &edges, &present, 0, n_nodes - 1) {
            remaining -= 1;
        } else {
            present[e] = true;
        }
    }
    let mut g = FlowNetwork::new(n_nodes, 0, n_nodes - 1)?;
    for (e, on) in edges.iter().zip(present) {
        if on {
            g.add_edge(e.from, e.to, rng.random_range(1..=c_max))?;
        }
    }
    Ok(g)
}

pub fn write_dimacs<W: Write>(g: &FlowNetwork, mut out: W, comment: Option<&str>) -> std::io::Result<()> {
    if let Some(c) = comment {
        for line in c.lines() {
            writeln!(out, "c {line}")?;
        }
    }
    writeln!(out, "p max {} {}", g.node_count(), g.edge_count())?;
    writeln!(out, "n {} s", g.source() + 1)?;
    writeln!(out, "n {} t", g.sink() + 1)?;
    for e in g.edges() {
        writeln!(out, "a {} {} {}", e.from + 1, e.to + 1, e.capacity)?;
    }
    Ok(())
}

pub fn to_dimacs(g: &FlowNetwork) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf, None).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

pub fn parse_dimacs<R: BufRead>(input: R) -> Result<FlowNetwork, FlowError> {
    let mut header: Option<(usize, usize)> = None;
    let mut source = None;
    let mut sink = None;
    let mut arcs = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| FlowError::Io(e.to_string()))?;
        let err = |msg: String| FlowError::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(&kind) = fields.first() else { continue };
        let num = |s: &str| -> Result<u64, FlowError> {
            s.parse().map_err(|_| FlowError::Parse { line: line_no, msg: format!("invalid number `{s}`") })
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "max" {
                    return Err(err("expected `p max <nodes> <arcs>`".into()));
                }
                header = Some((num(fields[2])? as usize, num(fields[3])? as usize));
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| err("node line before problem line".into()))?;
                if fields.len() != 3 {
                    return Err(err("expected `n <id> s|t`".into()));
                }
                let id = num(fields[1])? as usize;
                if id == 0 || id > n {
                    return Err(err(format!("node {id} out of range 1..={n}")));
                }
                let slot = match fields[2] {
                    "s" => &mut source,
                    "t" => &mut sink,
                    other => return Err(err(format!("unknown node designator `{other}`"))),
                };
                if slot.is_some() {
                    return Err(err(format!("multiple `{}` nodes are not supported", fields[2])));
                }
                *slot = Some(id - 1);
            }
            "a" => {
                let (n, _) = header.ok_or_else(|| err("arc line before problem line".into()))?;
                if fields.len() != 4 {
                    return Err(err("expected `a <u> <v> <cap>`".into()));
                }
                let u = num(fields[1])? as usize;
                let v = num(fields[2])? as usize;
                if u == 0 || u > n || v == 0 || v > n {
                    return Err(err(format!("arc endpoint out of range 1..={n}")));
                }
                arcs.push((line_no, u - 1, v - 1, num(fields[3])?));
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or(FlowError::Parse { line: 0, msg: "missing problem line".into() })?;
    let s = source.ok_or(FlowError::Parse { line: 0, msg: "missing source".into() })?;
    let t = sink.ok_or(FlowError::Parse { line: 0, msg: "missing sink".into() })?;
    if arcs.len() != m {
        return Err(FlowError::Parse { line: 0, msg: format!("problem line declares {m} arcs, found {}", arcs.len()) });
    }
    let mut g = FlowNetwork::new(n, s, t)?;
    for (line, u, v, c) in arcs {
        g.add_edge(u, v, c).map_err(|e| FlowError::Parse { line, msg: e.to_string() })?;
    }
    Ok(g)
}

/// Named small graphs used throughout tests and docs.
pub mod examples {
    use super::FlowNetwork;

    /// `s -> a -> t` with capacities `c1`, `c2`. Nodes: s=0, a=1, t=2.
    pub fn chain(c1: u64, c2: u64) -> FlowNetwork {
        FlowNetwork::from_edges(3, 0, 2, &[(0, 1, c1), (1, 2, c2)]).unwrap()
    }

    /// A path of `len` edges from node 0 to node `len`, every capacity 1.
    pub fn long_chain(len: usize) -> FlowNetwork {
        let edges: Vec<_> = (0..len).map(|i| (i, i + 1, 1)).collect();
        FlowNetwork::from_edges(len + 1, 0, len, &edges).unwrap()
    }

    /// `s -> a, s -> b, a -> t, b -> t`, unit capacities. Nodes: s=0, a=1, b=2, t=3.
    pub fn diamond() -> FlowNetwork {
        FlowNetwork::from_edges(4, 0, 3, &[(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap()
    }

    /// Unit-capacity graph where a forward-only greedy search that picks
    /// `s -> a -> b -> t` first gets stuck at value 1, while the optimum is 2.
    /// Nodes: s=0, a=1, b=2, c=3, e=4, t=5.
    pub fn trap() -> FlowNetwork {
        FlowNetwork::from_edges(
            6,
            0,
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 5, 1), (0, 3, 1), (3, 2, 1), (1, 4, 1), (4, 5, 1)],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn ek_examples() {
        let single = FlowNetwork::from_edges(2, 0, 1, &[(0, 1, 7)]).unwrap();
        assert_eq!(edmonds_karp(&single).value, 7);
        assert_eq!(edmonds_karp(&diamond()).value, 2);
        assert_eq!(edmonds_karp(&trap()).value, 2);
        assert_eq!(edmonds_karp(&chain(3, 5)).value, 3);
    }

    #[test]
    fn ek_matches_min_cut() {
        for g in [diamond(), trap(), chain(3, 5), long_chain(4)] {
            let f = edmonds_karp(&g);
            validate_flow(&g, &f).unwrap();
            assert_eq!(min_cut(&g, &f).1, f.value);
        }
    }

    #[test]
    fn bfs_cases() {
        let single = FlowNetwork::from_edges(2, 0, 1, &[(0, 1, 1)]).unwrap();
        let mut f = FlowAssignment::zero(&single);
        assert_eq!(bfs_shortest_augmenting_path(&single, &f), Some(vec![ResidualArc { edge: 0, forward: true }]));
        f.flows[0] = 1;
        assert_eq!(bfs_shortest_augmenting_path(&single, &f), None);
    }

    #[test]
    fn trap_residual_path_uses_reverse_arc() {
        let g = trap();
        let mut f = FlowAssignment::zero(&g);
        for e in [0, 1, 2] {
            f.flows[e] = 1;
        }
        let path = bfs_shortest_augmenting_path(&g, &f).unwrap();
        let expected = vec![
            ResidualArc { edge: 3, forward: true },
            ResidualArc { edge: 4, forward: true },
            ResidualArc { edge: 1, forward: false },
            ResidualArc { edge: 5, forward: true },
            ResidualArc { edge: 6, forward: true },
        ];
        assert_eq!(path, expected);
    }

    #[test]
    fn validate_reports_violations() {
        let g = chain(3, 5);
        assert!(validate_flow(&g, &FlowAssignment::zero(&g)).is_ok());
        let over = FlowAssignment { flows: vec![4, 4], value: 4 };
        assert!(validate_flow(&g, &over).unwrap_err().contains(&Violation::Capacity { edge: 0, flow: 4, capacity: 3 }));
        let broken = FlowAssignment { flows: vec![2, 1], value: 2 };
        assert_eq!(
            validate_flow(&g, &broken).unwrap_err(),
            vec![Violation::Conservation { node: 1, inflow: 2, outflow: 1 }]
        );
    }

    #[test]
    fn network_invariants_enforced() {
        let mut g = FlowNetwork::new(3, 0, 2).unwrap();
        assert_eq!(g.add_edge(1, 1, 1), Err(FlowError::SelfLoop(1)));
        assert_eq!(g.add_edge(1, 0, 1), Err(FlowError::SourceIncoming(0)));
        assert_eq!(g.add_edge(2, 1, 1), Err(FlowError::SinkOutgoing(2)));
        assert!(matches!(g.add_edge(0, 5, 1), Err(FlowError::NodeOutOfRange { .. })));
        assert_eq!(FlowNetwork::new(2, 1, 1), Err(FlowError::SourceIsSink));
    }

    #[test]
    fn generator_small_cases() {
        let g = generate_random(2, 1, 10, 3).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!((g.edge(0).from, g.edge(0).to), (0, 1));
        let g = generate_random(3, 3, 10, 3).unwrap();
        let pairs: Vec<_> = g.edges().iter().map(|e| (e.from, e.to)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(generate_random(5, 3, 10, 0).is_err());
        assert!(generate_random(5, 11, 10, 0).is_err());
        assert!(generate_random(5, 7, 0, 0).is_err());
    }

    #[test]
    fn generator_properties() {
        for seed in 0..50 {
            for (n, m) in [(5, 7), (8, 11), (10, 45), (12, 11)] {
                let g = generate_random(n, m, 10, seed).unwrap();
                assert_eq!(g.edge_count(), m);
                assert_eq!((g.source(), g.sink()), (0, n - 1));
                assert!(g.is_weakly_connected());
                assert!(g.has_st_path());
                assert!(g.edges().iter().all(|e| e.from < e.to && (1..=10).contains(&e.capacity)));
            }
        }
        assert_eq!(generate_random(20, 28, 10, 9).unwrap(), generate_random(20, 28, 10, 9).unwrap());
    }

    #[test]
    fn dimacs_round_trip() {
        let g = generate_random(7, 9, 5, 1).unwrap();
        let text = to_dimacs(&g);
        assert_eq!(parse_dimacs(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn dimacs_rejects_bad_input() {
        let multi = "p max 3 1\nn 1 s\nn 2 s\nn 3 t\na 1 3 1\n";
        assert!(matches!(parse_dimacs(multi.as_bytes()), Err(FlowError::Parse { line: 3, .. })));
        let bad_arc = "p max 2 1\nn 1 s\nn 2 t\na 1 x 1\n";
        assert!(matches!(parse_dimacs(bad_arc.as_bytes()), Err(FlowError::Parse { line: 4, .. })));
        let count = "p max 2 2\nn 1 s\nn 2 t\na 1 2 1\n";
        assert!(parse_dimacs(count.as_bytes()).is_err());
        let into_source = "p max 3 1\nn 1 s\nn 3 t\na 2 1 1\n";
        assert!(matches!(parse_dimacs(into_source.as_bytes()), Err(FlowError::Parse { line: 4, .. })));
    }
}
