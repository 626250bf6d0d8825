//! Spiking Edmonds-Karp: the controller loop plus the capacity, search and
//! readout neuron families.
//!
//! Every arc `i` gets three neurons. `C_i` holds `K + f(i)` against a
//! threshold of `c(i) + K`, so a saturated arc fires at `t = 0` and its
//! delay-0 inhibition silences `H_i` and `R_i` for the whole query. The
//! transmitter `T` starts a wave backwards through the `H` family from the
//! sink; each `H` on a source arc bridges into the `R` family, whose wave
//! runs forward again. A sink-arc readout fires at `t = 2L` for a shortest
//! path of `L` arcs.
//!
//! In residual mode every edge `i` also has a reverse arc `|E| + i` whose
//! capacity neuron holds `K + c(i) - f(i)`, i.e. its remaining capacity is
//! the flow on `i`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{FlowAssignment, FlowNetwork, NodeId, ResidualArc};
use crate::oracle::{ConsultMode, Consultation, Machine, OpKind, OracleError, OutputTape, ResourceReport};
use crate::snn::{Leak, Neuron, NeuronId, Role, StopCondition};

/// Working-memory layout of the controller.
mod slot {
    pub const I: usize = 0;
    pub const J: usize = 1;
    pub const CUR_ARC: usize = 2;
    pub const CUR_TIME: usize = 3;
    pub const MIN_CAP: usize = 4;
    pub const SCRATCH: usize = 5;
    pub const MAX_FLOW: usize = 6;
    pub const EPISODE: usize = 7;
}

pub const DEFAULT_WM_CAPACITY: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MaxflowError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("construction bug: {0}")]
    ConstructionBug(String),
    #[error("flow update would push arc {arc} past its capacity")]
    OverCapacity { arc: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    PaperFaithful,
    Residual,
}

/// Neuron ids of the construction. `T = 0`, then the `C`, `H` and `R`
/// families in arc order, so same-time readout spikes are ordered by arc id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeNeuronMap {
    pub edges: usize,
    pub arcs: usize,
    pub k: i64,
    pub mode: Mode,
}

impl EdgeNeuronMap {
    pub fn new(g: &FlowNetwork, mode: Mode) -> Self {
        let edges = g.edge_count();
        let arcs = match mode {
            Mode::PaperFaithful => edges,
            Mode::Residual => 2 * edges,
        };
        EdgeNeuronMap { edges, arcs, k: arcs as i64 + 1, mode }
    }

    pub fn transmitter(&self) -> NeuronId {
        NeuronId(0)
    }

    pub fn capacity(&self, arc: usize) -> NeuronId {
        NeuronId(1 + arc as u32)
    }

    pub fn search(&self, arc: usize) -> NeuronId {
        NeuronId((1 + self.arcs + arc) as u32)
    }

    pub fn readout(&self, arc: usize) -> NeuronId {
        NeuronId((1 + 2 * self.arcs + arc) as u32)
    }

    pub fn arc_of_readout(&self, id: NeuronId) -> Option<usize> {
        let base = 1 + 2 * self.arcs;
        let i = id.0 as usize;
        (base..base + self.arcs).contains(&i).then(|| i - base)
    }

    pub fn is_search_or_readout(&self, id: NeuronId) -> bool {
        let i = id.0 as usize;
        i > self.arcs && i <= 3 * self.arcs
    }

    pub fn residual_arc(&self, arc: usize) -> ResidualArc {
        if arc < self.edges {
            ResidualArc { edge: arc, forward: true }
        } else {
            ResidualArc { edge: arc - self.edges, forward: false }
        }
    }

    fn ends(&self, g: &FlowNetwork, arc: usize) -> (NodeId, NodeId) {
        let a = self.residual_arc(arc);
        (a.tail(g), a.head(g))
    }

    pub fn sink_readouts(&self, g: &FlowNetwork) -> Vec<NeuronId> {
        (0..self.arcs).filter(|&i| self.ends(g, i).1 == g.sink()).map(|i| self.readout(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    /// Arcs from source to sink.
    pub arcs: Vec<ResidualArc>,
    pub min_cap: u64,
}

impl PathRecord {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Instrumentation for one search query, taken from the oracle trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpisodeStats {
    pub timesteps: u64,
    pub spikes: u64,
    /// Largest spike count of any single search or readout neuron.
    pub max_hr_spikes: u32,
    pub sink_time: Option<u64>,
    pub path_len: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub value: u64,
    pub flow: FlowAssignment,
    /// Search queries issued, including the final one that finds no path.
    pub episodes: usize,
    pub paths: Vec<PathRecord>,
    pub report: ResourceReport,
    /// Sum of all capacity-neuron potentials, offsets included.
    pub c_voltage_sum: i64,
    pub episode_stats: Vec<EpisodeStats>,
    pub map: EdgeNeuronMap,
}

impl SolveOutcome {
    pub fn augmentations(&self) -> usize {
        self.paths.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value": self.value,
            "flows": self.flow.flows.iter().enumerate().map(|(e, f)| [e as u64, *f]).collect::<Vec<_>>(),
            "episodes": self.episodes,
            "report": self.report,
            "c_voltage_sum": self.c_voltage_sum,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: Mode,
    pub wm_capacity: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { mode: Mode::PaperFaithful, wm_capacity: DEFAULT_WM_CAPACITY }
    }
}

fn loop_var(m: &mut Machine, addr: usize, value: usize) -> Result<(), MaxflowError> {
    m.wm_write(addr, value as i64)?;
    m.meter(OpKind::Compare);
    Ok(())
}

fn input_ends(m: &mut Machine, map: &EdgeNeuronMap, g: &FlowNetwork, arc: usize) -> (NodeId, NodeId) {
    m.meter_n(OpKind::InputRead, 2);
    map.ends(g, arc)
}

/// Writes the transmitter and one capacity neuron per arc into the oracle.
pub fn build_capacity_neurons(m: &mut Machine, g: &FlowNetwork, mode: Mode) -> Result<EdgeNeuronMap, MaxflowError> {
    let map = EdgeNeuronMap::new(g, mode);
    let k = map.k;
    m.add_neuron(Neuron::new(0, 1, 0, Leak::ONE, 1, Role::Transmitter))?;
    for arc in 0..map.arcs {
        loop_var(m, slot::I, arc)?;
        m.meter(OpKind::InputRead);
        let e = map.residual_arc(arc);
        let c = g.edge(e.edge).capacity as i64;
        let v0 = if e.forward { k } else { k + c };
        m.add_neuron(Neuron {
            id: map.capacity(arc),
            threshold: c + k,
            reset: 0,
            leak: Leak::ONE,
            v0,
            role: Role::Capacity,
        })?;
    }
    Ok(map)
}

/// Writes the search and readout families and all their synapses.
pub fn build_search_network(m: &mut Machine, g: &FlowNetwork, map: &EdgeNeuronMap) -> Result<(), MaxflowError> {
    let k = map.k;
    let (s, t) = (g.source(), g.sink());
    for arc in 0..map.arcs {
        loop_var(m, slot::I, arc)?;
        m.add_neuron(Neuron { id: map.search(arc), threshold: k + 1, reset: 0, leak: Leak::ONE, v0: k, role: Role::Standard })?;
    }
    for arc in 0..map.arcs {
        loop_var(m, slot::I, arc)?;
        m.add_neuron(Neuron { id: map.readout(arc), threshold: k + 1, reset: 0, leak: Leak::ONE, v0: k, role: Role::Readout })?;
    }
    for i in 0..map.arcs {
        loop_var(m, slot::I, i)?;
        let (tail, head) = input_ends(m, map, g, i);
        m.add_synapse(map.capacity(i), map.search(i), 0, -k)?;
        m.add_synapse(map.capacity(i), map.readout(i), 0, -k)?;
        m.meter_n(OpKind::Compare, 2);
        if head == t {
            m.add_synapse(map.transmitter(), map.search(i), 1, 1)?;
        }
        if tail == s {
            m.add_synapse(map.search(i), map.readout(i), 1, 1)?;
        }
        for j in 0..map.arcs {
            loop_var(m, slot::J, j)?;
            let (tail_j, _) = input_ends(m, map, g, j);
            m.meter(OpKind::Compare);
            if head == tail_j {
                m.add_synapse(map.search(j), map.search(i), 1, 1)?;
                m.add_synapse(map.readout(i), map.readout(j), 1, 1)?;
            }
        }
    }
    Ok(())
}

/// Runs one query until a sink-arc readout fires or `2A + 1` steps pass.
pub fn run_search_query(m: &mut Machine, g: &FlowNetwork, map: &EdgeNeuronMap) -> Result<Consultation, MaxflowError> {
    let sinks = map.sink_readouts(g);
    m.meter_n(OpKind::Communicate, sinks.len() as u64);
    let limit = 2 * map.arcs as u64 + 1;
    Ok(m.consult(ConsultMode::Transducer, limit, &StopCondition::AnyFired(sinks))?)
}

/// Walks the tape backwards from the first sink-arc readout, calling
/// `visit` on each arc from sink to source. The walk keeps only the current
/// arc and its spike time in working memory: each predecessor is the first
/// event one step earlier whose arc ends where the current arc starts.
fn walk_back(
    m: &mut Machine,
    tape: &mut OutputTape,
    g: &FlowNetwork,
    map: &EdgeNeuronMap,
    mut visit: impl FnMut(&mut Machine, usize) -> Result<(), MaxflowError>,
) -> Result<bool, MaxflowError> {
    tape.rewind();
    let mut found = false;
    while !tape.end() {
        let ev = m.read_tape(tape)?;
        let arc = map.arc_of_readout(ev.neuron).ok_or_else(|| MaxflowError::ConstructionBug(format!("non-readout event {ev:?}")))?;
        let (_, head) = input_ends(m, map, g, arc);
        m.meter(OpKind::Compare);
        if head == g.sink() {
            m.wm_write(slot::CUR_ARC, arc as i64)?;
            m.wm_write(slot::CUR_TIME, ev.time as i64)?;
            found = true;
            break;
        }
    }
    if !found {
        return Ok(false);
    }
    loop {
        let cur = m.wm_read(slot::CUR_ARC)? as usize;
        visit(m, cur)?;
        let (tail, _) = input_ends(m, map, g, cur);
        m.meter(OpKind::Compare);
        if tail == g.source() {
            return Ok(true);
        }
        let want = m.wm_read(slot::CUR_TIME)? - 1;
        tape.rewind();
        let mut next = None;
        while !tape.end() {
            let ev = m.read_tape(tape)?;
            m.meter(OpKind::Compare);
            if ev.time as i64 > want {
                break;
            }
            if ev.time as i64 != want {
                continue;
            }
            let arc = map.arc_of_readout(ev.neuron).expect("tape holds readouts only");
            let (_, head) = input_ends(m, map, g, arc);
            m.meter(OpKind::Compare);
            if head == tail {
                next = Some(arc);
                break;
            }
        }
        let Some(arc) = next else {
            return Err(MaxflowError::ConstructionBug(format!("readout of arc {cur} has no predecessor spike")));
        };
        m.wm_write(slot::CUR_ARC, arc as i64)?;
        m.wm_write(slot::CUR_TIME, want)?;
    }
}

fn remaining(m: &mut Machine, map: &EdgeNeuronMap, arc: usize) -> Result<i64, MaxflowError> {
    let c = map.capacity(arc);
    Ok(m.threshold(c)? - m.voltage(c)?)
}

/// Decodes the augmenting path on `tape`, or `None` if no sink-arc readout
/// fired. `min_cap` is the smallest remaining capacity along the path, read
/// from the capacity neurons.
pub fn decode_path(
    m: &mut Machine,
    tape: &mut OutputTape,
    g: &FlowNetwork,
    map: &EdgeNeuronMap,
) -> Result<Option<PathRecord>, MaxflowError> {
    m.wm_write(slot::MIN_CAP, i64::MAX)?;
    let mut arcs = Vec::new();
    let found = walk_back(m, tape, g, map, |m, arc| {
        arcs.push(map.residual_arc(arc));
        let r = remaining(m, map, arc)?;
        m.wm_write(slot::SCRATCH, r)?;
        m.meter(OpKind::Compare);
        if r < m.wm_read(slot::MIN_CAP)? {
            m.wm_write(slot::MIN_CAP, r)?;
        }
        Ok(())
    })?;
    if !found {
        return Ok(None);
    }
    let min_cap = m.wm_read(slot::MIN_CAP)?;
    if min_cap < 1 {
        return Err(MaxflowError::ConstructionBug(format!("decoded path has min_cap {min_cap}")));
    }
    arcs.reverse();
    Ok(Some(PathRecord { arcs, min_cap: min_cap as u64 }))
}

fn push_arc(m: &mut Machine, map: &EdgeNeuronMap, arc: usize, amount: i64) -> Result<(), MaxflowError> {
    let c = map.capacity(arc);
    let v = m.write_voltage(c, amount)?;
    if v > m.threshold(c)? {
        return Err(MaxflowError::OverCapacity { arc });
    }
    if map.mode == Mode::Residual {
        let twin = if arc < map.edges { arc + map.edges } else { arc - map.edges };
        m.write_voltage(map.capacity(twin), -amount)?;
    }
    Ok(())
}

/// Adds `min_cap` to the capacity neuron of every arc on the path.
pub fn apply_flow_update(m: &mut Machine, path: &PathRecord, map: &EdgeNeuronMap) -> Result<(), MaxflowError> {
    if path.min_cap == 0 {
        return Err(MaxflowError::ConstructionBug("zero-capacity augmentation".into()));
    }
    for a in &path.arcs {
        let arc = if a.forward { a.edge } else { a.edge + map.edges };
        push_arc(m, map, arc, path.min_cap as i64)?;
    }
    Ok(())
}

/// Per-edge flows `V(C_e) - K`, the net source outflow, and the plain sum of
/// all forward capacity-neuron potentials.
pub fn read_max_flow(m: &mut Machine, g: &FlowNetwork, map: &EdgeNeuronMap) -> Result<(FlowAssignment, i64), MaxflowError> {
    let mut flows = Vec::with_capacity(map.edges);
    let mut literal = 0;
    m.wm_write(slot::MAX_FLOW, 0)?;
    for e in 0..map.edges {
        loop_var(m, slot::I, e)?;
        let v = m.voltage(map.capacity(e))?;
        literal += v;
        flows.push((v - map.k) as u64);
        m.meter(OpKind::InputRead);
        m.meter(OpKind::Compare);
        if g.edge(e).from == g.source() {
            let acc = m.wm_read(slot::MAX_FLOW)?;
            m.wm_write(slot::MAX_FLOW, acc + v - map.k)?;
        }
    }
    let value = m.wm_read(slot::MAX_FLOW)? as u64;
    Ok((FlowAssignment { flows, value }, literal))
}

fn episode_stats(c: &Consultation, map: &EdgeNeuronMap, g: &FlowNetwork, path: Option<&PathRecord>) -> EpisodeStats {
    let counts = c.state.spike_counts();
    let max_hr_spikes =
        counts.iter().filter(|(id, _)| map.is_search_or_readout(**id)).map(|(_, n)| *n).max().unwrap_or(0);
    let sinks = map.sink_readouts(g);
    let sink_time = c.tape.events().iter().find(|ev| sinks.contains(&ev.neuron)).map(|ev| ev.time);
    EpisodeStats {
        timesteps: c.record.timesteps,
        spikes: c.record.energy,
        max_hr_spikes,
        sink_time,
        path_len: path.map(PathRecord::len),
    }
}

pub fn solve(g: &FlowNetwork, mode: Mode) -> Result<SolveOutcome, MaxflowError> {
    solve_with(g, &SolveOptions { mode, ..SolveOptions::default() })
}

pub fn solve_with(g: &FlowNetwork, opts: &SolveOptions) -> Result<SolveOutcome, MaxflowError> {
    let mut m = Machine::new(opts.wm_capacity);
    let map = build_capacity_neurons(&mut m, g, opts.mode)?;
    build_search_network(&mut m, g, &map)?;
    let mut paths = Vec::new();
    let mut stats = Vec::new();
    m.wm_write(slot::EPISODE, 0)?;
    loop {
        let episode = m.wm_read(slot::EPISODE)?;
        m.wm_write(slot::EPISODE, episode + 1)?;
        let mut c = run_search_query(&mut m, g, &map)?;
        let mut tape = c.tape.clone();
        let path = decode_path(&mut m, &mut tape, g, &map)?;
        stats.push(episode_stats(&c, &map, g, path.as_ref()));
        let Some(path) = path else { break };
        let amount = m.wm_read(slot::MIN_CAP)?;
        walk_back(&mut m, &mut c.tape, g, &map, |m, arc| push_arc(m, &map, arc, amount))?;
        paths.push(path);
    }
    let episodes = m.wm_read(slot::EPISODE)? as usize;
    let (flow, c_voltage_sum) = read_max_flow(&mut m, g, &map)?;
    let (_, report) = m.into_parts();
    Ok(SolveOutcome { value: flow.value, flow, episodes, paths, report, c_voltage_sum, episode_stats: stats, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::examples::*;
    use crate::flow::{edmonds_karp, validate_flow};
    use crate::snn::SpikeEvent;

    fn built(g: &FlowNetwork, mode: Mode) -> (Machine, EdgeNeuronMap) {
        let mut m = Machine::new(DEFAULT_WM_CAPACITY);
        let map = build_capacity_neurons(&mut m, g, mode).unwrap();
        build_search_network(&mut m, g, &map).unwrap();
        (m, map)
    }

    #[test]
    fn capacity_neuron_parameters() {
        let g = FlowNetwork::from_edges(5, 0, 4, &[(0, 1, 3), (1, 2, 1), (2, 3, 1), (3, 4, 1)]).unwrap();
        let mut m = Machine::new(8);
        let map = build_capacity_neurons(&mut m, &g, Mode::PaperFaithful).unwrap();
        let c = m.network().neuron(map.capacity(0)).unwrap().clone();
        assert_eq!((c.threshold, c.v0), (8, 5));
        m.write_voltage(map.capacity(0), 3).unwrap();
        assert_eq!(m.network().neuron(map.capacity(0)).unwrap().v0, 8);

        let single = FlowNetwork::from_edges(2, 0, 1, &[(0, 1, 1)]).unwrap();
        let mut m = Machine::new(8);
        let map = build_capacity_neurons(&mut m, &single, Mode::PaperFaithful).unwrap();
        let c = m.network().neuron(map.capacity(0)).unwrap().clone();
        assert_eq!((c.threshold, c.v0), (3, 2));
    }

    #[test]
    fn chain_search_network_wiring() {
        let g = chain(3, 5);
        let (m, map) = built(&g, Mode::PaperFaithful);
        assert_eq!(map.k, 3);
        let net = m.network();
        assert_eq!(net.neuron(map.search(0)).unwrap().threshold, 4);
        let has = |pre: NeuronId, post: NeuronId, d: u32, w: i64| {
            net.synapses().iter().any(|s| s.pre == pre && s.post == post && s.delay == d && s.weight == w)
        };
        assert!(has(map.search(1), map.search(0), 1, 1));
        assert!(has(map.transmitter(), map.search(1), 1, 1));
        assert!(has(map.readout(0), map.readout(1), 1, 1));
        assert!(has(map.search(0), map.readout(0), 1, 1));
        assert!(has(map.capacity(0), map.search(0), 0, -3));
        assert!(has(map.capacity(1), map.readout(1), 0, -3));
    }

    #[test]
    fn chain_query_tape_and_energy() {
        let g = chain(3, 5);
        let (mut m, map) = built(&g, Mode::PaperFaithful);
        let c = run_search_query(&mut m, &g, &map).unwrap();
        assert_eq!(
            c.tape.events(),
            &[SpikeEvent { time: 3, neuron: map.readout(0) }, SpikeEvent { time: 4, neuron: map.readout(1) }]
        );
        assert_eq!(c.state.t, 5);
        assert_eq!(c.record.energy, 5);
        let mut tape = c.tape.clone();
        let path = decode_path(&mut m, &mut tape, &g, &map).unwrap().unwrap();
        assert_eq!(path.min_cap, 3);
        assert_eq!(path.arcs.iter().map(|a| a.edge).collect::<Vec<_>>(), vec![0, 1]);
        apply_flow_update(&mut m, &path, &map).unwrap();
        assert_eq!(m.network().neuron(map.capacity(0)).unwrap().v0, 6);
        assert_eq!(m.network().neuron(map.capacity(1)).unwrap().v0, 6);
        let c = run_search_query(&mut m, &g, &map).unwrap();
        assert!(c.tape.is_empty());
        assert_eq!(c.record.timesteps, 5);
    }

    #[test]
    fn saturated_single_edge_times_out() {
        let g = FlowNetwork::from_edges(2, 0, 1, &[(0, 1, 0)]).unwrap();
        let (mut m, map) = built(&g, Mode::PaperFaithful);
        let c = run_search_query(&mut m, &g, &map).unwrap();
        assert!(c.tape.is_empty());
        assert_eq!(c.record.timesteps, 3);
        let fired: Vec<_> = c.state.trace.iter().map(|e| e.neuron).collect();
        assert_eq!(fired, vec![map.transmitter(), map.capacity(0)]);
    }

    #[test]
    fn diamond_tie_breaks_to_lower_branch() {
        let g = diamond();
        let (mut m, map) = built(&g, Mode::PaperFaithful);
        let c = run_search_query(&mut m, &g, &map).unwrap();
        let times = |id| c.state.trace.iter().find(|e| e.neuron == id).map(|e| e.time);
        assert_eq!(times(map.search(2)), Some(1));
        assert_eq!(times(map.search(3)), Some(1));
        assert_eq!(c.tape.len(), 4);
        let mut tape = c.tape.clone();
        let path = decode_path(&mut m, &mut tape, &g, &map).unwrap().unwrap();
        assert_eq!(path.arcs.iter().map(|a| a.edge).collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn empty_tape_decodes_to_none() {
        let g = chain(1, 1);
        let (mut m, map) = built(&g, Mode::PaperFaithful);
        let mut tape = OutputTape::default();
        assert_eq!(decode_path(&mut m, &mut tape, &g, &map).unwrap(), None);
    }

    #[test]
    fn solve_examples() {
        let out = solve(&chain(3, 5), Mode::PaperFaithful).unwrap();
        assert_eq!((out.value, out.episodes), (3, 2));
        assert_eq!(out.flow.flows, vec![3, 3]);
        assert_eq!(out.c_voltage_sum, 12);
        assert!((20..=200).contains(&out.report.controller_time), "{}", out.report.controller_time);

        for mode in [Mode::PaperFaithful, Mode::Residual] {
            assert_eq!(solve(&diamond(), mode).unwrap().value, 2);
        }
        let untouched = FlowNetwork::from_edges(3, 0, 2, &[(0, 1, 4)]).unwrap();
        assert_eq!(solve(&untouched, Mode::PaperFaithful).unwrap().value, 0);
    }

    #[test]
    fn trap_separates_the_modes() {
        let g = trap();
        let faithful = solve(&g, Mode::PaperFaithful).unwrap();
        assert_eq!(faithful.value, 1);
        validate_flow(&g, &faithful.flow).unwrap();
        let residual = solve(&g, Mode::Residual).unwrap();
        assert_eq!(residual.value, edmonds_karp(&g).value);
        validate_flow(&g, &residual.flow).unwrap();
        assert!(residual.paths.iter().any(|p| p.arcs.iter().any(|a| !a.forward)));
    }

    #[test]
    fn memory_peak_is_fixed() {
        let g = trap();
        let a = solve_with(&g, &SolveOptions { mode: Mode::Residual, wm_capacity: 8 }).unwrap();
        let b = solve_with(&g, &SolveOptions { mode: Mode::Residual, wm_capacity: 16 }).unwrap();
        assert_eq!(a.report.controller_wm_peak, 8);
        assert_eq!(a.report.controller_wm_peak, b.report.controller_wm_peak);
        assert!(matches!(
            solve_with(&g, &SolveOptions { mode: Mode::Residual, wm_capacity: 7 }),
            Err(MaxflowError::Oracle(OracleError::WorkingMemoryExceeded { .. }))
        ));
    }

    #[test]
    fn json_schema() {
        let v = solve(&chain(3, 5), Mode::Residual).unwrap().to_json();
        for key in ["value", "flows", "episodes", "report", "c_voltage_sum"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["flows"][1], serde_json::json!([1, 3]));
    }
}
