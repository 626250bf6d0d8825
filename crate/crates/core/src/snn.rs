//! Discrete-time leaky integrate-and-fire engine.
//!
//! Potentials, weights and thresholds are exact integers. A neuron `y` at step
//! `t` integrates `V = leak * V_prev + sum(w)` over every spike emitted at
//! `t - d` across a delay-`d` synapse. Within one step the order is:
//!
//! 1. scheduled neurons fire,
//! 2. leak and delayed arrivals are applied,
//! 3. threshold check (firing neurons are reset),
//! 4. delay-0 synapses of this step's spikes are delivered and thresholds are
//!    re-checked until no new neuron fires,
//! 5. every potential is clamped at zero.
//!
//! A neuron fires at most once per step. Neurons whose initial potential is
//! already at threshold fire at `t = 0`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SnnError {
    #[error("unknown neuron {0}")]
    UnknownNeuron(NeuronId),
    #[error("duplicate neuron id {0}")]
    DuplicateNeuron(NeuronId),
    #[error("neuron {id}: {reason}")]
    InvalidNeuron { id: NeuronId, reason: String },
    #[error("potential of neuron {id} would become negative ({value})")]
    NegativePotential { id: NeuronId, value: i64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is not `PartialEq`; keep the message only.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for SnnError {
    fn from(e: std::io::Error) -> Self {
        SnnError::Io(IoError(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NeuronId(pub u32);

impl fmt::Display for NeuronId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Standard,
    Readout,
    Scheduled,
    Input,
    Accept,
    Reject,
    Transmitter,
    Capacity,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Standard => "standard",
            Role::Readout => "readout",
            Role::Scheduled => "scheduled",
            Role::Input => "input",
            Role::Accept => "accept",
            Role::Reject => "reject",
            Role::Transmitter => "transmitter",
            Role::Capacity => "capacity",
        }
    }

    /// Roles whose spikes are written to the oracle output tape.
    pub fn is_output(self) -> bool {
        matches!(self, Role::Readout | Role::Accept | Role::Reject)
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "standard" => Role::Standard,
            "readout" => Role::Readout,
            "scheduled" => Role::Scheduled,
            "input" => Role::Input,
            "accept" => Role::Accept,
            "reject" => Role::Reject,
            "transmitter" => Role::Transmitter,
            "capacity" => Role::Capacity,
            other => return Err(format!("unknown role `{other}`")),
        })
    }
}

/// Multiplicative leak `num / den`, applied with floor rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leak {
    pub num: u32,
    pub den: u32,
}

impl Leak {
    pub const ZERO: Leak = Leak { num: 0, den: 1 };
    pub const ONE: Leak = Leak { num: 1, den: 1 };

    pub fn new(num: u32, den: u32) -> Option<Leak> {
        (den != 0).then_some(Leak { num, den })
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    pub fn apply(self, v: i64) -> i64 {
        if self.is_one() {
            v
        } else if self.num == 0 {
            0
        } else {
            (v as i128 * self.num as i128).div_euclid(self.den as i128) as i64
        }
    }
}

impl fmt::Display for Leak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Leak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid leak `{s}`");
        match s.split_once('/') {
            Some((n, d)) => {
                let num = n.parse().map_err(|_| bad())?;
                let den = d.parse().map_err(|_| bad())?;
                Leak::new(num, den).ok_or_else(bad)
            }
            None => Ok(Leak { num: s.parse().map_err(|_| bad())?, den: 1 }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neuron {
    pub id: NeuronId,
    pub threshold: i64,
    pub reset: i64,
    pub leak: Leak,
    pub v0: i64,
    pub role: Role,
}

impl Neuron {
    pub fn new(id: u32, threshold: i64, reset: i64, leak: Leak, v0: i64, role: Role) -> Self {
        Neuron { id: NeuronId(id), threshold, reset, leak, v0, role }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synapse {
    pub pre: NeuronId,
    pub post: NeuronId,
    pub delay: u32,
    pub weight: i64,
}

/// What happens to the potential of a neuron that fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ResetMode {
    /// Potential is set to the neuron's reset value.
    #[default]
    Fixed,
    /// Threshold is subtracted and the overflow is kept.
    Overflow,
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    post: usize,
    delay: u32,
    weight: i64,
}

#[derive(Debug, Clone, Default)]
pub struct SpikingNetwork {
    neurons: Vec<Neuron>,
    synapses: Vec<Synapse>,
    schedule: Vec<(NeuronId, u64)>,
    reset_mode: ResetMode,
    index: HashMap<NeuronId, usize>,
    fanout: Vec<Vec<Edge>>,
    scheduled_at: BTreeMap<u64, Vec<usize>>,
}

impl SpikingNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_reset_mode(mut self, mode: ResetMode) -> Self {
        self.reset_mode = mode;
        self
    }

    pub fn set_reset_mode(&mut self, mode: ResetMode) {
        self.reset_mode = mode;
    }

    pub fn reset_mode(&self) -> ResetMode {
        self.reset_mode
    }

    pub fn add_neuron(&mut self, neuron: Neuron) -> Result<NeuronId, SnnError> {
        let id = neuron.id;
        if self.index.contains_key(&id) {
            return Err(SnnError::DuplicateNeuron(id));
        }
        if neuron.v0 < 0 {
            return Err(SnnError::InvalidNeuron { id, reason: "negative initial potential".into() });
        }
        self.index.insert(id, self.neurons.len());
        self.neurons.push(neuron);
        self.fanout.push(Vec::new());
        Ok(id)
    }

    pub fn add_synapse(&mut self, synapse: Synapse) -> Result<(), SnnError> {
        let pre = self.idx(synapse.pre)?;
        let post = self.idx(synapse.post)?;
        self.fanout[pre].push(Edge { post, delay: synapse.delay, weight: synapse.weight });
        self.synapses.push(synapse);
        Ok(())
    }

    pub fn connect(&mut self, pre: NeuronId, post: NeuronId, delay: u32, weight: i64) -> Result<(), SnnError> {
        self.add_synapse(Synapse { pre, post, delay, weight })
    }

    /// Forces `id` to fire at `time` regardless of its potential.
    pub fn schedule(&mut self, id: NeuronId, time: u64) -> Result<(), SnnError> {
        let idx = self.idx(id)?;
        self.schedule.push((id, time));
        let slot = self.scheduled_at.entry(time).or_default();
        if !slot.contains(&idx) {
            slot.push(idx);
        }
        Ok(())
    }

    pub fn neurons(&self) -> &[Neuron] {
        &self.neurons
    }

    pub fn synapses(&self) -> &[Synapse] {
        &self.synapses
    }

    pub fn schedule_entries(&self) -> &[(NeuronId, u64)] {
        &self.schedule
    }

    pub fn neuron(&self, id: NeuronId) -> Result<&Neuron, SnnError> {
        Ok(&self.neurons[self.idx(id)?])
    }

    pub fn contains(&self, id: NeuronId) -> bool {
        self.index.contains_key(&id)
    }

    /// Neurons plus synapses.
    pub fn size(&self) -> usize {
        self.neurons.len() + self.synapses.len()
    }

    fn idx(&self, id: NeuronId) -> Result<usize, SnnError> {
        self.index.get(&id).copied().ok_or(SnnError::UnknownNeuron(id))
    }

    /// Additive write to a neuron's stored initial potential. This is what a
    /// controller does between consultations: every later simulation starts
    /// from the updated value.
    pub fn add_initial_potential(&mut self, id: NeuronId, delta: i64) -> Result<i64, SnnError> {
        let idx = self.idx(id)?;
        let value = self.neurons[idx].v0 + delta;
        if value < 0 {
            return Err(SnnError::NegativePotential { id, value });
        }
        self.neurons[idx].v0 = value;
        Ok(value)
    }

    pub fn initial_state(&self) -> SimulationState {
        SimulationState {
            t: 0,
            potentials: self.neurons.iter().map(|n| n.v0).collect(),
            pending: BTreeMap::new(),
            trace: Vec::new(),
            ids: self.neurons.iter().map(|n| n.id).collect(),
            recheck: Vec::new(),
        }
    }

    /// Advances `state` by one timestep and returns the neurons that fired,
    /// in ascending id order.
    pub fn step(&self, state: &mut SimulationState) -> Vec<NeuronId> {
        let t = state.t;
        let n = self.neurons.len();
        let mut fired = vec![false; n];
        let mut fired_list: Vec<usize> = Vec::new();

        // (1) scheduled neurons
        if let Some(idxs) = self.scheduled_at.get(&t) {
            for &i in idxs {
                if !fired[i] {
                    fired[i] = true;
                    fired_list.push(i);
                }
            }
        }

        // (2) leak and arrivals; collect the neurons worth a threshold check
        let mut touched: Vec<usize> = std::mem::take(&mut state.recheck);
        if t == 0 {
            touched.extend(0..n);
        } else {
            for (i, neuron) in self.neurons.iter().enumerate() {
                if !neuron.leak.is_one() {
                    state.potentials[i] = neuron.leak.apply(state.potentials[i]);
                    touched.push(i);
                }
            }
        }
        if let Some(arrivals) = state.pending.remove(&t) {
            for (i, w) in arrivals {
                state.potentials[i] += w;
                touched.push(i);
            }
        }

        // (3) threshold check
        let mut round: Vec<usize> = Vec::new();
        for &i in &touched {
            if !fired[i] && state.potentials[i] >= self.neurons[i].threshold {
                fired[i] = true;
                fired_list.push(i);
            }
        }
        for &i in &fired_list {
            self.reset(state, i);
            round.push(i);
        }

        // (4) delay-0 propagation until quiescent
        while !round.is_empty() {
            let mut next = Vec::new();
            let mut hit = Vec::new();
            for &i in &round {
                for e in self.fanout[i].iter().filter(|e| e.delay == 0) {
                    state.potentials[e.post] += e.weight;
                    hit.push(e.post);
                }
            }
            for j in hit {
                if !fired[j] && state.potentials[j] >= self.neurons[j].threshold {
                    fired[j] = true;
                    fired_list.push(j);
                    self.reset(state, j);
                    next.push(j);
                }
            }
            round = next;
        }

        // delayed deliveries
        for &i in &fired_list {
            for e in self.fanout[i].iter().filter(|e| e.delay > 0) {
                state.pending.entry(t + e.delay as u64).or_default().push((e.post, e.weight));
            }
        }

        // (5) clamp; neurons left at or above threshold get checked next step
        for (i, v) in state.potentials.iter_mut().enumerate() {
            if *v < 0 {
                *v = 0;
            }
            if *v >= self.neurons[i].threshold && (fired[i] || self.neurons[i].threshold <= 0) {
                state.recheck.push(i);
            }
        }

        fired_list.sort_unstable_by_key(|&i| self.neurons[i].id);
        let ids: Vec<NeuronId> = fired_list.iter().map(|&i| self.neurons[i].id).collect();
        state.trace.extend(ids.iter().map(|&neuron| SpikeEvent { time: t, neuron }));
        state.t += 1;
        ids
    }

    fn reset(&self, state: &mut SimulationState, i: usize) {
        let neuron = &self.neurons[i];
        state.potentials[i] = match self.reset_mode {
            ResetMode::Fixed => neuron.reset,
            ResetMode::Overflow => state.potentials[i] - neuron.threshold,
        };
    }

    /// Runs from the initial state until the stop condition holds or
    /// `max_steps` steps have been simulated.
    pub fn run(&self, max_steps: u64, stop: &StopCondition) -> SimulationState {
        let mut state = self.initial_state();
        self.run_from(&mut state, max_steps, stop);
        state
    }

    /// Continues `state`; returns the time of the step that satisfied an
    /// `AnyFired` condition, if any.
    pub fn run_from(&self, state: &mut SimulationState, max_steps: u64, stop: &StopCondition) -> Option<u64> {
        let limit = match stop {
            StopCondition::StepCount(n) => (*n).min(max_steps),
            StopCondition::AnyFired(_) => max_steps,
        };
        let watch: Option<HashSet<usize>> = match stop {
            StopCondition::AnyFired(ids) => Some(ids.iter().filter_map(|id| self.index.get(id).copied()).collect()),
            StopCondition::StepCount(_) => None,
        };
        let start = state.t;
        while state.t - start < limit {
            let t = state.t;
            let fired = self.step(state);
            if let Some(w) = &watch {
                if fired.iter().any(|id| w.contains(&self.index[id])) {
                    return Some(t);
                }
            }
        }
        None
    }

    pub fn write_netlist<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# N <id> <threshold> <reset> <leak> <v0> <role>")?;
        for n in &self.neurons {
            writeln!(out, "N {} {} {} {} {} {}", n.id, n.threshold, n.reset, n.leak, n.v0, n.role.as_str())?;
        }
        for s in &self.synapses {
            writeln!(out, "S {} {} {} {}", s.pre, s.post, s.delay, s.weight)?;
        }
        for (id, time) in &self.schedule {
            writeln!(out, "SCHED {id} {time}")?;
        }
        Ok(())
    }

    pub fn to_netlist(&self) -> String {
        let mut buf = Vec::new();
        self.write_netlist(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("netlist is ASCII")
    }

    pub fn parse_netlist<R: BufRead>(input: R) -> Result<Self, SnnError> {
        let mut net = SpikingNetwork::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = lineno + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            let err = |msg: String| SnnError::Parse { line: lineno, msg };
            fn num<T: FromStr>(s: &str, what: &str, line: usize) -> Result<T, SnnError> {
                s.parse().map_err(|_| SnnError::Parse { line, msg: format!("invalid {what} `{s}`") })
            }
            match fields[0] {
                "N" => {
                    if fields.len() != 7 {
                        return Err(err(format!("expected 7 fields in neuron record, got {}", fields.len())));
                    }
                    let neuron = Neuron {
                        id: NeuronId(num(fields[1], "neuron id", lineno)?),
                        threshold: num(fields[2], "threshold", lineno)?,
                        reset: num(fields[3], "reset", lineno)?,
                        leak: fields[4].parse().map_err(err)?,
                        v0: num(fields[5], "initial potential", lineno)?,
                        role: fields[6].parse().map_err(err)?,
                    };
                    net.add_neuron(neuron).map_err(|e| err(e.to_string()))?;
                }
                "S" => {
                    if fields.len() != 5 {
                        return Err(err(format!("expected 5 fields in synapse record, got {}", fields.len())));
                    }
                    let syn = Synapse {
                        pre: NeuronId(num(fields[1], "neuron id", lineno)?),
                        post: NeuronId(num(fields[2], "neuron id", lineno)?),
                        delay: num(fields[3], "delay", lineno)?,
                        weight: num(fields[4], "weight", lineno)?,
                    };
                    net.add_synapse(syn).map_err(|e| err(e.to_string()))?;
                }
                "SCHED" => {
                    if fields.len() != 3 {
                        return Err(err(format!("expected 3 fields in schedule record, got {}", fields.len())));
                    }
                    let id = NeuronId(num(fields[1], "neuron id", lineno)?);
                    let time = num(fields[2], "time", lineno)?;
                    net.schedule(id, time).map_err(|e| err(e.to_string()))?;
                }
                other => return Err(err(format!("unknown record type `{other}`"))),
            }
        }
        Ok(net)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpikeEvent {
    pub time: u64,
    pub neuron: NeuronId,
}

#[derive(Debug, Clone)]
pub enum StopCondition {
    /// Stop after the first step in which any of these neurons fired.
    AnyFired(Vec<NeuronId>),
    /// Simulate exactly this many steps.
    StepCount(u64),
}

#[derive(Debug, Clone)]
pub struct SimulationState {
    /// Next timestep to simulate (equivalently, steps simulated so far).
    pub t: u64,
    potentials: Vec<i64>,
    pending: BTreeMap<u64, Vec<(usize, i64)>>,
    pub trace: Vec<SpikeEvent>,
    ids: Vec<NeuronId>,
    recheck: Vec<usize>,
}

impl SimulationState {
    pub fn potential(&self, id: NeuronId) -> Option<i64> {
        self.ids.iter().position(|&x| x == id).map(|i| self.potentials[i])
    }

    pub fn potentials(&self) -> impl Iterator<Item = (NeuronId, i64)> + '_ {
        self.ids.iter().copied().zip(self.potentials.iter().copied())
    }

    /// Additive write into the running state.
    pub fn set_potential(&mut self, id: NeuronId, delta: i64) -> Result<i64, SnnError> {
        let i = self.ids.iter().position(|&x| x == id).ok_or(SnnError::UnknownNeuron(id))?;
        let value = self.potentials[i] + delta;
        if value < 0 {
            return Err(SnnError::NegativePotential { id, value });
        }
        self.potentials[i] = value;
        if !self.recheck.contains(&i) {
            self.recheck.push(i);
        }
        Ok(value)
    }

    /// Spikes emitted so far; one unit of energy per spike.
    pub fn energy(&self) -> u64 {
        self.trace.len() as u64
    }

    pub fn spike_counts(&self) -> HashMap<NeuronId, u32> {
        let mut counts = HashMap::new();
        for ev in &self.trace {
            *counts.entry(ev.neuron).or_insert(0) += 1;
        }
        counts
    }
}

pub fn write_trace_csv<W: Write>(trace: &[SpikeEvent], mut out: W) -> std::io::Result<()> {
    writeln!(out, "time,neuron_id")?;
    for ev in trace {
        writeln!(out, "{},{}", ev.time, ev.neuron)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(threshold: i64, leak: Leak, v0: i64) -> SpikingNetwork {
        let mut net = SpikingNetwork::new();
        net.add_neuron(Neuron::new(0, threshold, 0, leak, v0, Role::Readout)).unwrap();
        net
    }

    /// Drives neuron 0 with weight-1 spikes arriving at the given times via
    /// scheduled delay-1 sources.
    fn driven(threshold: i64, leak: Leak, arrivals: &[u64]) -> SpikingNetwork {
        let mut net = single(threshold, leak, 0);
        for (k, &t) in arrivals.iter().enumerate() {
            let src = NeuronId(100 + k as u32);
            net.add_neuron(Neuron { id: src, threshold: 1000, reset: 0, leak: Leak::ONE, v0: 0, role: Role::Scheduled })
                .unwrap();
            net.schedule(src, t - 1).unwrap();
            net.connect(src, NeuronId(0), 1, 1).unwrap();
        }
        net
    }

    fn fires_of(state: &SimulationState, id: u32) -> Vec<u64> {
        state.trace.iter().filter(|e| e.neuron == NeuronId(id)).map(|e| e.time).collect()
    }

    #[test]
    fn at_threshold_fires_at_time_zero() {
        let net = single(1, Leak::ONE, 1);
        let mut st = net.initial_state();
        assert_eq!(net.step(&mut st), vec![NeuronId(0)]);
        assert_eq!(st.potential(NeuronId(0)), Some(0));
    }

    #[test]
    fn pure_integration_fires_on_third_input() {
        let net = driven(3, Leak::ONE, &[1, 2, 3]);
        let st = net.run(5, &StopCondition::StepCount(5));
        assert_eq!(fires_of(&st, 0), vec![3]);
    }

    #[test]
    fn zero_leak_forgets_history() {
        let net = driven(2, Leak::ZERO, &[1, 2]);
        let mut st = net.initial_state();
        net.step(&mut st);
        net.step(&mut st);
        assert_eq!(st.potential(NeuronId(0)), Some(1));
        net.step(&mut st);
        assert_eq!(st.potential(NeuronId(0)), Some(1));
        net.run_from(&mut st, 5, &StopCondition::StepCount(5));
        assert!(fires_of(&st, 0).is_empty());
    }

    #[test]
    fn empty_network_runs_to_limit() {
        let net = SpikingNetwork::new();
        let st = net.run(5, &StopCondition::StepCount(100));
        assert!(st.trace.is_empty());
        assert_eq!(st.t, 5);
        assert_eq!(st.energy(), 0);
    }

    #[test]
    fn transmitter_spikes_once() {
        let mut net = SpikingNetwork::new();
        net.add_neuron(Neuron::new(7, 1, 0, Leak::ONE, 1, Role::Transmitter)).unwrap();
        let st = net.run(10, &StopCondition::StepCount(3));
        assert_eq!(st.trace, vec![SpikeEvent { time: 0, neuron: NeuronId(7) }]);
        assert_eq!(st.energy(), 1);
        assert_eq!(st.t, 3);
    }

    #[test]
    fn additive_potential_writes() {
        let mut net = single(8, Leak::ONE, 5);
        assert_eq!(net.add_initial_potential(NeuronId(0), 0).unwrap(), 5);
        assert_eq!(net.add_initial_potential(NeuronId(0), 2).unwrap(), 7);
        assert!(matches!(net.add_initial_potential(NeuronId(9), 1), Err(SnnError::UnknownNeuron(_))));
        assert!(matches!(net.add_initial_potential(NeuronId(0), -8), Err(SnnError::NegativePotential { .. })));

        // capacity neuron with c = 3, |E| = 4: threshold 8, stored potential 5
        let mut cap = single(8, Leak::ONE, 5);
        let st = cap.run(3, &StopCondition::StepCount(3));
        assert!(st.trace.is_empty());
        cap.add_initial_potential(NeuronId(0), 3).unwrap();
        let st = cap.run(3, &StopCondition::StepCount(3));
        assert_eq!(fires_of(&st, 0), vec![0]);
    }

    #[test]
    fn state_write_is_additive() {
        let net = single(10, Leak::ONE, 0);
        let mut st = net.initial_state();
        st.set_potential(NeuronId(0), 4).unwrap();
        st.set_potential(NeuronId(0), 0).unwrap();
        assert_eq!(st.potential(NeuronId(0)), Some(4));
        assert!(st.set_potential(NeuronId(3), 1).is_err());
    }

    #[test]
    fn delay_zero_inhibition_lands_in_same_step() {
        // C at threshold inhibits H (single-spike idiom, K = 3) at t = 0;
        // a transmitter input at t = 1 no longer reaches threshold.
        let mut net = SpikingNetwork::new();
        net.add_neuron(Neuron::new(0, 1, 0, Leak::ONE, 1, Role::Transmitter)).unwrap();
        net.add_neuron(Neuron::new(1, 4, 0, Leak::ONE, 4, Role::Capacity)).unwrap();
        net.add_neuron(Neuron::new(2, 4, 0, Leak::ONE, 3, Role::Standard)).unwrap();
        net.connect(NeuronId(1), NeuronId(2), 0, -3).unwrap();
        net.connect(NeuronId(0), NeuronId(2), 1, 1).unwrap();
        let st = net.run(5, &StopCondition::StepCount(5));
        assert_eq!(fires_of(&st, 2), Vec::<u64>::new());
        assert_eq!(fires_of(&st, 1), vec![0]);
    }

    #[test]
    fn delay_zero_chain_propagates() {
        let mut net = SpikingNetwork::new();
        for i in 0..3 {
            net.add_neuron(Neuron::new(i, 1, 0, Leak::ONE, if i == 0 { 1 } else { 0 }, Role::Standard)).unwrap();
        }
        net.connect(NeuronId(0), NeuronId(1), 0, 1).unwrap();
        net.connect(NeuronId(1), NeuronId(2), 0, 1).unwrap();
        let mut st = net.initial_state();
        assert_eq!(net.step(&mut st), vec![NeuronId(0), NeuronId(1), NeuronId(2)]);
    }

    #[test]
    fn clamp_after_summation() {
        // +2 and -5 arrive together: sum is -3, clamped to 0 (not 2).
        let mut net = SpikingNetwork::new();
        net.add_neuron(Neuron::new(0, 1, 0, Leak::ONE, 1, Role::Standard)).unwrap();
        net.add_neuron(Neuron::new(1, 1, 0, Leak::ONE, 1, Role::Standard)).unwrap();
        net.add_neuron(Neuron::new(2, 100, 0, Leak::ONE, 3, Role::Standard)).unwrap();
        net.connect(NeuronId(0), NeuronId(2), 1, 2).unwrap();
        net.connect(NeuronId(1), NeuronId(2), 1, -6).unwrap();
        let st = net.run(2, &StopCondition::StepCount(2));
        assert_eq!(st.potential(NeuronId(2)), Some(0));
    }

    #[test]
    fn scheduled_fire_resets() {
        let mut net = single(10, Leak::ONE, 4);
        net.schedule(NeuronId(0), 1).unwrap();
        let st = net.run(3, &StopCondition::StepCount(3));
        assert_eq!(fires_of(&st, 0), vec![1]);
        assert_eq!(st.potential(NeuronId(0)), Some(0));
    }

    #[test]
    fn overflow_reset_keeps_remainder() {
        let mut net = single(3, Leak::ONE, 5).with_reset_mode(ResetMode::Overflow);
        let st = net.run(1, &StopCondition::StepCount(1));
        assert_eq!(st.potential(NeuronId(0)), Some(2));
        net.set_reset_mode(ResetMode::Fixed);
        let st = net.run(1, &StopCondition::StepCount(1));
        assert_eq!(st.potential(NeuronId(0)), Some(0));
    }

    #[test]
    fn reset_above_threshold_refires() {
        let mut net = SpikingNetwork::new();
        net.add_neuron(Neuron::new(0, 1, 2, Leak::ONE, 0, Role::Standard)).unwrap();
        net.schedule(NeuronId(0), 0).unwrap();
        let st = net.run(4, &StopCondition::StepCount(4));
        assert_eq!(fires_of(&st, 0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rational_leak_floors() {
        assert_eq!("1/2".parse::<Leak>().unwrap().apply(5), 2);
        assert_eq!("0".parse::<Leak>().unwrap().apply(5), 0);
        assert!("1/0".parse::<Leak>().is_err());
    }

    #[test]
    fn any_fired_stop() {
        let mut net = SpikingNetwork::new();
        net.add_neuron(Neuron::new(0, 1, 0, Leak::ONE, 1, Role::Transmitter)).unwrap();
        net.add_neuron(Neuron::new(1, 1, 0, Leak::ONE, 0, Role::Readout)).unwrap();
        net.connect(NeuronId(0), NeuronId(1), 3, 1).unwrap();
        let mut st = net.initial_state();
        let hit = net.run_from(&mut st, 10, &StopCondition::AnyFired(vec![NeuronId(1)]));
        assert_eq!(hit, Some(3));
        assert_eq!(st.t, 4);
    }

    #[test]
    fn netlist_round_trip() {
        let text = "# demo\nN 0 1 0 1 1 transmitter\nN 1 5 0 1/2 4 readout\nS 0 1 1 -2\nSCHED 1 3\n";
        let net = SpikingNetwork::parse_netlist(text.as_bytes()).unwrap();
        let again = SpikingNetwork::parse_netlist(net.to_netlist().as_bytes()).unwrap();
        assert_eq!(net.neurons(), again.neurons());
        assert_eq!(net.synapses(), again.synapses());
        assert_eq!(again.schedule_entries(), &[(NeuronId(1), 3)]);
    }

    #[test]
    fn netlist_errors_carry_line_numbers() {
        let err = SpikingNetwork::parse_netlist("N 0 1 0 1 0 standard\nS 0 4 1 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, SnnError::Parse { line: 2, .. }), "{err:?}");
        let err = SpikingNetwork::parse_netlist("X 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, SnnError::Parse { line: 1, .. }));
        let err = SpikingNetwork::parse_netlist("N 0 1 0 1 0 wizard\n".as_bytes()).unwrap_err();
        assert!(matches!(err, SnnError::Parse { line: 1, .. }));
    }

    #[test]
    fn trace_csv_header() {
        let mut out = Vec::new();
        write_trace_csv(&[SpikeEvent { time: 2, neuron: NeuronId(5) }], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "time,neuron_id\n2,5\n");
    }
}
