//! Controller/oracle interaction: the controller writes a spiking network
//! into the oracle, consults it, and reads the resulting spike events back
//! from a time-ordered output tape. Every controller action is metered.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snn::{
    Neuron, NeuronId, Role, SimulationState, SnnError, SpikeEvent, SpikingNetwork, StopCondition, Synapse,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("read past the end of the output tape")]
    ReadAfterEnd,
    #[error("working memory address {addr} exceeds capacity {capacity}")]
    WorkingMemoryExceeded { addr: usize, capacity: usize },
    #[error("decider undecided after {0} steps")]
    Undecided(u64),
    #[error("time limit must be at least 1")]
    ZeroTimeLimit,
    #[error(transparent)]
    Network(#[from] SnnError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputTape {
    events: Vec<SpikeEvent>,
    cursor: usize,
}

impl OutputTape {
    /// Sorts events by `(time, neuron id)`.
    pub fn new(mut events: Vec<SpikeEvent>) -> Self {
        events.sort();
        OutputTape { events, cursor: 0 }
    }

    /// Keeps the output-role events of a simulation trace.
    pub fn from_trace(net: &SpikingNetwork, trace: &[SpikeEvent]) -> Self {
        let events = trace
            .iter()
            .filter(|ev| net.neuron(ev.neuron).map(|n| n.role.is_output()).unwrap_or(false))
            .copied()
            .collect();
        OutputTape::new(events)
    }

    pub fn read(&mut self) -> Result<SpikeEvent, OracleError> {
        let ev = *self.events.get(self.cursor).ok_or(OracleError::ReadAfterEnd)?;
        self.cursor += 1;
        Ok(ev)
    }

    pub fn end(&self) -> bool {
        self.cursor >= self.events.len()
    }

    /// Moves the read head back to the first event.
    pub fn rewind(&mut self) {
        self.cursor = 0;
    }

    pub fn events(&self) -> &[SpikeEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConsultMode {
    Transducer,
    Decider,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConsultationRecord {
    pub timesteps: u64,
    pub energy: u64,
    pub space: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub controller_time: u64,
    pub controller_wm_peak: u64,
    pub oracle_time: u64,
    pub oracle_space: u64,
    pub oracle_energy: u64,
    pub per_consultation_time: Vec<u64>,
    pub per_consultation_energy: Vec<u64>,
    pub per_consultation_space: Vec<u64>,
}

impl ResourceReport {
    pub fn record(&mut self, rec: ConsultationRecord) {
        self.oracle_time = self.oracle_time.max(rec.timesteps);
        self.oracle_space = self.oracle_space.max(rec.space);
        self.oracle_energy += rec.energy;
        self.per_consultation_time.push(rec.timesteps);
        self.per_consultation_energy.push(rec.energy);
        self.per_consultation_space.push(rec.space);
    }

    pub fn consultations(&self) -> usize {
        self.per_consultation_time.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Abstract controller operations, each costing one time unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Read,
    Write,
    Compare,
    Communicate,
    InputRead,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingMemory {
    cells: Vec<i64>,
    peak: usize,
}

impl WorkingMemory {
    pub fn new(capacity: usize) -> Self {
        WorkingMemory { cells: vec![0; capacity], peak: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.cells.len()
    }

    /// Highest address written so far, plus one.
    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn write(&mut self, addr: usize, value: i64) -> Result<(), OracleError> {
        let capacity = self.cells.len();
        let cell = self.cells.get_mut(addr).ok_or(OracleError::WorkingMemoryExceeded { addr, capacity })?;
        *cell = value;
        self.peak = self.peak.max(addr + 1);
        Ok(())
    }

    pub fn read(&self, addr: usize) -> Result<i64, OracleError> {
        self.cells.get(addr).copied().ok_or(OracleError::WorkingMemoryExceeded { addr, capacity: self.cells.len() })
    }
}

/// Result of one oracle consultation.
#[derive(Debug, Clone)]
pub struct Consultation {
    pub tape: OutputTape,
    pub record: ConsultationRecord,
    /// Decider verdict; `None` in transducer mode.
    pub accepted: Option<bool>,
    /// Final simulation state, kept for instrumentation.
    pub state: SimulationState,
}

/// Simulates `net` from its stored initial potentials.
///
/// Transducer mode runs until `stop` holds or `time_limit` steps pass and
/// returns the readout events. Decider mode stops at the first accept spike;
/// if none occurs it rejects when a reject neuron fired and errors otherwise.
pub fn consult(
    net: &SpikingNetwork,
    mode: ConsultMode,
    time_limit: u64,
    stop: &StopCondition,
) -> Result<Consultation, OracleError> {
    if time_limit == 0 {
        return Err(OracleError::ZeroTimeLimit);
    }
    let role_ids = |role: Role| -> Vec<NeuronId> {
        net.neurons().iter().filter(|n| n.role == role).map(|n| n.id).collect()
    };
    let mut state = net.initial_state();
    let accepted = match mode {
        ConsultMode::Transducer => {
            net.run_from(&mut state, time_limit, stop);
            None
        }
        ConsultMode::Decider => {
            let hit = net.run_from(&mut state, time_limit, &StopCondition::AnyFired(role_ids(Role::Accept)));
            if hit.is_some() {
                Some(true)
            } else {
                let rejects = role_ids(Role::Reject);
                if state.trace.iter().any(|ev| rejects.contains(&ev.neuron)) {
                    Some(false)
                } else {
                    return Err(OracleError::Undecided(time_limit));
                }
            }
        }
    };
    let record = ConsultationRecord { timesteps: state.t, energy: state.energy(), space: net.size() as u64 };
    let tape = OutputTape::from_trace(net, &state.trace);
    Ok(Consultation { tape, record, accepted, state })
}

/// A conventional controller with bounded working memory that owns one
/// neuromorphic oracle.
#[derive(Debug, Clone)]
pub struct Machine {
    wm: WorkingMemory,
    report: ResourceReport,
    oracle: SpikingNetwork,
}

impl Machine {
    pub fn new(wm_capacity: usize) -> Self {
        Machine { wm: WorkingMemory::new(wm_capacity), report: ResourceReport::default(), oracle: SpikingNetwork::new() }
    }

    pub fn meter(&mut self, _op: OpKind) {
        self.report.controller_time += 1;
    }

    pub fn meter_n(&mut self, _op: OpKind, n: u64) {
        self.report.controller_time += n;
    }

    pub fn wm_write(&mut self, addr: usize, value: i64) -> Result<(), OracleError> {
        self.meter(OpKind::Write);
        self.wm.write(addr, value)?;
        self.report.controller_wm_peak = self.wm.peak() as u64;
        Ok(())
    }

    pub fn wm_read(&mut self, addr: usize) -> Result<i64, OracleError> {
        self.meter(OpKind::Read);
        self.wm.read(addr)
    }

    pub fn wm(&self) -> &WorkingMemory {
        &self.wm
    }

    pub fn add_neuron(&mut self, neuron: Neuron) -> Result<NeuronId, OracleError> {
        self.meter(OpKind::Communicate);
        Ok(self.oracle.add_neuron(neuron)?)
    }

    pub fn add_synapse(&mut self, pre: NeuronId, post: NeuronId, delay: u32, weight: i64) -> Result<(), OracleError> {
        self.meter(OpKind::Communicate);
        Ok(self.oracle.add_synapse(Synapse { pre, post, delay, weight })?)
    }

    pub fn schedule(&mut self, id: NeuronId, time: u64) -> Result<(), OracleError> {
        self.meter(OpKind::Communicate);
        Ok(self.oracle.schedule(id, time)?)
    }

    /// Additive write to a neuron's stored potential.
    pub fn write_voltage(&mut self, id: NeuronId, delta: i64) -> Result<i64, OracleError> {
        self.meter(OpKind::Communicate);
        Ok(self.oracle.add_initial_potential(id, delta)?)
    }

    pub fn voltage(&mut self, id: NeuronId) -> Result<i64, OracleError> {
        self.meter(OpKind::Communicate);
        Ok(self.oracle.neuron(id)?.v0)
    }

    pub fn threshold(&mut self, id: NeuronId) -> Result<i64, OracleError> {
        self.meter(OpKind::Communicate);
        Ok(self.oracle.neuron(id)?.threshold)
    }

    pub fn consult(&mut self, mode: ConsultMode, time_limit: u64, stop: &StopCondition) -> Result<Consultation, OracleError> {
        self.meter(OpKind::Communicate);
        let c = consult(&self.oracle, mode, time_limit, stop)?;
        self.report.record(c.record);
        Ok(c)
    }

    /// Reads the next tape event, charging one controller step.
    pub fn read_tape(&mut self, tape: &mut OutputTape) -> Result<SpikeEvent, OracleError> {
        self.meter(OpKind::Read);
        tape.read()
    }

    pub fn network(&self) -> &SpikingNetwork {
        &self.oracle
    }

    pub fn report(&self) -> &ResourceReport {
        &self.report
    }

    pub fn into_parts(self) -> (SpikingNetwork, ResourceReport) {
        (self.oracle, self.report)
    }
}
