//! Exponential pre-processing decider for "is the maximum flow above d?".
//!
//! For every candidate integer flow whose source outflow exceeds `d`, one
//! comparison circuit per interior node checks conservation. A violated
//! candidate drives its `O_f` neuron, and `N_rej` only fires once every
//! candidate is violated. `N_acc` is driven by the start neuron at a fixed
//! time and is held down by `N_rej`, which keeps firing through a self-loop.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::oracle::{ConsultMode, Machine, OpKind, OracleError, ResourceReport};
use crate::snn::{Leak, Neuron, NeuronId, Role, SpikingNetwork, StopCondition};

pub const CANDIDATE_GUARD: u64 = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NaiveError {
    #[error("candidate space {0} exceeds the guard of {CANDIDATE_GUARD}")]
    GuardExceeded(u64),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Candidate flows in lexicographic order (edge 0 most significant) whose
/// source outflow exceeds `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateFlowEnumeration {
    pub candidates: Vec<Vec<u64>>,
    pub f_max: u64,
    pub space: u64,
}

impl CandidateFlowEnumeration {
    pub fn new(g: &FlowNetwork, d: u64) -> Result<Self, NaiveError> {
        let space = g
            .edges()
            .iter()
            .try_fold(1u64, |acc, e| acc.checked_mul(e.capacity + 1).filter(|&p| p <= CANDIDATE_GUARD))
            .ok_or(NaiveError::GuardExceeded(u64::MAX))?;
        let mut candidates = Vec::new();
        let mut f = vec![0u64; g.edge_count()];
        loop {
            let out: u64 = g.out_edges(g.source()).map(|e| f[e]).sum();
            if out > d {
                candidates.push(f.clone());
            }
            // odometer step, last edge fastest
            let mut i = f.len();
            loop {
                if i == 0 {
                    return Ok(CandidateFlowEnumeration { candidates, f_max: g.max_capacity(), space });
                }
                i -= 1;
                if f[i] < g.edge(i).capacity {
                    f[i] += 1;
                    break;
                }
                f[i] = 0;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

fn interior_nodes(g: &FlowNetwork) -> impl Iterator<Item = usize> + '_ {
    (0..g.node_count()).filter(move |&n| n != g.source() && n != g.sink())
}

fn node_flows(g: &FlowNetwork, f: &[u64], node: usize) -> (u64, u64) {
    let inflow = g.in_edges(node).map(|e| f[e]).sum();
    let outflow = g.out_edges(node).map(|e| f[e]).sum();
    (inflow, outflow)
}

/// Neuron ids of one comparison circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConservationSubnet {
    pub timer_in: NeuronId,
    pub timer_out: NeuronId,
    pub detect_in: NeuronId,
    pub detect_out: NeuronId,
    pub error: NeuronId,
}

fn fresh(next: &mut u32) -> u32 {
    *next += 1;
    *next - 1
}

/// Adds a circuit whose `E` neuron fires at `min(flow_in, flow_out) + 2`
/// iff the two values differ. `start` must fire at `t = 0`.
///
/// The timers are reached from `start` through delays equal to the flow
/// values. Each detector is excited by its own timer and inhibited by the
/// other one a step later; with zero leak it only fires if its timer came
/// strictly first.
pub fn add_conservation_subnet(
    net: &mut SpikingNetwork,
    next_id: &mut u32,
    start: NeuronId,
    flow_in: u64,
    flow_out: u64,
) -> Result<ConservationSubnet, OracleError> {
    let unit = |id: u32, role: Role| Neuron::new(id, 1, 0, Leak::ONE, 0, role);
    let timer_in = net.add_neuron(unit(fresh(next_id), Role::Standard))?;
    let timer_out = net.add_neuron(unit(fresh(next_id), Role::Standard))?;
    let detect_in = net.add_neuron(Neuron::new(fresh(next_id), 1, 0, Leak::ZERO, 0, Role::Standard))?;
    let detect_out = net.add_neuron(Neuron::new(fresh(next_id), 1, 0, Leak::ZERO, 0, Role::Standard))?;
    let error = net.add_neuron(Neuron::new(fresh(next_id), 3, 0, Leak::ONE, 2, Role::Standard))?;
    net.connect(start, timer_in, flow_in as u32, 1)?;
    net.connect(start, timer_out, flow_out as u32, 1)?;
    net.connect(timer_in, detect_in, 1, 1)?;
    net.connect(timer_out, detect_in, 1, -1)?;
    net.connect(timer_out, detect_out, 1, 1)?;
    net.connect(timer_in, detect_out, 1, -1)?;
    net.connect(detect_in, error, 1, 1)?;
    net.connect(detect_out, error, 1, 1)?;
    Ok(ConservationSubnet { timer_in, timer_out, detect_in, detect_out, error })
}

#[derive(Debug, Clone)]
pub struct DeciderNetwork {
    pub net: SpikingNetwork,
    pub start: NeuronId,
    pub accept: NeuronId,
    pub reject: NeuronId,
    /// Time at which `N_acc` fires unless inhibited.
    pub accept_time: u64,
    pub f_max: u64,
    pub candidates: usize,
}

/// Earliest time a violated candidate's `O_f` fires, or `None` if the
/// candidate conserves flow everywhere.
fn first_violation(g: &FlowNetwork, f: &[u64]) -> Option<u64> {
    interior_nodes(g)
        .map(|n| node_flows(g, f, n))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| a.min(b))
        .min()
}

pub fn build_decider(g: &FlowNetwork, d: u64) -> Result<DeciderNetwork, NaiveError> {
    build_decider_metered(g, d, None)
}

fn build_decider_metered(g: &FlowNetwork, d: u64, mut meter: Option<&mut Machine>) -> Result<DeciderNetwork, NaiveError> {
    let cands = CandidateFlowEnumeration::new(g, d)?;
    let interior: Vec<usize> = interior_nodes(g).collect();
    let n_v = g.node_count() as i64;
    let n_f = cands.len() as i64;

    // N_acc must fire after the last possible N_rej trigger.
    let latest = cands.candidates.iter().filter_map(|f| first_violation(g, f)).max().unwrap_or(0);
    let accept_time = cands.f_max.max(latest) + 5;

    let mut net = SpikingNetwork::new();
    let mut next = 0u32;
    let start = net.add_neuron(Neuron::new(fresh(&mut next), 1, 0, Leak::ONE, 1, Role::Transmitter)).map_err(OracleError::from)?;
    let reject_threshold = if n_f == 0 { 1 } else { n_f };
    let reject = net
        .add_neuron(Neuron::new(fresh(&mut next), reject_threshold, 0, Leak::ONE, 0, Role::Reject))
        .map_err(OracleError::from)?;
    let accept = net.add_neuron(Neuron::new(fresh(&mut next), 1, 0, Leak::ZERO, 0, Role::Accept)).map_err(OracleError::from)?;
    let big = n_f + 2;
    net.connect(start, accept, accept_time as u32, 1).map_err(OracleError::from)?;
    net.connect(reject, accept, 1, -big).map_err(OracleError::from)?;
    net.connect(reject, reject, 1, reject_threshold).map_err(OracleError::from)?;
    if n_f == 0 {
        net.connect(start, reject, 0, 1).map_err(OracleError::from)?;
    }

    for f in &cands.candidates {
        let o = net
            .add_neuron(Neuron::new(fresh(&mut next), n_v + 2, 0, Leak::ONE, n_v + 1, Role::Standard))
            .map_err(OracleError::from)?;
        net.connect(o, reject, 0, 1).map_err(OracleError::from)?;
        for &node in &interior {
            let (fin, fout) = node_flows(g, f, node);
            let sub = add_conservation_subnet(&mut net, &mut next, start, fin, fout)?;
            net.connect(sub.error, o, 0, 1).map_err(OracleError::from)?;
        }
        if let Some(m) = meter.as_deref_mut() {
            m.meter_n(OpKind::InputRead, g.edge_count() as u64);
        }
    }
    if let Some(m) = meter {
        m.meter_n(OpKind::Communicate, net.size() as u64);
    }
    Ok(DeciderNetwork { net, start, accept, reject, accept_time, f_max: cands.f_max, candidates: cands.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaiveOutcome {
    pub accept: bool,
    /// Time `N_acc` fired, if it did.
    pub accept_fired_at: Option<u64>,
    pub accept_time: u64,
    pub f_max: u64,
    pub candidates: usize,
    pub neurons: usize,
    pub synapses: usize,
    pub report: ResourceReport,
}

/// Builds the decider and consults the oracle once.
pub fn decide_naive(g: &FlowNetwork, d: u64) -> Result<NaiveOutcome, NaiveError> {
    let mut m = Machine::new(0);
    let dn = build_decider_metered(g, d, Some(&mut m))?;
    let c = crate::oracle::consult(&dn.net, ConsultMode::Decider, dn.accept_time + 1, &StopCondition::StepCount(0))?;
    let mut report = m.report().clone();
    report.record(c.record);
    let accept_fired_at = c.state.trace.iter().find(|e| e.neuron == dn.accept).map(|e| e.time);
    Ok(NaiveOutcome {
        accept: c.accepted == Some(true),
        accept_fired_at,
        accept_time: dn.accept_time,
        f_max: dn.f_max,
        candidates: dn.candidates,
        neurons: dn.net.neurons().len(),
        synapses: dn.net.synapses().len(),
        report,
    })
}
