//! Threshold network flow with reservoirs: instances, an exact feasibility
//! checker, and the reduction from a time- and energy-bounded spiking
//! network.
//!
//! Arc flow is either 0 or inside `[c_min, c_max]`. Conservation holds
//! everywhere except at the master source/sink and at reservoirs
//! (auxiliary sinks `r` and sources `p`). An instance asks whether the
//! source can emit more than `d` units.
//!
//! # Reduction
//!
//! Times run over `0..t`. Neuron `a` at time `k` becomes a vertex
//! `n[a][k]` whose inflow is its potential after integration. It either
//! carries up to `T_a - 1` to `n[a][k+1]`, or fires by sending exactly
//! `T_a` into its synapse gadget, or leaks one unit to the failure gadget.
//! All gadget arcs with a fixed amount use `[c, c]`, so a gadget is either
//! fully on or fully off.
//!
//! The master source feeds three unit channels (energy, time, failure).
//! The energy and time channels end in rigid exits topped up by slack
//! sources, which is what bounds the number of spikes and of reject
//! spikes. The time channel only reaches the master sink through an AND
//! node that also needs a unit from the constant-input gadget, so a flow
//! with the constant input switched off cannot reach value 3.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snn::{Leak, NeuronId, ResetMode, Role, SpikeEvent, SpikingNetwork};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TnfrError {
    #[error("assumption {index} violated: {msg}")]
    Assumption { index: u8, msg: String },
    #[error("invalid bounds: {0}")]
    Bounds(String),
    #[error("instance has {arcs} arcs, guard is {max}")]
    GuardExceeded { arcs: usize, max: usize },
    #[error("search budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Plain,
    Source,
    Sink,
    /// Auxiliary sink (`r`).
    Reservoir,
    /// Auxiliary source (`p`).
    Supply,
}

/// Where a node or arc came from: construction step, neuron, timestep and
/// a short label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub step: u8,
    pub neuron: Option<u32>,
    pub time: Option<u32>,
    pub label: String,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} {}", self.step, self.label)?;
        if let Some(n) = self.neuron {
            write!(f, " neuron {n}")?;
        }
        if let Some(k) = self.time {
            write!(f, " t={k}")?;
        }
        Ok(())
    }
}

fn tag(step: u8, neuron: Option<u32>, time: Option<usize>, label: &str) -> Provenance {
    Provenance { step, neuron, time: time.map(|k| k as u32), label: label.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TnfrNode {
    pub kind: NodeKind,
    pub tag: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TnfrArc {
    pub from: usize,
    pub to: usize,
    pub cmin: u64,
    pub cmax: u64,
    pub tag: Provenance,
}

impl TnfrArc {
    pub fn admits(&self, f: u64) -> bool {
        f == 0 || (self.cmin <= f && f <= self.cmax)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TnfrInstance {
    pub nodes: Vec<TnfrNode>,
    pub arcs: Vec<TnfrArc>,
    pub source: usize,
    pub sink: usize,
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TnfrViolation {
    Length { expected: usize, got: usize },
    Arc { arc: usize, flow: u64, cmin: u64, cmax: u64 },
    Conservation { node: usize, inflow: u64, outflow: u64 },
}

impl TnfrInstance {
    pub fn new() -> Self {
        TnfrInstance { nodes: Vec::new(), arcs: Vec::new(), source: 0, sink: 0, d: 0 }
    }

    pub fn add_node(&mut self, kind: NodeKind, tag: Provenance) -> usize {
        self.nodes.push(TnfrNode { kind, tag });
        let id = self.nodes.len() - 1;
        match kind {
            NodeKind::Source => self.source = id,
            NodeKind::Sink => self.sink = id,
            _ => {}
        }
        id
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cmin: u64, cmax: u64, tag: Provenance) -> usize {
        assert!(cmin <= cmax, "arc interval [{cmin}, {cmax}] is empty");
        self.arcs.push(TnfrArc { from, to, cmin, cmax, tag });
        self.arcs.len() - 1
    }

    /// Whether flow must be conserved at `v`.
    pub fn conserving(&self, v: usize) -> bool {
        self.nodes[v].kind == NodeKind::Plain
    }

    pub fn value(&self, flow: &[u64]) -> u64 {
        self.arcs.iter().zip(flow).filter(|(a, _)| a.from == self.source).map(|(_, f)| *f).sum()
    }

    /// Checks arc intervals and conservation; returns the flow value.
    pub fn validate(&self, flow: &[u64]) -> Result<u64, Vec<TnfrViolation>> {
        if flow.len() != self.arcs.len() {
            return Err(vec![TnfrViolation::Length { expected: self.arcs.len(), got: flow.len() }]);
        }
        let mut bad = Vec::new();
        let mut inflow = vec![0u64; self.nodes.len()];
        let mut outflow = vec![0u64; self.nodes.len()];
        for (i, (a, &f)) in self.arcs.iter().zip(flow).enumerate() {
            if !a.admits(f) {
                bad.push(TnfrViolation::Arc { arc: i, flow: f, cmin: a.cmin, cmax: a.cmax });
            }
            outflow[a.from] += f;
            inflow[a.to] += f;
        }
        for v in 0..self.nodes.len() {
            if self.conserving(v) && inflow[v] != outflow[v] {
                bad.push(TnfrViolation::Conservation { node: v, inflow: inflow[v], outflow: outflow[v] });
            }
        }
        if bad.is_empty() { Ok(self.value(flow)) } else { Err(bad) }
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "p tnfr {} {} {}", self.nodes.len(), self.arcs.len(), self.d)?;
        for (i, n) in self.nodes.iter().enumerate() {
            let c = match n.kind {
                NodeKind::Plain => continue,
                NodeKind::Source => 's',
                NodeKind::Sink => 't',
                NodeKind::Reservoir => 'r',
                NodeKind::Supply => 'p',
            };
            writeln!(out, "n {} {c}", i + 1)?;
        }
        for a in &self.arcs {
            writeln!(out, "a {} {} {} {}", a.from + 1, a.to + 1, a.cmin, a.cmax)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ASCII")
    }

    pub fn parse_text<R: BufRead>(input: R) -> Result<Self, TnfrError> {
        let mut inst = TnfrInstance::new();
        let mut declared_arcs = None;
        let (mut has_s, mut has_t) = (false, false);
        for (i, line) in input.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| TnfrError::Io(e.to_string()))?;
            let err = |msg: String| TnfrError::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let Some(&kind) = fields.first() else { continue };
            let num = |s: &str| -> Result<u64, TnfrError> {
                s.parse().map_err(|_| TnfrError::Parse { line: line_no, msg: format!("invalid number `{s}`") })
            };
            match kind {
                "c" => {}
                "p" => {
                    if declared_arcs.is_some() {
                        return Err(err("duplicate problem line".into()));
                    }
                    if fields.len() != 5 || fields[1] != "tnfr" {
                        return Err(err("expected `p tnfr <nodes> <arcs> <d>`".into()));
                    }
                    let n = num(fields[2])? as usize;
                    inst.nodes = vec![TnfrNode { kind: NodeKind::Plain, tag: Provenance::default() }; n];
                    declared_arcs = Some(num(fields[3])? as usize);
                    inst.d = num(fields[4])?;
                }
                "n" | "a" if declared_arcs.is_none() => return Err(err("record before problem line".into())),
                "n" => {
                    if fields.len() != 3 {
                        return Err(err("expected `n <id> s|t|r|p`".into()));
                    }
                    let id = num(fields[1])? as usize;
                    if id == 0 || id > inst.nodes.len() {
                        return Err(err(format!("node {id} out of range")));
                    }
                    let kind = match fields[2] {
                        "s" if !has_s => {
                            has_s = true;
                            inst.source = id - 1;
                            NodeKind::Source
                        }
                        "t" if !has_t => {
                            has_t = true;
                            inst.sink = id - 1;
                            NodeKind::Sink
                        }
                        "s" | "t" => return Err(err(format!("duplicate `{}` node", fields[2]))),
                        "r" => NodeKind::Reservoir,
                        "p" => NodeKind::Supply,
                        other => return Err(err(format!("unknown node kind `{other}`"))),
                    };
                    inst.nodes[id - 1].kind = kind;
                }
                "a" => {
                    if fields.len() != 5 {
                        return Err(err("expected `a <u> <v> <cmin> <cmax>`".into()));
                    }
                    let u = num(fields[1])? as usize;
                    let v = num(fields[2])? as usize;
                    let (lo, hi) = (num(fields[3])?, num(fields[4])?);
                    let n = inst.nodes.len();
                    if u == 0 || u > n || v == 0 || v > n {
                        return Err(err("arc endpoint out of range".into()));
                    }
                    if lo > hi {
                        return Err(err(format!("empty interval [{lo}, {hi}]")));
                    }
                    inst.arcs.push(TnfrArc { from: u - 1, to: v - 1, cmin: lo, cmax: hi, tag: Provenance::default() });
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        let m = declared_arcs.ok_or(TnfrError::Parse { line: 0, msg: "missing problem line".into() })?;
        if !has_s || !has_t {
            return Err(TnfrError::Parse { line: 0, msg: "missing source or sink".into() });
        }
        if inst.arcs.len() != m {
            return Err(TnfrError::Parse { line: 0, msg: format!("declared {m} arcs, found {}", inst.arcs.len()) });
        }
        Ok(inst)
    }
}

impl Default for TnfrInstance {
    fn default() -> Self {
        Self::new()
    }
}

pub fn write_witness_csv<W: Write>(flow: &[u64], mut out: W) -> std::io::Result<()> {
    writeln!(out, "arc,flow")?;
    for (i, f) in flow.iter().enumerate() {
        writeln!(out, "{},{f}", i + 1)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Feasibility checker

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub max_arcs: usize,
    pub budget: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { max_arcs: 64, budget: 100_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub feasible: bool,
    pub witness: Option<Vec<u64>>,
    pub expansions: u64,
}

type Domains = Vec<(i64, i64)>;

struct Checker<'a> {
    inst: &'a TnfrInstance,
    ins: Vec<Vec<usize>>,
    outs: Vec<Vec<usize>>,
    order: Vec<usize>,
    target: i64,
    expansions: u64,
    budget: u64,
}

impl<'a> Checker<'a> {
    fn new(inst: &'a TnfrInstance, budget: u64) -> Self {
        let n = inst.nodes.len();
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for (i, a) in inst.arcs.iter().enumerate() {
            outs[a.from].push(i);
            ins[a.to].push(i);
        }
        // BFS layers from the source and every supply node
        let mut layer = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if v == inst.source || inst.nodes[v].kind == NodeKind::Supply {
                layer[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &a in &outs[u] {
                let v = inst.arcs[a].to;
                if layer[v] == usize::MAX {
                    layer[v] = layer[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut order: Vec<usize> = (0..inst.arcs.len()).collect();
        order.sort_by_key(|&a| (layer[inst.arcs[a].from], a));
        Checker { inst, ins, outs, order, target: inst.d as i64 + 1, expansions: 0, budget }
    }

    /// Intersects arc `a`'s domain with `[lo, hi]`, respecting the gap
    /// between 0 and `c_min`. Returns whether the domain changed.
    fn tighten(&self, dom: &mut Domains, a: usize, lo: i64, hi: i64) -> Result<bool, ()> {
        let cmin = self.inst.arcs[a].cmin as i64;
        let (old_lo, old_hi) = dom[a];
        let mut nlo = old_lo.max(lo);
        let mut nhi = old_hi.min(hi);
        if nlo > 0 && nlo < cmin {
            nlo = cmin;
        }
        if nhi < cmin {
            nhi = nhi.min(0);
        }
        if nlo > nhi {
            return Err(());
        }
        dom[a] = (nlo, nhi);
        Ok((nlo, nhi) != (old_lo, old_hi))
    }

    fn propagate(&self, dom: &mut Domains, seeds: impl IntoIterator<Item = usize>) -> Result<(), ()> {
        let n = self.inst.nodes.len();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for v in seeds {
            if !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
        let mut touched = Vec::new();
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            touched.clear();
            let sum = |arcs: &[usize], dom: &Domains| arcs.iter().fold((0i64, 0i64), |(l, h), &a| (l + dom[a].0, h + dom[a].1));
            if self.inst.conserving(v) {
                let (lo_in, hi_in) = sum(&self.ins[v], dom);
                let (lo_out, hi_out) = sum(&self.outs[v], dom);
                if lo_in > hi_out || lo_out > hi_in {
                    return Err(());
                }
                for &a in &self.ins[v] {
                    let (l, h) = dom[a];
                    if self.tighten(dom, a, lo_out - (hi_in - h), hi_out - (lo_in - l))? {
                        touched.push(a);
                    }
                }
                for &a in &self.outs[v] {
                    let (l, h) = dom[a];
                    if self.tighten(dom, a, lo_in - (hi_out - h), hi_in - (lo_out - l))? {
                        touched.push(a);
                    }
                }
            }
            if v == self.inst.source {
                let (_, hi_out) = sum(&self.outs[v], dom);
                if hi_out < self.target {
                    return Err(());
                }
                for &a in &self.outs[v] {
                    let h = dom[a].1;
                    if self.tighten(dom, a, self.target - (hi_out - h), i64::MAX)? {
                        touched.push(a);
                    }
                }
            }
            for &a in &touched {
                for w in [self.inst.arcs[a].from, self.inst.arcs[a].to] {
                    if !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Ok(())
    }

    fn search(&mut self, dom: Domains) -> Result<Option<Vec<u64>>, TnfrError> {
        let Some(&a) = self.order.iter().find(|&&a| dom[a].0 < dom[a].1) else {
            return Ok(Some(dom.iter().map(|&(l, _)| l as u64).collect()));
        };
        let (lo, hi) = dom[a];
        let cmin = self.inst.arcs[a].cmin as i64;
        let mut values: Vec<i64> = (lo.max(cmin).max(1)..=hi).rev().collect();
        if lo == 0 {
            values.push(0);
        }
        for v in values {
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(TnfrError::BudgetExceeded(self.budget));
            }
            let mut next = dom.clone();
            next[a] = (v, v);
            let arc = &self.inst.arcs[a];
            if self.propagate(&mut next, [arc.from, arc.to]).is_ok() {
                if let Some(w) = self.search(next)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }
}

/// Exact search for a flow with value above `inst.d`.
///
/// Depth-first over arcs ordered by the BFS layer of their tail, with
/// interval propagation of the conservation equations and of the value
/// bound after every assignment.
pub fn check_feasible(inst: &TnfrInstance, opts: &CheckOptions) -> Result<CheckResult, TnfrError> {
    if inst.arcs.len() > opts.max_arcs {
        return Err(TnfrError::GuardExceeded { arcs: inst.arcs.len(), max: opts.max_arcs });
    }
    let mut checker = Checker::new(inst, opts.budget);
    let mut dom: Domains = inst.arcs.iter().map(|a| (0, a.cmax as i64)).collect();
    let all = 0..inst.nodes.len();
    let witness = if checker.propagate(&mut dom, all).is_ok() { checker.search(dom)? } else { None };
    if let Some(w) = &witness {
        if inst.validate(w).map(|v| v <= inst.d).unwrap_or(true) {
            return Err(TnfrError::Internal("checker produced an invalid witness".into()));
        }
    }
    Ok(CheckResult { feasible: witness.is_some(), witness, expansions: checker.expansions })
}

// ---------------------------------------------------------------------------
// Reduction

/// A spiking network with time bound `t` and energy bound `e`.
///
/// Expected shape: one input neuron (the constant input), one accept and
/// one reject neuron, unit leaks, overflow reset, non-negative integer
/// weights, thresholds at least 1, delays at least 1, zero initial
/// potentials, and no synapses into the input or touching the reject
/// neuron.
#[derive(Debug, Clone)]
pub struct ReductionConfig {
    pub snn: SpikingNetwork,
    pub t: u32,
    pub e: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Roles {
    con: usize,
    acc: usize,
    rej: usize,
}

/// Largest network accepted by the reduction.
pub const MAX_NEURONS: usize = 64;

impl ReductionConfig {
    pub fn new(snn: SpikingNetwork, t: u32, e: u32) -> Self {
        ReductionConfig { snn, t, e }
    }

    /// Neurons other than the constant input and the reject neuron.
    pub fn n(&self) -> usize {
        self.snn.neurons().len().saturating_sub(2)
    }

    fn check(&self) -> Result<Roles, TnfrError> {
        let bad = |index: u8, msg: String| Err(TnfrError::Assumption { index, msg });
        let neurons = self.snn.neurons();
        if neurons.len() > MAX_NEURONS {
            return bad(1, format!("{} neurons exceed the constant bound {MAX_NEURONS}", neurons.len()));
        }
        if self.t == 0 || self.e == 0 {
            return Err(TnfrError::Bounds("t and e must be at least 1".into()));
        }
        if self.e as u64 > neurons.len() as u64 * self.t as u64 {
            return Err(TnfrError::Bounds(format!("e = {} exceeds neurons * t", self.e)));
        }
        let find = |role: Role, index: u8, what: &str| -> Result<usize, TnfrError> {
            let hits: Vec<usize> = (0..neurons.len()).filter(|&i| neurons[i].role == role).collect();
            match hits.as_slice() {
                [one] => Ok(*one),
                _ => Err(TnfrError::Assumption { index, msg: format!("need exactly one {what} neuron, found {}", hits.len()) }),
            }
        };
        let con = find(Role::Input, 2, "constant input")?;
        let acc = find(Role::Accept, 6, "accept")?;
        let rej = find(Role::Reject, 6, "reject")?;
        for n in neurons {
            if n.v0 != 0 {
                return bad(2, format!("neuron {} has a bias (initial potential {})", n.id, n.v0));
            }
            if n.threshold < 1 {
                return bad(3, format!("neuron {} has threshold {}", n.id, n.threshold));
            }
            if n.leak != Leak::ONE {
                return bad(4, format!("neuron {} has leak {}", n.id, n.leak));
            }
        }
        for (id, _) in self.snn.schedule_entries() {
            if *id != neurons[con].id {
                return bad(2, format!("neuron {id} is externally driven"));
            }
        }
        for s in self.snn.synapses() {
            if s.weight < 0 || s.delay == 0 {
                return bad(3, format!("synapse {} -> {} has weight {} and delay {}", s.pre, s.post, s.weight, s.delay));
            }
            if s.post == neurons[con].id {
                return bad(2, format!("synapse {} -> {} drives the constant input", s.pre, s.post));
            }
            if s.pre == neurons[rej].id || s.post == neurons[rej].id {
                return bad(6, format!("synapse {} -> {} touches the reject neuron", s.pre, s.post));
            }
        }
        if self.snn.reset_mode() != ResetMode::Overflow {
            return bad(5, "reset mode must be overflow".into());
        }
        Ok(Roles { con, acc, rej })
    }
}

/// Outcome of running a configuration under the reduction's semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixRun {
    /// `fires[i][k]` for neuron index `i` in network order.
    pub fires: Vec<Vec<bool>>,
    /// Reject fires at `k` iff accept has not fired at any step `<= k`.
    pub rej_fires: Vec<bool>,
    pub acc_first: Option<u32>,
    /// Spikes of every neuron except the reject neuron.
    pub energy: u64,
    pub accepted: bool,
    pub trace: Vec<SpikeEvent>,
}

/// Runs the network for `t` steps with the constant input firing at every
/// step. Accepts iff the accept neuron fires within the horizon and the
/// energy stays below `e`.
pub fn simulate(cfg: &ReductionConfig) -> Result<AppendixRun, TnfrError> {
    let roles = cfg.check()?;
    let t = cfg.t as usize;
    let mut net = cfg.snn.clone();
    let con_id = net.neurons()[roles.con].id;
    for k in 0..t {
        net.schedule(con_id, k as u64).map_err(|e| TnfrError::Internal(e.to_string()))?;
    }
    let mut state = net.initial_state();
    for k in 0..t {
        net.step(&mut state);
        for (i, n) in net.neurons().iter().enumerate() {
            if i == roles.con {
                continue;
            }
            let v = state.potential(n.id).unwrap_or(0);
            if v >= n.threshold {
                return Err(TnfrError::Assumption {
                    index: 7,
                    msg: format!("neuron {} keeps {v} >= threshold {} after firing at t={k}", n.id, n.threshold),
                });
            }
        }
    }
    let index: HashMap<NeuronId, usize> = net.neurons().iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    let mut fires = vec![vec![false; t]; net.neurons().len()];
    for ev in &state.trace {
        fires[index[&ev.neuron]][ev.time as usize] = true;
    }
    let acc_first = fires[roles.acc].iter().position(|&f| f).map(|k| k as u32);
    let rej_fires: Vec<bool> = (0..t).map(|k| acc_first.is_none_or(|a| a as usize > k)).collect();
    let energy = fires.iter().enumerate().filter(|(i, _)| *i != roles.rej).map(|(_, f)| f.iter().filter(|&&x| x).count() as u64).sum();
    let accepted = acc_first.is_some() && energy < cfg.e as u64;
    Ok(AppendixRun { fires, rej_fires, acc_first, energy, accepted, trace: state.trace })
}

/// Deliberate corruptions used to show the verifier has teeth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Mutation {
    #[default]
    None,
    /// Omit the failure gadget and its master arcs.
    DropFailureGadget,
    /// Let the time channel reach the sink without the constant-input unit.
    DropConstantTie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Master(u8),
    ConSrc,
    ConUnit(usize),
    ConRej(usize),
    ConTie,
    Chain(usize, usize),
    Drain(usize),
    Fire(usize, usize),
    MergeSupply(usize, usize),
    MergeOut(usize, usize),
    Spend(usize, usize),
    Assign(usize, usize),
    Post(usize, usize, usize),
    Residue(usize, usize),
    Latch(usize),
    Escape(usize, usize),
    ESrc,
    ELink(usize),
    EOut,
    ERes,
    ESlack,
    ESink,
    TSrc,
    TRej(usize),
    TLink(usize),
    TOut,
    TRes,
    TSlack,
    TAnd,
    AndOut,
    RZ(usize),
    LZ(usize),
    LR(usize),
    ZW(usize),
    WL(usize),
    WR(usize),
    FSrc,
    FLink(usize),
    FOut(usize),
    FSink,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub instance: TnfrInstance,
    pub mutation: Mutation,
    keys: HashMap<Key, usize>,
    roles: Roles,
}

struct Builder {
    inst: TnfrInstance,
    keys: HashMap<Key, usize>,
}

impl Builder {
    fn node(&mut self, kind: NodeKind, tag: Provenance) -> usize {
        self.inst.add_node(kind, tag)
    }

    fn arc(&mut self, key: Key, from: usize, to: usize, cmin: u64, cmax: u64, tag: Provenance) {
        let id = self.inst.add_arc(from, to, cmin, cmax, tag);
        let dup = self.keys.insert(key, id);
        debug_assert!(dup.is_none(), "duplicate key {key:?}");
    }
}

/// Synapses of neuron index `a` that land inside the horizon when `a`
/// fires at `k`: `(synapse index, post index, arrival time, weight)`.
fn in_horizon(snn: &SpikingNetwork, index: &HashMap<NeuronId, usize>, a: usize, k: usize, t: usize) -> Vec<(usize, usize, usize, u64)> {
    let id = snn.neurons()[a].id;
    snn.synapses()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.pre == id && k + (s.delay as usize) < t)
        .map(|(i, s)| (i, index[&s.post], k + s.delay as usize, s.weight as u64))
        .collect()
}

pub fn reduce(cfg: &ReductionConfig) -> Result<Reduction, TnfrError> {
    reduce_with(cfg, Mutation::None)
}

pub fn reduce_with(cfg: &ReductionConfig, mutation: Mutation) -> Result<Reduction, TnfrError> {
    let roles = cfg.check()?;
    let snn = &cfg.snn;
    let neurons = snn.neurons();
    let index: HashMap<NeuronId, usize> = neurons.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    let (t, e) = (cfg.t as usize, cfg.e as u64);
    let tt = t as u64;
    let keep_failure = mutation != Mutation::DropFailureGadget;
    let keep_tie = mutation != Mutation::DropConstantTie;
    let mut b = Builder { inst: TnfrInstance::new(), keys: HashMap::new() };
    let nid = |a: usize| Some(neurons[a].id.0);

    let s = b.node(NodeKind::Source, tag(8, None, None, "master source"));
    let sink = b.node(NodeKind::Sink, tag(8, None, None, "master sink"));

    // step 1: constant input gadget
    let p_con = b.node(NodeKind::Supply, tag(1, nid(roles.con), None, "p_con"));
    let n_src = b.node(NodeKind::Plain, tag(1, nid(roles.con), None, "n_src"));
    let units = 2 * tt + u64::from(keep_tie);
    b.arc(Key::ConSrc, p_con, n_src, units, units, tag(1, nid(roles.con), None, "constant supply"));

    // step 2: unrolled neuron vertices
    let mut n = vec![Vec::new(); neurons.len()];
    for a in 0..neurons.len() {
        if a == roles.rej {
            continue;
        }
        n[a] = (0..t).map(|k| b.node(NodeKind::Plain, tag(2, nid(a), Some(k), "n"))).collect();
    }
    for k in 0..t {
        b.arc(Key::ConUnit(k), n_src, n[roles.con][k], 1, 1, tag(1, nid(roles.con), Some(k), "constant spike"));
    }
    for a in 0..neurons.len() {
        if a == roles.rej || a == roles.con {
            continue;
        }
        let cap = neurons[a].threshold as u64 - 1;
        if cap == 0 {
            continue;
        }
        for k in 0..t - 1 {
            b.arc(Key::Chain(a, k), n[a][k], n[a][k + 1], 0, cap, tag(2, nid(a), Some(k), "potential carry"));
        }
        let drain = b.node(NodeKind::Reservoir, tag(2, nid(a), None, "horizon drain"));
        b.arc(Key::Drain(a), n[a][t - 1], drain, 0, cap, tag(2, nid(a), Some(t - 1), "horizon drain"));
    }

    // gadget vertices used by the synapse gadgets
    let j: Vec<usize> = (0..e).map(|m| b.node(NodeKind::Plain, tag(4, None, Some(m as usize), "j"))).collect();
    let h: Vec<usize> = (0..t).map(|k| b.node(NodeKind::Plain, tag(5, None, Some(k), "h"))).collect();
    let f: Vec<usize> = if keep_failure { (0..t).map(|k| b.node(NodeKind::Plain, tag(7, None, Some(k), "f"))).collect() } else { Vec::new() };
    let latch: Vec<[usize; 4]> = (0..t)
        .map(|k| {
            let r = b.node(NodeKind::Plain, tag(5, nid(roles.rej), Some(k), "R"));
            let z = b.node(NodeKind::Plain, tag(5, nid(roles.rej), Some(k), "Z"));
            let l = b.node(NodeKind::Plain, tag(5, nid(roles.acc), Some(k), "L"));
            let w = b.node(NodeKind::Plain, tag(5, nid(roles.acc), Some(k), "W"));
            [r, z, l, w]
        })
        .collect();

    // steps 3 and 6: synapse gadgets
    for a in 0..neurons.len() {
        if a == roles.rej {
            continue;
        }
        let th = if a == roles.con { 1 } else { neurons[a].threshold };
        for k in 0..t {
            let syns = in_horizon(snn, &index, a, k, t);
            let out: i64 = syns.iter().map(|s| s.3 as i64).sum();
            let is_acc = a == roles.acc;
            let res = th - 1 - out - i64::from(is_acc);
            let n_out = b.node(NodeKind::Plain, tag(6, nid(a), Some(k), "n_out"));
            if res < 0 {
                let q = (-res) as u64;
                let merge = b.node(NodeKind::Plain, tag(6, nid(a), Some(k), "merge"));
                let p = b.node(NodeKind::Supply, tag(6, nid(a), Some(k), "p"));
                b.arc(Key::Fire(a, k), n[a][k], merge, th as u64, th as u64, tag(6, nid(a), Some(k), "fire"));
                b.arc(Key::MergeSupply(a, k), p, merge, q, q, tag(6, nid(a), Some(k), "excess supply"));
                let total = th as u64 + q;
                b.arc(Key::MergeOut(a, k), merge, n_out, total, total, tag(6, nid(a), Some(k), "merged"));
            } else {
                b.arc(Key::Fire(a, k), n[a][k], n_out, th as u64, th as u64, tag(6, nid(a), Some(k), "fire"));
                if res > 0 {
                    let r = b.node(NodeKind::Reservoir, tag(6, nid(a), Some(k), "r"));
                    b.arc(Key::Residue(a, k), n_out, r, res as u64, res as u64, tag(6, nid(a), Some(k), "residue"));
                }
            }
            let jm = j[k.min(j.len() - 1)];
            b.arc(Key::Spend(a, k), n_out, jm, 1, 1, tag(6, nid(a), Some(k), "energy unit"));
            if out > 0 {
                let n_ass = b.node(NodeKind::Plain, tag(6, nid(a), Some(k), "n_ass"));
                b.arc(Key::Assign(a, k), n_out, n_ass, out as u64, out as u64, tag(6, nid(a), Some(k), "assign"));
                for (si, post, arrive, w) in syns {
                    if w > 0 {
                        b.arc(Key::Post(si, k, post), n_ass, n[post][arrive], w, w, tag(3, nid(a), Some(k), "synapse"));
                    }
                }
            }
            if is_acc {
                b.arc(Key::Latch(k), n_out, latch[k][2], 1, 1, tag(6, nid(a), Some(k), "accept latch"));
            }
        }
    }

    // step 7: failure escapes
    if keep_failure {
        for a in 0..neurons.len() {
            if a == roles.rej {
                continue;
            }
            for k in 0..t {
                b.arc(Key::Escape(a, k), n[a][k], f[k], 0, 1, tag(7, nid(a), Some(k), "failure escape"));
            }
        }
    }

    // step 4: energy gadget
    let s_e = b.node(NodeKind::Plain, tag(4, None, None, "s_e"));
    let t_e = b.node(NodeKind::Plain, tag(4, None, None, "t_e"));
    let last = *j.last().expect("e >= 1");
    b.arc(Key::ESrc, s_e, j[0], 0, 1, tag(4, None, None, "channel in"));
    for m in 0..j.len() - 1 {
        b.arc(Key::ELink(m), j[m], j[m + 1], 0, e, tag(4, None, Some(m), "link"));
    }
    b.arc(Key::EOut, last, t_e, e, e, tag(4, None, None, "exit"));
    if e > 1 {
        let r_e = b.node(NodeKind::Reservoir, tag(4, None, None, "r_e"));
        let p_e = b.node(NodeKind::Supply, tag(4, None, None, "slack"));
        b.arc(Key::ERes, t_e, r_e, e - 1, e - 1, tag(4, None, None, "budget sink"));
        b.arc(Key::ESlack, p_e, last, 0, e - 1, tag(4, None, None, "slack"));
    }
    b.arc(Key::ESink, t_e, sink, 0, 1, tag(4, None, None, "channel out"));

    // step 5: time gadget, reject latch and AND gate
    let s_t = b.node(NodeKind::Plain, tag(5, None, None, "s_t"));
    let t_t = b.node(NodeKind::Plain, tag(5, None, None, "t_t"));
    let and = b.node(NodeKind::Plain, tag(5, None, None, "and"));
    b.arc(Key::TSrc, s_t, h[0], 0, 1, tag(5, None, None, "channel in"));
    for k in 0..t {
        b.arc(Key::ConRej(k), n_src, latch[k][0], 1, 1, tag(5, nid(roles.rej), Some(k), "reject token"));
        b.arc(Key::TRej(k), latch[k][0], h[k], 0, 1, tag(5, nid(roles.rej), Some(k), "reject fires"));
    }
    for l in 0..t - 1 {
        b.arc(Key::TLink(l), h[l], h[l + 1], 0, tt, tag(5, None, Some(l), "link"));
    }
    b.arc(Key::TOut, h[t - 1], t_t, tt, tt, tag(5, None, None, "exit"));
    if t > 1 {
        let r_t = b.node(NodeKind::Reservoir, tag(5, None, None, "r_t"));
        let p_t = b.node(NodeKind::Supply, tag(5, None, None, "slack"));
        b.arc(Key::TRes, t_t, r_t, tt - 1, tt - 1, tag(5, None, None, "budget sink"));
        b.arc(Key::TSlack, p_t, h[t - 1], 0, tt - 1, tag(5, None, None, "slack"));
    }
    b.arc(Key::TAnd, t_t, and, 1, 1, tag(5, None, None, "channel out"));
    if keep_tie {
        b.arc(Key::ConTie, n_src, and, 1, 1, tag(5, nid(roles.con), None, "constant tie"));
        b.arc(Key::AndOut, and, sink, 2, 2, tag(5, None, None, "and out"));
    } else {
        b.arc(Key::AndOut, and, sink, 1, 1, tag(5, None, None, "and out"));
    }
    let r_latch = b.node(NodeKind::Reservoir, tag(5, nid(roles.acc), None, "latch sink"));
    for k in 0..t {
        let [r, z, l, w] = latch[k];
        b.arc(Key::RZ(k), r, z, 0, 1, tag(5, nid(roles.rej), Some(k), "reject silent"));
        b.arc(Key::LZ(k), l, z, 0, 1, tag(5, nid(roles.acc), Some(k), "latched"));
        b.arc(Key::LR(k), l, r_latch, 0, 1, tag(5, nid(roles.acc), Some(k), "latch overflow"));
        b.arc(Key::ZW(k), z, w, 2, 2, tag(5, nid(roles.rej), Some(k), "silence"));
        let next = if k + 1 < t { latch[k + 1][2] } else { r_latch };
        b.arc(Key::WL(k), w, next, 1, 1, tag(5, nid(roles.acc), Some(k), "latch carry"));
        b.arc(Key::WR(k), w, r_latch, 1, 1, tag(5, nid(roles.rej), Some(k), "token sink"));
    }

    // step 7: failure chain
    if keep_failure {
        let s_f = b.node(NodeKind::Plain, tag(7, None, None, "s_f"));
        let t_f = b.node(NodeKind::Plain, tag(7, None, None, "t_f"));
        b.arc(Key::FSrc, s_f, f[0], 0, 1, tag(7, None, None, "channel in"));
        for l in 0..t {
            if l + 1 < t {
                b.arc(Key::FLink(l), f[l], f[l + 1], 0, 1, tag(7, None, Some(l), "link"));
            }
            b.arc(Key::FOut(l), f[l], t_f, 0, 1, tag(7, None, Some(l), "exit"));
        }
        b.arc(Key::FSink, t_f, sink, 0, 1, tag(7, None, None, "channel out"));
        b.arc(Key::Master(2), s, s_f, 0, 1, tag(8, None, None, "to failure"));
    }

    // step 8: master arcs
    b.arc(Key::Master(0), s, s_e, 0, 1, tag(8, None, None, "to energy"));
    b.arc(Key::Master(1), s, s_t, 0, 1, tag(8, None, None, "to time"));
    b.inst.d = 2;
    Ok(Reduction { instance: b.inst, mutation, keys: b.keys, roles })
}

impl Reduction {
    pub fn arc_of(&self, label: &str) -> Vec<usize> {
        (0..self.instance.arcs.len()).filter(|&i| self.instance.arcs[i].tag.label == label).collect()
    }

    /// Translates an accepting run into a flow of value 3.
    pub fn witness(&self, cfg: &ReductionConfig, run: &AppendixRun) -> Result<Vec<u64>, TnfrError> {
        if !run.accepted {
            return Err(TnfrError::Internal("only accepting runs have witnesses".into()));
        }
        let roles = self.roles;
        let snn = &cfg.snn;
        let neurons = snn.neurons();
        let index: HashMap<NeuronId, usize> = neurons.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
        let (t, e) = (cfg.t as usize, cfg.e as u64);
        let mut flow = vec![0u64; self.instance.arcs.len()];
        let mut set = |key: Key, v: u64| {
            if let Some(&a) = self.keys.get(&key) {
                flow[a] = v;
            }
        };

        // potentials, recomputed from the firing pattern
        let mut input = vec![vec![0u64; t]; neurons.len()];
        for k in 0..t {
            for a in 0..neurons.len() {
                if a == roles.rej || !run.fires[a][k] {
                    continue;
                }
                for (_, post, arrive, w) in in_horizon(snn, &index, a, k, t) {
                    input[post][arrive] += w;
                }
            }
        }
        for a in 0..neurons.len() {
            if a == roles.rej || a == roles.con {
                continue;
            }
            let th = neurons[a].threshold as u64;
            let mut carry = 0;
            for k in 0..t {
                let v = carry + input[a][k];
                let fire = v >= th;
                if fire != run.fires[a][k] {
                    return Err(TnfrError::Internal(format!("flow dynamics disagree with the trace at neuron {a}, t={k}")));
                }
                carry = if fire { v - th } else { v };
                if k + 1 < t {
                    set(Key::Chain(a, k), carry);
                } else {
                    set(Key::Drain(a), carry);
                }
            }
        }

        set(Key::ConSrc, 2 * t as u64 + 1);
        set(Key::ConTie, 1);
        let mut spent = vec![0u64; e as usize];
        for k in 0..t {
            set(Key::ConUnit(k), 1);
            set(Key::ConRej(k), 1);
            for a in 0..neurons.len() {
                if a == roles.rej || !run.fires[a][k] {
                    continue;
                }
                let th = if a == roles.con { 1 } else { neurons[a].threshold as u64 };
                let syns = in_horizon(snn, &index, a, k, t);
                let out: u64 = syns.iter().map(|s| s.3).sum();
                let res = th as i64 - 1 - out as i64 - i64::from(a == roles.acc);
                set(Key::Fire(a, k), th);
                if res < 0 {
                    set(Key::MergeSupply(a, k), (-res) as u64);
                    set(Key::MergeOut(a, k), th + (-res) as u64);
                } else if res > 0 {
                    set(Key::Residue(a, k), res as u64);
                }
                set(Key::Spend(a, k), 1);
                spent[k.min(e as usize - 1)] += 1;
                if out > 0 {
                    set(Key::Assign(a, k), out);
                    for (si, post, _, w) in syns {
                        set(Key::Post(si, k, post), w);
                    }
                }
                if a == roles.acc {
                    set(Key::Latch(k), 1);
                }
            }
        }

        // energy channel
        let total: u64 = spent.iter().sum();
        set(Key::Master(0), 1);
        set(Key::ESrc, 1);
        let mut running = 1;
        for m in 0..e as usize - 1 {
            running += spent[m];
            set(Key::ELink(m), running);
        }
        set(Key::EOut, e);
        set(Key::ERes, e - 1);
        set(Key::ESlack, e - 1 - total);
        set(Key::ESink, 1);

        // time channel and reject latch
        set(Key::Master(1), 1);
        set(Key::TSrc, 1);
        let mut running = 1;
        let mut latched = false;
        let mut prev_latched = false;
        let mut rejects = 0;
        for k in 0..t {
            let rej = run.rej_fires[k];
            rejects += u64::from(rej);
            set(Key::TRej(k), u64::from(rej));
            running += u64::from(rej);
            if k + 1 < t {
                set(Key::TLink(k), running);
            }
            let acc_now = run.fires[roles.acc][k];
            latched |= acc_now;
            let inflow = u64::from(acc_now) + u64::from(prev_latched);
            set(Key::RZ(k), u64::from(!rej));
            set(Key::LZ(k), u64::from(latched));
            set(Key::LR(k), inflow - u64::from(latched));
            set(Key::ZW(k), 2 * u64::from(latched));
            set(Key::WL(k), u64::from(latched));
            set(Key::WR(k), u64::from(latched));
            prev_latched = latched;
        }
        set(Key::TOut, t as u64);
        set(Key::TRes, t as u64 - 1);
        set(Key::TSlack, t as u64 - 1 - rejects);
        set(Key::TAnd, 1);
        set(Key::AndOut, 2);

        // failure channel
        set(Key::Master(2), 1);
        set(Key::FSrc, 1);
        for l in 0..t - 1 {
            set(Key::FLink(l), 1);
        }
        set(Key::FOut(t - 1), 1);
        set(Key::FSink, 1);
        Ok(flow)
    }
}

/// Runs the configuration and, if it accepts, returns a value-3 flow.
pub fn simulate_to_witness(cfg: &ReductionConfig) -> Result<Option<(Reduction, Vec<u64>)>, TnfrError> {
    let run = simulate(cfg)?;
    if !run.accepted {
        return Ok(None);
    }
    let red = reduce(cfg)?;
    let w = red.witness(cfg, &run)?;
    Ok(Some((red, w)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub accepted: bool,
    pub energy: u64,
    pub acc_first: Option<u32>,
    pub nodes: usize,
    pub arcs: usize,
    /// Value of the translated witness, if the run accepted and the witness
    /// passed the instance checker.
    pub witness_value: Option<u64>,
    pub witness_errors: Vec<TnfrViolation>,
    /// Verdict of the exact feasibility search.
    pub checker_yes: bool,
    pub expansions: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

pub fn verify_reduction(cfg: &ReductionConfig, opts: &CheckOptions) -> Result<VerificationReport, TnfrError> {
    verify_reduction_with(cfg, Mutation::None, opts)
}

/// Checks both directions: an accepting run yields a valid value-3 flow
/// and the checker says yes; a rejecting run makes the checker say no.
pub fn verify_reduction_with(cfg: &ReductionConfig, mutation: Mutation, opts: &CheckOptions) -> Result<VerificationReport, TnfrError> {
    let run = simulate(cfg)?;
    let red = reduce_with(cfg, mutation)?;
    let inst = &red.instance;
    let (mut witness_value, mut witness_errors) = (None, Vec::new());
    if run.accepted {
        let w = red.witness(cfg, &run)?;
        match inst.validate(&w) {
            Ok(v) => witness_value = Some(v),
            Err(errs) => witness_errors = errs,
        }
    }
    let check = check_feasible(inst, opts)?;
    let passed = if run.accepted { witness_value == Some(3) && check.feasible } else { !check.feasible };
    let counterexample = (!passed).then(|| {
        let mut dump = format!(
            "accepted={} energy={} acc_first={:?} checker_yes={} witness_value={:?}\n",
            run.accepted, run.energy, run.acc_first, check.feasible, witness_value
        );
        for v in &witness_errors {
            let arc_tag = match v {
                TnfrViolation::Arc { arc, .. } => inst.arcs[*arc].tag.to_string(),
                TnfrViolation::Conservation { node, .. } => inst.nodes[*node].tag.to_string(),
                TnfrViolation::Length { .. } => String::new(),
            };
            dump.push_str(&format!("{v:?} at {arc_tag}\n"));
        }
        if let Some(w) = &check.witness {
            for (i, f) in w.iter().enumerate().filter(|(_, f)| **f > 0) {
                dump.push_str(&format!("arc {i} flow {f} ({})\n", inst.arcs[i].tag));
            }
        }
        dump.push_str(&cfg.snn.to_netlist());
        dump
    });
    Ok(VerificationReport {
        accepted: run.accepted,
        energy: run.energy,
        acc_first: run.acc_first,
        nodes: inst.nodes.len(),
        arcs: inst.arcs.len(),
        witness_value,
        witness_errors,
        checker_yes: check.feasible,
        expansions: check.expansions,
        passed,
        counterexample,
    })
}

/// Small configurations used by tests, the CLI and the bindings.
pub mod toys {
    use super::ReductionConfig;
    use crate::snn::{Leak, Neuron, NeuronId, ResetMode, Role, SpikingNetwork};

    /// Input 0, accept 1, reject 2, then `extra` standard neurons with the
    /// given thresholds (ids 3..). Synapses are `(pre, post, delay, weight)`.
    pub fn network(acc_threshold: i64, extra: &[i64], synapses: &[(u32, u32, u32, i64)]) -> SpikingNetwork {
        let mut net = SpikingNetwork::new().with_reset_mode(ResetMode::Overflow);
        net.add_neuron(Neuron::new(0, 1, 0, Leak::ONE, 0, Role::Input)).unwrap();
        net.add_neuron(Neuron::new(1, acc_threshold, 0, Leak::ONE, 0, Role::Accept)).unwrap();
        net.add_neuron(Neuron::new(2, 1, 0, Leak::ONE, 0, Role::Reject)).unwrap();
        for (i, &th) in extra.iter().enumerate() {
            net.add_neuron(Neuron::new(3 + i as u32, th, 0, Leak::ONE, 0, Role::Standard)).unwrap();
        }
        for &(pre, post, d, w) in synapses {
            net.connect(NeuronId(pre), NeuronId(post), d, w).unwrap();
        }
        net
    }

    /// Input drives a threshold-1 accept neuron: accepts at t = 1 with
    /// three spikes when `t = 2`.
    pub fn direct(t: u32, e: u32) -> ReductionConfig {
        ReductionConfig::new(network(1, &[], &[(0, 1, 1, 1)]), t, e)
    }

    /// Named suite: `(name, config, expected verdict)`.
    pub fn suite() -> Vec<(&'static str, ReductionConfig, bool)> {
        vec![
            ("direct", direct(2, 4), true),
            ("energy-violating", direct(2, 3), false),
            ("time-violating", ReductionConfig::new(network(3, &[], &[(0, 1, 1, 1)]), 3, 6), false),
            ("relay", ReductionConfig::new(network(1, &[1], &[(0, 3, 1, 1), (3, 1, 1, 1)]), 3, 9), true),
            ("slow-relay", ReductionConfig::new(network(1, &[2], &[(0, 3, 1, 1), (3, 1, 1, 1)]), 3, 9), false),
            ("integrator", ReductionConfig::new(network(2, &[], &[(0, 1, 1, 1)]), 3, 9), true),
            ("fan-in", ReductionConfig::new(network(2, &[1, 1], &[(0, 3, 1, 1), (0, 4, 1, 1), (3, 1, 1, 1), (4, 1, 1, 1)]), 3, 9), true),
            ("heavy-synapse", ReductionConfig::new(network(3, &[], &[(0, 1, 1, 2)]), 3, 9), true),
            ("delay-two", ReductionConfig::new(network(1, &[], &[(0, 1, 2, 1)]), 3, 9), true),
            ("delay-too-long", ReductionConfig::new(network(1, &[], &[(0, 1, 3, 1)]), 3, 9), false),
            ("disconnected", ReductionConfig::new(network(1, &[1], &[(0, 3, 1, 1)]), 2, 6), false),
        ]
    }
}
