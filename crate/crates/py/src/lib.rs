use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spikeflow::bench::{self, BenchConfig, BenchMode, Suite};
use spikeflow::flow::{self, edmonds_karp, generate_random, parse_dimacs, to_dimacs};
use spikeflow::naive;
use spikeflow::snn::{self, ResetMode, StopCondition};
use spikeflow::spiking_maxflow::{self, Mode, SolveOptions};
use spikeflow::tnfr::{self, CheckOptions, ReductionConfig, TnfrInstance};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

#[pyclass(name = "FlowNetwork", module = "spikeflow_py")]
#[derive(Clone)]
struct PyFlowNetwork {
    inner: flow::FlowNetwork,
}

#[pymethods]
impl PyFlowNetwork {
    #[new]
    fn new(n: usize, source: usize, sink: usize, edges: Vec<(usize, usize, u64)>) -> PyResult<Self> {
        flow::FlowNetwork::from_edges(n, source, sink, &edges).map(|inner| Self { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        parse_dimacs(text.as_bytes()).map(|inner| Self { inner }).map_err(value_err)
    }

    #[staticmethod]
    #[pyo3(signature = (n, m, c_max, seed=0))]
    fn random(n: usize, m: usize, c_max: u64, seed: u64) -> PyResult<Self> {
        generate_random(n, m, c_max, seed).map(|inner| Self { inner }).map_err(value_err)
    }

    fn to_dimacs(&self) -> String {
        to_dimacs(&self.inner)
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, u64)> {
        self.inner.edges().iter().map(|e| (e.from, e.to, e.capacity)).collect()
    }

    fn __repr__(&self) -> String {
        format!("FlowNetwork(nodes={}, edges={})", self.inner.node_count(), self.inner.edge_count())
    }
}

#[pyclass(name = "SolveResult", module = "spikeflow_py", get_all)]
struct PySolveResult {
    value: u64,
    flows: Vec<u64>,
    episodes: usize,
    c_voltage_sum: i64,
    controller_time: u64,
    wm_peak: u64,
    oracle_time: u64,
    oracle_energy: u64,
    json: String,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!("SolveResult(value={}, episodes={})", self.value, self.episodes)
    }
}

#[pyclass(name = "SpikingNetwork", module = "spikeflow_py")]
struct PySpikingNetwork {
    inner: snn::SpikingNetwork,
}

#[pymethods]
impl PySpikingNetwork {
    #[staticmethod]
    fn from_netlist(text: &str) -> PyResult<Self> {
        snn::SpikingNetwork::parse_netlist(text.as_bytes()).map(|inner| Self { inner }).map_err(value_err)
    }

    fn to_netlist(&self) -> String {
        self.inner.to_netlist()
    }

    fn set_overflow_reset(&mut self, on: bool) {
        self.inner.set_reset_mode(if on { ResetMode::Overflow } else { ResetMode::Fixed });
    }

    /// Spike trace as `(time, neuron_id)` pairs.
    fn run(&self, steps: u64) -> Vec<(u64, u32)> {
        self.inner.run(steps, &StopCondition::StepCount(steps)).trace.iter().map(|e| (e.time, e.neuron.0)).collect()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }
}

/// Classical max flow: `(value, per-edge flows)`.
#[pyfunction]
fn max_flow(g: &PyFlowNetwork) -> (u64, Vec<u64>) {
    let f = edmonds_karp(&g.inner);
    (f.value, f.flows)
}

#[pyfunction]
#[pyo3(signature = (g, mode="paper-faithful", wm_capacity=8))]
fn solve(g: &PyFlowNetwork, mode: &str, wm_capacity: usize) -> PyResult<PySolveResult> {
    let mode = match mode {
        "paper-faithful" => Mode::PaperFaithful,
        "residual" => Mode::Residual,
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    };
    let out = spiking_maxflow::solve_with(&g.inner, &SolveOptions { mode, wm_capacity }).map_err(runtime_err)?;
    Ok(PySolveResult {
        value: out.value,
        flows: out.flow.flows.clone(),
        episodes: out.episodes,
        c_voltage_sum: out.c_voltage_sum,
        controller_time: out.report.controller_time,
        wm_peak: out.report.controller_wm_peak,
        oracle_time: out.report.oracle_time,
        oracle_energy: out.report.oracle_energy,
        json: out.to_json().to_string(),
    })
}

/// Single-consultation decider for max flow > d: `(accept, accept fire time)`.
#[pyfunction]
fn decide_naive(g: &PyFlowNetwork, d: u64) -> PyResult<(bool, Option<u64>)> {
    let out = naive::decide_naive(&g.inner, d).map_err(runtime_err)?;
    Ok((out.accept, out.accept_fired_at))
}

fn reduction_config(netlist: &str, t: u32, e: u32) -> PyResult<ReductionConfig> {
    let mut net = snn::SpikingNetwork::parse_netlist(netlist.as_bytes()).map_err(value_err)?;
    net.set_reset_mode(ResetMode::Overflow);
    Ok(ReductionConfig::new(net, t, e))
}

/// TNFR instance text for a time- and energy-bounded network.
#[pyfunction]
fn reduce(netlist: &str, t: u32, e: u32) -> PyResult<String> {
    let red = tnfr::reduce(&reduction_config(netlist, t, e)?).map_err(value_err)?;
    Ok(red.instance.to_text())
}

/// Whether a TNFR instance admits a flow above its threshold.
#[pyfunction]
#[pyo3(signature = (text, max_arcs=64))]
fn tnfr_check(text: &str, max_arcs: usize) -> PyResult<bool> {
    let inst = TnfrInstance::parse_text(text.as_bytes()).map_err(value_err)?;
    let res = tnfr::check_feasible(&inst, &CheckOptions { max_arcs, ..CheckOptions::default() }).map_err(runtime_err)?;
    Ok(res.feasible)
}

/// Verification report for both directions of the reduction, as JSON.
#[pyfunction]
fn verify_reduction(netlist: &str, t: u32, e: u32) -> PyResult<String> {
    let cfg = reduction_config(netlist, t, e)?;
    let rep = tnfr::verify_reduction(&cfg, &CheckOptions { max_arcs: 4096, ..CheckOptions::default() }).map_err(value_err)?;
    serde_json::to_string(&rep).map_err(runtime_err)
}

/// Runs a sweep; returns `(results CSV, summary JSON)`.
#[pyfunction]
#[pyo3(signature = (suite="sparse", sizes=None, samples=10, seed=0, mode="paper-faithful"))]
fn run_bench(suite: &str, sizes: Option<Vec<usize>>, samples: usize, seed: u64, mode: &str) -> PyResult<(String, String)> {
    let suite = match suite {
        "sparse" => Suite::Sparse,
        "dense" => Suite::Dense,
        other => return Err(PyValueError::new_err(format!("unknown suite `{other}`"))),
    };
    let mode = match mode {
        "paper-faithful" => BenchMode::PaperFaithful,
        "residual" => BenchMode::Residual,
        "classical" => BenchMode::Classical,
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    };
    if samples == 0 {
        return Err(PyValueError::new_err("samples must be at least 1"));
    }
    let cfg = BenchConfig { sizes: sizes.unwrap_or_else(|| suite.default_sizes()), samples, seed, mode, ..BenchConfig::new(suite) };
    let report = bench::run_bench(&cfg).map_err(runtime_err)?;
    let mut csv = Vec::new();
    bench::write_csv(&report.rows, &mut csv).map_err(runtime_err)?;
    let summary = serde_json::to_string(&report.summary).map_err(runtime_err)?;
    Ok((String::from_utf8(csv).map_err(runtime_err)?, summary))
}

#[pymodule]
fn spikeflow_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFlowNetwork>()?;
    m.add_class::<PySolveResult>()?;
    m.add_class::<PySpikingNetwork>()?;
    m.add_function(wrap_pyfunction!(max_flow, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(decide_naive, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(tnfr_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(run_bench, m)?)?;
    Ok(())
}
