//! Benchmark sweeps over random flow networks: spiking solver against the
//! classical one, with per-query spike and timestep statistics.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::flow::{edmonds_karp_with_stats, generate_random, validate_flow, write_dimacs, FlowNetwork};
use crate::spiking_maxflow::{solve_with, Mode, SolveOptions, DEFAULT_WM_CAPACITY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Sparse,
    Dense,
}

impl Suite {
    pub fn edges_for(self, n: usize) -> usize {
        match self {
            Suite::Sparse => n * 14 / 10,
            Suite::Dense => n * (n - 1) / 2,
        }
    }

    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Suite::Sparse => (5..=100).step_by(5).collect(),
            Suite::Dense => (5..=40).step_by(5).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchMode {
    PaperFaithful,
    Residual,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub suite: Suite,
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub c_max: u64,
    pub seed: u64,
    pub mode: BenchMode,
    /// Where divergence counterexamples go; none means they are not written.
    pub counterexample_dir: Option<PathBuf>,
}

impl BenchConfig {
    pub fn new(suite: Suite) -> Self {
        BenchConfig {
            suite,
            sizes: suite.default_sizes(),
            samples: 10,
            c_max: 10,
            seed: 0,
            mode: BenchMode::PaperFaithful,
            counterexample_dir: None,
        }
    }
}

/// One instance of a sweep. Every row carries the seed it was generated
/// from, so `generate_random(n_nodes, n_edges, c_max, seed)` replays it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub sample: usize,
    pub seed: u64,
    pub value: u64,
    pub classical_value: u64,
    /// Classical value minus spiking value.
    pub divergence: i64,
    pub episodes: usize,
    pub mean_spikes: f64,
    pub mean_timesteps: f64,
    pub max_timesteps: u64,
    pub max_spikes: u64,
    pub max_hr_spikes: u32,
    pub mean_path_len: f64,
    pub controller_time: u64,
    pub wm_peak: u64,
    pub classical_time_steps: u64,
    /// Per-episode bound violations found by the harness, plus one if the
    /// returned flow is not a valid flow.
    pub invariant_violations: usize,
    pub error: String,
}

/// Per-instance seed, a splitmix64 mix of the sweep seed, size and sample.
pub fn instance_seed(seed: u64, n: usize, sample: usize) -> u64 {
    let mut z = seed ^ ((n as u64) << 32) ^ sample as u64;
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 { 0.0 } else { sum / n as f64 }
}

pub fn run_instance(g: &FlowNetwork, mode: BenchMode, sample: usize, seed: u64) -> BenchRow {
    let (classical, stats) = edmonds_karp_with_stats(g);
    let mut row = BenchRow {
        n_nodes: g.node_count(),
        n_edges: g.edge_count(),
        sample,
        seed,
        value: classical.value,
        classical_value: classical.value,
        divergence: 0,
        episodes: 0,
        mean_spikes: 0.0,
        mean_timesteps: 0.0,
        max_timesteps: 0,
        max_spikes: 0,
        max_hr_spikes: 0,
        mean_path_len: mean(stats.path_lengths.iter().map(|&l| l as f64)),
        controller_time: 0,
        wm_peak: 0,
        classical_time_steps: stats.ops,
        invariant_violations: 0,
        error: String::new(),
    };
    let mode = match mode {
        BenchMode::Classical => return row,
        BenchMode::PaperFaithful => Mode::PaperFaithful,
        BenchMode::Residual => Mode::Residual,
    };
    let out = match solve_with(g, &SolveOptions { mode, wm_capacity: DEFAULT_WM_CAPACITY }) {
        Ok(out) => out,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let e = g.edge_count() as u64;
    let arcs = out.map.arcs as u64;
    let eps = &out.episode_stats;
    row.value = out.value;
    row.divergence = classical.value as i64 - out.value as i64;
    row.episodes = out.episodes;
    row.mean_spikes = mean(eps.iter().map(|s| s.spikes as f64));
    row.mean_timesteps = mean(eps.iter().map(|s| s.timesteps as f64));
    row.max_timesteps = eps.iter().map(|s| s.timesteps).max().unwrap_or(0);
    row.max_spikes = eps.iter().map(|s| s.spikes).max().unwrap_or(0);
    row.max_hr_spikes = eps.iter().map(|s| s.max_hr_spikes).max().unwrap_or(0);
    row.controller_time = out.report.controller_time;
    row.wm_peak = out.report.controller_wm_peak;
    row.invariant_violations = eps
        .iter()
        .filter(|s| s.timesteps > 2 * arcs + 1 || s.spikes > 3 * arcs + 1 || s.max_hr_spikes > 1)
        .count()
        + usize::from(out.augmentations() as u64 > arcs.max(e))
        + usize::from(validate_flow(g, &out.flow).is_err());
    row
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of `y` on `x`.
pub fn least_squares(points: &[(f64, f64)]) -> Option<LinearFit> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit { slope, intercept: my - slope * mx, r2 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeMean {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub mean_spikes: f64,
    pub mean_timesteps: f64,
    pub mean_path_len: f64,
    pub mean_episodes: f64,
    pub mean_classical_time_steps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub config: BenchConfig,
    pub rows: usize,
    pub divergent_rows: usize,
    pub failed_rows: usize,
    pub invariant_violations: usize,
    pub agreement_fraction: f64,
    /// Mean spikes per query against edge count.
    pub spikes_vs_edges: Option<LinearFit>,
    /// Slope of log(mean spikes) against log(edges).
    pub spikes_loglog: Option<LinearFit>,
    pub timesteps_vs_edges: Option<LinearFit>,
    pub path_len_vs_edges: Option<LinearFit>,
    pub per_size: Vec<SizeMean>,
    pub counterexamples: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: BenchSummary,
}

pub fn run_bench(cfg: &BenchConfig) -> std::io::Result<BenchReport> {
    assert!(cfg.samples >= 1, "samples must be at least 1");
    let jobs: Vec<(usize, usize)> = cfg.sizes.iter().flat_map(|&n| (0..cfg.samples).map(move |s| (n, s))).collect();
    let mut results: Vec<(BenchRow, Option<FlowNetwork>)> = jobs
        .par_iter()
        .map(|&(n, sample)| {
            let m = cfg.suite.edges_for(n);
            let seed = instance_seed(cfg.seed, n, sample);
            match generate_random(n, m, cfg.c_max, seed) {
                Ok(g) => {
                    let row = run_instance(&g, cfg.mode, sample, seed);
                    let keep = (row.divergence != 0).then_some(g);
                    (row, keep)
                }
                Err(e) => {
                    let mut row = run_instance(&FlowNetwork::new(2, 0, 1).expect("two nodes"), BenchMode::Classical, sample, seed);
                    row.n_nodes = n;
                    row.n_edges = m;
                    row.error = e.to_string();
                    (row, None)
                }
            }
        })
        .collect();
    results.sort_by_key(|(r, _)| (r.n_nodes, r.sample));

    let mut counterexamples = Vec::new();
    if let Some(dir) = &cfg.counterexample_dir {
        for (row, g) in &results {
            if let Some(g) = g {
                fs::create_dir_all(dir)?;
                let path = dir.join(format!("divergence_n{}_s{}.dimacs", row.n_nodes, row.sample));
                let comment = format!("seed {} classical {} spiking {}", row.seed, row.classical_value, row.value);
                write_dimacs(g, fs::File::create(&path)?, Some(&comment))?;
                counterexamples.push(path);
            }
        }
    }
    let rows: Vec<BenchRow> = results.into_iter().map(|(r, _)| r).collect();
    let summary = summarize(cfg, &rows, counterexamples);
    Ok(BenchReport { rows, summary })
}

pub fn summarize(cfg: &BenchConfig, rows: &[BenchRow], counterexamples: Vec<PathBuf>) -> BenchSummary {
    let ok: Vec<&BenchRow> = rows.iter().filter(|r| r.error.is_empty()).collect();
    let mut per_size = Vec::new();
    for &n in &cfg.sizes {
        let group: Vec<&&BenchRow> = ok.iter().filter(|r| r.n_nodes == n).collect();
        if group.is_empty() {
            continue;
        }
        let avg = |f: &dyn Fn(&BenchRow) -> f64| mean(group.iter().map(|r| f(r)));
        per_size.push(SizeMean {
            n_nodes: n,
            n_edges: group[0].n_edges,
            mean_spikes: avg(&|r| r.mean_spikes),
            mean_timesteps: avg(&|r| r.mean_timesteps),
            mean_path_len: avg(&|r| r.mean_path_len),
            mean_episodes: avg(&|r| r.episodes as f64),
            mean_classical_time_steps: avg(&|r| r.classical_time_steps as f64),
        });
    }
    let points = |f: &dyn Fn(&SizeMean) -> f64| -> Vec<(f64, f64)> { per_size.iter().map(|s| (s.n_edges as f64, f(s))).collect() };
    let loglog: Vec<(f64, f64)> = per_size.iter().filter(|s| s.mean_spikes > 0.0).map(|s| ((s.n_edges as f64).ln(), s.mean_spikes.ln())).collect();
    let divergent_rows = ok.iter().filter(|r| r.divergence != 0).count();
    BenchSummary {
        config: cfg.clone(),
        rows: rows.len(),
        divergent_rows,
        failed_rows: rows.len() - ok.len(),
        invariant_violations: ok.iter().map(|r| r.invariant_violations).sum(),
        agreement_fraction: if ok.is_empty() { 0.0 } else { (ok.len() - divergent_rows) as f64 / ok.len() as f64 },
        spikes_vs_edges: least_squares(&points(&|s| s.mean_spikes)),
        spikes_loglog: least_squares(&loglog),
        timesteps_vs_edges: least_squares(&points(&|s| s.mean_timesteps)),
        path_len_vs_edges: least_squares(&points(&|s| s.mean_path_len)),
        per_size,
        counterexamples,
    }
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(std::io::Error::other)?;
    }
    w.flush()
}

/// Whitespace-separated per-size means with a `#` header, for gnuplot.
pub fn write_gnuplot<W: Write>(summary: &BenchSummary, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# n_nodes n_edges mean_spikes mean_timesteps mean_path_len mean_episodes mean_classical_time_steps")?;
    for s in &summary.per_size {
        writeln!(
            out,
            "{} {} {:.4} {:.4} {:.4} {:.4} {:.4}",
            s.n_nodes, s.n_edges, s.mean_spikes, s.mean_timesteps, s.mean_path_len, s.mean_episodes, s.mean_classical_time_steps
        )?;
    }
    Ok(())
}

/// Writes `results.csv`, `summary.json` and `means.dat` into `dir`.
pub fn write_outputs(report: &BenchReport, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    write_csv(&report.rows, fs::File::create(dir.join("results.csv"))?)?;
    let json = serde_json::to_string_pretty(&report.summary).map_err(std::io::Error::other)?;
    fs::write(dir.join("summary.json"), json + "\n")?;
    write_gnuplot(&report.summary, fs::File::create(dir.join("means.dat"))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        assert_eq!(Suite::Sparse.edges_for(5), 7);
        assert_eq!(Suite::Sparse.edges_for(10), 14);
        assert_eq!(Suite::Dense.edges_for(5), 10);
    }

    #[test]
    fn fit_recovers_line() {
        let f = least_squares(&[(1.0, 3.0), (2.0, 5.0), (3.0, 7.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12 && (f.r2 - 1.0).abs() < 1e-12);
        assert!(least_squares(&[(1.0, 1.0)]).is_none());
    }

    #[test]
    fn small_sparse_sweep() {
        let cfg = BenchConfig { sizes: vec![5, 10, 20], samples: 2, seed: 42, ..BenchConfig::new(Suite::Sparse) };
        let rep = run_bench(&cfg).unwrap();
        assert_eq!(rep.rows.len(), 6);
        let keys: Vec<_> = rep.rows.iter().map(|r| (r.n_nodes, r.sample)).collect();
        assert_eq!(keys, vec![(5, 0), (5, 1), (10, 0), (10, 1), (20, 0), (20, 1)]);
        for r in &rep.rows {
            assert!(r.error.is_empty(), "{}", r.error);
            assert!(r.max_timesteps <= 2 * r.n_edges as u64 + 1);
            assert_eq!(r.invariant_violations, 0);
        }
        assert_eq!(run_bench(&cfg).unwrap(), rep);
    }

    #[test]
    fn residual_rows_never_diverge() {
        let cfg = BenchConfig { sizes: vec![5, 8], samples: 3, seed: 3, mode: BenchMode::Residual, ..BenchConfig::new(Suite::Dense) };
        for r in run_bench(&cfg).unwrap().rows {
            assert_eq!(r.value, r.classical_value);
            assert_eq!(r.divergence, 0);
        }
    }
}
