use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spikeflow::bench::{self, BenchConfig, BenchMode, Suite};
use spikeflow::flow::{edmonds_karp_with_stats, generate_random, parse_dimacs, to_dimacs, FlowNetwork};
use spikeflow::naive::{decide_naive, NaiveError};
use spikeflow::snn::{write_trace_csv, ResetMode, SpikingNetwork, StopCondition};
use spikeflow::spiking_maxflow::{solve_with, Mode, SolveOptions, DEFAULT_WM_CAPACITY};
use spikeflow::tnfr::{self, check_feasible, CheckOptions, Mutation, ReductionConfig, TnfrError, TnfrInstance};

#[derive(Parser)]
#[command(name = "spikeflow", version, about = "Spiking max-flow on a simulated neuromorphic oracle")]
struct Cli {
    /// Seed for anything random.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (a directory for `bench`); stdout if omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    PaperFaithful,
    Residual,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Sparse,
    Dense,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    DropFailure,
    DropTie,
}

#[derive(Subcommand)]
enum Cmd {
    /// Random flow network in DIMACS format.
    Generate {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 10)]
        cmax: u64,
    },
    /// Max flow of a DIMACS network.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMode::PaperFaithful)]
        mode: SolveMode,
        #[arg(long, default_value_t = DEFAULT_WM_CAPACITY)]
        wm_capacity: usize,
    },
    /// Run a netlist and print its spike trace.
    Simulate {
        input: PathBuf,
        #[arg(long)]
        steps: u64,
        /// Subtract the threshold on firing instead of resetting.
        #[arg(long)]
        overflow: bool,
    },
    /// Random sweep comparing the spiking and classical solvers.
    Bench {
        #[arg(long, value_enum, default_value_t = SuiteArg::Sparse)]
        suite: SuiteArg,
        /// Comma-separated node counts.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        cmax: u64,
        #[arg(long, value_enum, default_value_t = SolveMode::PaperFaithful)]
        mode: SolveMode,
    },
    /// Decide max flow > d with the exponential single-consultation network.
    DecideNaive {
        input: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Reduce a time- and energy-bounded network to a TNFR instance.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        e: u32,
        #[arg(long, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
    },
    /// Decide a TNFR instance.
    TnfrCheck {
        input: PathBuf,
        #[arg(long, default_value_t = CheckOptions::default().max_arcs)]
        max_arcs: usize,
        #[arg(long, default_value_t = CheckOptions::default().budget)]
        budget: u64,
        /// Write the witness flow as CSV.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check both directions of the reduction on a network, or on the
    /// built-in suite when no input is given.
    VerifyReduction {
        input: Option<PathBuf>,
        #[arg(long, requires = "input")]
        t: Option<u32>,
        #[arg(long, requires = "input")]
        e: Option<u32>,
        #[arg(long, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
        #[arg(long, default_value_t = 4096)]
        max_arcs: usize,
    },
}

enum Failure {
    Input(String),
    Guard(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Guard(m) | Failure::Invariant(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<TnfrError> for Failure {
    fn from(e: TnfrError) -> Self {
        match e {
            TnfrError::GuardExceeded { .. } | TnfrError::BudgetExceeded(_) => Failure::Guard(e.to_string()),
            TnfrError::Internal(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn open(path: &Path) -> Result<BufReader<fs::File>, Failure> {
    fs::File::open(path).map(BufReader::new).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_network(path: &Path) -> Result<FlowNetwork, Failure> {
    parse_dimacs(open(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_netlist(path: &Path) -> Result<SpikingNetwork, Failure> {
    SpikingNetwork::parse_netlist(open(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn mutation(m: MutationArg) -> Mutation {
    match m {
        MutationArg::None => Mutation::None,
        MutationArg::DropFailure => Mutation::DropFailureGadget,
        MutationArg::DropTie => Mutation::DropConstantTie,
    }
}

fn reduction_config(path: &Path, t: u32, e: u32) -> Result<ReductionConfig, Failure> {
    let mut net = read_netlist(path)?;
    net.set_reset_mode(ResetMode::Overflow);
    Ok(ReductionConfig::new(net, t, e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = &cli.out;
    match cli.cmd {
        Cmd::Generate { nodes, edges, cmax } => {
            let g = generate_random(nodes, edges, cmax, cli.seed).map_err(|e| Failure::Input(e.to_string()))?;
            let mut text = format!("c generated nodes={nodes} edges={edges} cmax={cmax} seed={}\n", cli.seed);
            text.push_str(&to_dimacs(&g));
            emit(out, &text)
        }
        Cmd::Solve { input, mode, wm_capacity } => {
            let g = read_network(&input)?;
            let value = match mode {
                SolveMode::Classical => {
                    let (f, stats) = edmonds_karp_with_stats(&g);
                    let flows: Vec<[u64; 2]> = f.flows.iter().enumerate().map(|(e, x)| [e as u64, *x]).collect();
                    json!({ "value": f.value, "flows": flows, "augmentations": stats.augmentations, "classical_time_steps": stats.ops })
                }
                SolveMode::PaperFaithful | SolveMode::Residual => {
                    let mode = if matches!(mode, SolveMode::Residual) { Mode::Residual } else { Mode::PaperFaithful };
                    let res = solve_with(&g, &SolveOptions { mode, wm_capacity }).map_err(|e| match e {
                        spikeflow::spiking_maxflow::MaxflowError::Oracle(o) => Failure::Guard(o.to_string()),
                        other => Failure::Invariant(other.to_string()),
                    })?;
                    res.to_json()
                }
            };
            emit(out, &format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))
        }
        Cmd::Simulate { input, steps, overflow } => {
            let mut net = read_netlist(&input)?;
            if overflow {
                net.set_reset_mode(ResetMode::Overflow);
            }
            let state = net.run(steps, &StopCondition::StepCount(steps));
            let mut buf = Vec::new();
            write_trace_csv(&state.trace, &mut buf)?;
            emit(out, &String::from_utf8(buf).expect("ASCII"))
        }
        Cmd::Bench { suite, sizes, samples, cmax, mode } => {
            if samples == 0 {
                return Err(Failure::Input("--samples must be at least 1".into()));
            }
            let suite = match suite {
                SuiteArg::Sparse => Suite::Sparse,
                SuiteArg::Dense => Suite::Dense,
            };
            let mode = match mode {
                SolveMode::PaperFaithful => BenchMode::PaperFaithful,
                SolveMode::Residual => BenchMode::Residual,
                SolveMode::Classical => BenchMode::Classical,
            };
            let cfg = BenchConfig {
                sizes: sizes.unwrap_or_else(|| suite.default_sizes()),
                samples,
                c_max: cmax,
                seed: cli.seed,
                mode,
                counterexample_dir: out.as_ref().map(|d| d.join("counterexamples")),
                ..BenchConfig::new(suite)
            };
            if cfg.sizes.iter().any(|&n| n < 2 || suite.edges_for(n) < n - 1) {
                return Err(Failure::Input("every size needs at least 2 nodes and enough edges to connect them".into()));
            }
            let report = bench::run_bench(&cfg)?;
            match out {
                Some(dir) => bench::write_outputs(&report, dir)?,
                None if cli.format == Format::Csv => bench::write_csv(&report.rows, io::stdout())?,
                None => println!("{}", serde_json::to_string_pretty(&report.summary).expect("serializable")),
            }
            if mode == BenchMode::Residual && report.summary.divergent_rows > 0 {
                return Err(Failure::Invariant(format!("{} residual rows diverge from the classical solver", report.summary.divergent_rows)));
            }
            Ok(())
        }
        Cmd::DecideNaive { input, d } => {
            let g = read_network(&input)?;
            let res = decide_naive(&g, d).map_err(|e| match e {
                NaiveError::GuardExceeded(_) => Failure::Guard(e.to_string()),
                NaiveError::Oracle(_) => Failure::Invariant(e.to_string()),
            })?;
            let text = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "accept": res.accept,
                        "accept_fired_at": res.accept_fired_at,
                        "accept_time": res.accept_time,
                        "f_max": res.f_max,
                        "candidates": res.candidates,
                        "neurons": res.neurons,
                        "synapses": res.synapses,
                        "report": res.report,
                    })
                ),
                Format::Csv => format!("{}\n", u8::from(res.accept)),
            };
            emit(out, &text)
        }
        Cmd::Reduce { input, t, e, mutation: m } => {
            let cfg = reduction_config(&input, t, e)?;
            let red = tnfr::reduce_with(&cfg, mutation(m))?;
            emit(out, &red.instance.to_text())
        }
        Cmd::TnfrCheck { input, max_arcs, budget, witness } => {
            let inst = TnfrInstance::parse_text(open(&input)?)?;
            let res = check_feasible(&inst, &CheckOptions { max_arcs, budget })?;
            if let (Some(path), Some(w)) = (&witness, &res.witness) {
                tnfr::write_witness_csv(w, fs::File::create(path)?)?;
            }
            let verdict = if res.feasible { "yes" } else { "no" };
            let text = match cli.format {
                Format::Json => format!("{}\n", json!({ "feasible": res.feasible, "expansions": res.expansions })),
                Format::Csv => format!("{verdict}\n"),
            };
            emit(out, &text)
        }
        Cmd::VerifyReduction { input, t, e, mutation: m, max_arcs } => {
            let cases: Vec<(String, ReductionConfig)> = match input {
                Some(path) => {
                    let (Some(t), Some(e)) = (t, e) else {
                        return Err(Failure::Input("--t and --e are required with an input".into()));
                    };
                    vec![(path.display().to_string(), reduction_config(&path, t, e)?)]
                }
                None => tnfr::toys::suite().into_iter().map(|(n, c, _)| (n.to_string(), c)).collect(),
            };
            let opts = CheckOptions { max_arcs, ..CheckOptions::default() };
            let mut reports = Vec::new();
            let mut failed = Vec::new();
            for (name, cfg) in &cases {
                let rep = tnfr::verify_reduction_with(cfg, mutation(m), &opts)?;
                if !rep.passed {
                    failed.push(name.clone());
                }
                reports.push(json!({ "name": name, "report": rep }));
            }
            emit(out, &format!("{}\n", serde_json::to_string_pretty(&reports).expect("serializable")))?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Invariant(format!("biconditional fails on: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
