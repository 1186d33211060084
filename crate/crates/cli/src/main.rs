mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use faultyalign::analysis::{hamming_after_best_shift, recover_success, TailSpec};
use faultyalign::harness::{
    records_to_csv, records_to_json, run_lemma_check, run_mle_comparison, run_phase, run_sweep, sample_truth,
    scaled_seed_config, ExperimentRecord, SweepConfig, CSV_HEADER,
};
use faultyalign::{run_algorithm1, Error, FaultyOracle, NoiseParams, SeedConfig};

use crate::config::FileConfig;

#[derive(Parser)]
#[command(name = "faultyalign", version, about = "Joint alignment over Z_k from a faulty pairwise-difference oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one recovery trial and summarize the labeling errors.
    Simulate(SimulateArgs),
    /// Run a grid of cells and write one record per cell.
    Sweep(SweepArgs),
    /// Run the sweep once per budget scale.
    Phase(SweepArgs),
    /// Compare exact and Monte Carlo vote-sum tails and fit their decay.
    LemmaCheck(LemmaArgs),
    /// Check the algorithm's output against brute-force maximum likelihood.
    MleCheck(MleArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 40.0)]
    constant_c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    budget_scale: Option<f64>,
    /// Force zero noise on every query.
    #[arg(long)]
    noiseless: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Flat TOML file with sweep keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    constant_c: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Seed-size multiplier. `phase` takes a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    budget_scale: Option<Vec<f64>>,
    #[arg(long)]
    noiseless: bool,
    /// Record wall time per cell (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LemmaArgs {
    /// Vote counts, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 40.0)]
    constant_c: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    noiseless: bool,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Config(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_)
            | Error::InvalidLabeling(_)
            | Error::InvalidInput(_)
            | Error::TooLarge(_)
            | Error::RegimeMixing
            | Error::DegenerateGrid(_) => Failure::Config(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn emit(output: &OutputArgs, body: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure::Internal(e.to_string()))
}

#[derive(serde::Serialize)]
struct SimulateSummary {
    n: usize,
    k: u32,
    delta: f64,
    seed_size: usize,
    query_count: usize,
    success: bool,
    hamming: usize,
    /// Nodes whose estimate differs from the truth under the anchor's shift.
    mismatched_nodes: Vec<usize>,
    min_margin: Option<u32>,
}

fn simulate(args: SimulateArgs) -> CliResult<()> {
    let params = NoiseParams::new(args.k, args.delta)?;
    let base = SeedConfig::with_constant(args.constant_c);
    let cfg = match args.budget_scale {
        Some(scale) => scaled_seed_config(args.n, &params, &base, scale)?,
        None => base,
    };
    let truth = sample_truth(args.n, args.k, args.seed)?;
    let mut oracle = if args.noiseless {
        FaultyOracle::noiseless(truth.clone(), params, args.seed)?
    } else {
        FaultyOracle::new(truth.clone(), params, args.seed)?
    };
    let result = run_algorithm1(args.n, &params, &cfg, &mut oracle)?;
    let k = args.k;
    let alpha = (result.labeling.get(0) + k - truth.get(0)) % k;
    let summary = SimulateSummary {
        n: args.n,
        k,
        delta: args.delta,
        seed_size: result.seed.len(),
        query_count: result.query_count,
        success: recover_success(&result.labeling, &truth)?,
        hamming: hamming_after_best_shift(&result.labeling, &truth)?,
        mismatched_nodes: (0..args.n)
            .filter(|&v| result.labeling.get(v) != (truth.get(v) + alpha) % k)
            .collect(),
        min_margin: result.per_node_margin.iter().flatten().copied().min(),
    };
    let body = match args.output.format {
        Format::Json => to_json(&summary)?,
        Format::Csv => format!(
            "n,k,delta,seed_size,query_count,success,hamming,mismatched,min_margin\n{},{},{},{},{},{},{},{},{}\n",
            summary.n,
            summary.k,
            summary.delta,
            summary.seed_size,
            summary.query_count,
            summary.success,
            summary.hamming,
            summary.mismatched_nodes.len(),
            summary.min_margin.map(|m| m.to_string()).unwrap_or_default()
        ),
    };
    emit(&args.output, &body)
}

fn sweep_config(args: &SweepArgs) -> CliResult<SweepConfig> {
    let mut cfg = SweepConfig::default();
    if let Some(path) = &args.config {
        FileConfig::load(Path::new(path)).map_err(Failure::Config)?.apply(&mut cfg);
    }
    if let Some(v) = &args.n {
        cfg.n_values = v.clone();
    }
    if let Some(v) = &args.k {
        cfg.k_values = v.clone();
    }
    if let Some(v) = &args.delta {
        cfg.delta_values = v.clone();
    }
    if let Some(v) = &args.constant_c {
        cfg.constant_c_values = v.clone();
    }
    if let Some(v) = args.trials {
        cfg.trials = v;
    }
    if let Some(v) = args.seed {
        cfg.base_seed = v;
    }
    cfg.noiseless |= args.noiseless;
    cfg.record_timing |= args.timing;
    cfg.validate()?;
    Ok(cfg)
}

fn render_records(records: &[ExperimentRecord], format: Format) -> String {
    match format {
        Format::Csv => records_to_csv(records),
        Format::Json => records_to_json(records) + "\n",
    }
}

fn sweep(args: SweepArgs) -> CliResult<()> {
    let mut cfg = sweep_config(&args)?;
    match args.budget_scale.as_deref() {
        Some([scale]) => cfg.budget_scale = Some(*scale),
        Some(_) => return Err(Failure::Config("sweep takes a single --budget-scale; use phase for a list".into())),
        None => {}
    }
    let records = run_sweep(&cfg)?;
    emit(&args.output, &render_records(&records, args.output.format))
}

fn phase(args: SweepArgs) -> CliResult<()> {
    let cfg = sweep_config(&args)?;
    let scales = match (&args.budget_scale, cfg.budget_scale) {
        (Some(list), _) => list.clone(),
        (None, Some(scale)) => vec![scale],
        (None, None) => return Err(Failure::Config("phase needs --budget-scale".into())),
    };
    let runs = run_phase(&cfg, &scales)?;
    let body = match args.output.format {
        Format::Csv => {
            let mut out = format!("budget_scale,{CSV_HEADER}\n");
            for (scale, records) in &runs {
                for line in records_to_csv(records).lines().skip(1) {
                    out.push_str(&format!("{scale},{line}\n"));
                }
            }
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = runs
                .iter()
                .map(|(scale, records)| serde_json::json!({ "budget_scale": scale, "records": records }))
                .collect();
            to_json(&rows)?
        }
    };
    emit(&args.output, &body)
}

fn lemma_check(args: LemmaArgs) -> CliResult<()> {
    let params = NoiseParams::new(args.k, args.delta)?;
    let grid = args
        .n
        .iter()
        .map(|&n| TailSpec::new(n, params))
        .collect::<Result<Vec<_>, _>>()?;
    let report = run_lemma_check(&grid, args.trials, args.seed)?;
    let body = match args.output.format {
        Format::Csv => report.to_csv(),
        Format::Json => to_json(&report)?,
    };
    emit(&args.output, &body)
}

fn mle_check(args: MleArgs) -> CliResult<()> {
    let params = NoiseParams::new(args.k, args.delta)?;
    let cfg = SeedConfig::with_constant(args.constant_c);
    let report = run_mle_comparison(args.n, &params, &cfg, args.trials, args.seed, args.noiseless)?;
    let body = match args.output.format {
        Format::Csv => {
            let mut out = String::from("trial,agrees,mle_set_size,recovered_truth\n");
            for (i, t) in report.trials.iter().enumerate() {
                out.push_str(&format!("{i},{},{},{}\n", t.agrees, t.mle_set_size, t.algorithm_recovered_truth));
            }
            out.push_str(&format!(
                "# agreement_rate={},unique_rate={}\n",
                report.agreement_rate(),
                report.unique_rate()
            ));
            out
        }
        Format::Json => to_json(&serde_json::json!({
            "report": report,
            "agreement_rate": report.agreement_rate(),
            "unique_rate": report.unique_rate(),
        }))?,
    };
    emit(&args.output, &body)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Sweep(args) => sweep(args),
        Command::Phase(args) => phase(args),
        Command::LemmaCheck(args) => lemma_check(args),
        Command::MleCheck(args) => mle_check(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: invalid configuration: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: internal: {msg}");
            ExitCode::from(3)
        }
    }
}
