//! `coprenyi`: evaluate copula Rényi inaccuracy measures, bounds, fits,
//! simulations and model-selection rankings from the command line.
//!
//! Every command writes one JSON object per line (or a table with
//! `--pretty`) to standard output or `--out`. Exit codes: 0 success,
//! 1 usage error, 2 numeric failure. `COPRENYI_THREADS` caps the worker
//! thread count.

mod error;
mod jobs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coprenyi::bounds::BoundTarget;
use coprenyi::estimation::FitMethod;
use coprenyi::quadrature::{IntegrationConfig, Method};
use coprenyi::CopulaModel;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::jobs::*;

#[derive(Parser, Debug)]
#[command(
    name = "coprenyi",
    version,
    about = "Copula-based Rényi inaccuracy measures"
)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one measure (mccri, mscri, mcocri, mdcri, cci, sci, mccre, mscre).
    Measure(MeasureArgs),
    /// Fréchet-Hoeffding bound integrals and the closed-form comparison.
    Bounds(BoundsArgs),
    /// Fit a copula family to CSV data.
    Fit(FitArgs),
    /// Draw a sample as CSV.
    Sample(SampleArgs),
    /// Run a Monte Carlo study described by a TOML file.
    Simulate { config: PathBuf },
    /// Fit candidate families and rank them by MCCRI against a baseline.
    Select(SelectArgs),
    /// Execute every job declared in a run-config TOML file.
    Run { config: PathBuf },
}

#[derive(Args, Debug)]
struct Quadrature {
    /// Gauss-Legendre nodes per axis.
    #[arg(long)]
    nodes: Option<usize>,
    /// Maximum number of node doublings.
    #[arg(long)]
    refinements: Option<u32>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<QuadMethod>,
    #[arg(long)]
    mc_samples: Option<usize>,
    /// Seed for Monte Carlo integration.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuadMethod {
    Tensor,
    MonteCarlo,
}

impl Quadrature {
    fn config(&self) -> Option<IntegrationConfig> {
        let touched = self.nodes.is_some()
            || self.refinements.is_some()
            || self.rel_tol.is_some()
            || self.method.is_some()
            || self.mc_samples.is_some()
            || self.seed.is_some();
        touched.then(|| {
            let mut cfg = IntegrationConfig::default();
            if let Some(m) = self.method {
                cfg.method = match m {
                    QuadMethod::Tensor => Method::TensorGauss,
                    QuadMethod::MonteCarlo => Method::MonteCarlo,
                };
            }
            if let Some(n) = self.nodes {
                cfg.nodes_per_axis = n;
            }
            if let Some(r) = self.refinements {
                cfg.max_refinements = r;
            }
            if let Some(t) = self.rel_tol {
                cfg.rel_tol = t;
            }
            if let Some(s) = self.mc_samples {
                cfg.mc_samples = s;
            }
            if let Some(s) = self.seed {
                cfg.seed = s;
            }
            cfg
        })
    }
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    gamma: Option<f64>,
    /// Truth copula as family:theta:dim, e.g. gumbel:1.1542:3.
    #[arg(long)]
    copula_x: String,
    /// Reference copula as family:theta:dim.
    #[arg(long)]
    copula_y: Option<String>,
    /// Truth marginals, comma separated: uniform, exp:RATE, prhr:EXPONENT:BASE.
    #[arg(long, value_delimiter = ',')]
    marginals_x: Option<Vec<String>>,
    /// Reference marginals, same syntax as --marginals-x.
    #[arg(long, value_delimiter = ',')]
    marginals_y: Option<Vec<String>>,
    /// Power distortion exponents, one per coordinate.
    #[arg(long, value_delimiter = ',')]
    powers: Option<Vec<f64>>,
    #[command(flatten)]
    quadrature: Quadrature,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, value_enum, default_value_t = TargetArg::Mccri)]
    target: TargetArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Mccri,
    Mscri,
}

#[derive(Args, Debug)]
struct FitArgs {
    /// CSV file with a header row.
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    family: String,
    /// Columns to use (default: all).
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = FitArg::Mpl)]
    method: FitArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FitArg {
    Mpl,
    Tau,
}

#[derive(Args, Debug)]
struct SampleArgs {
    family: String,
    /// Parameter; `-` for families without one.
    #[arg(allow_hyphen_values = true)]
    theta: String,
    dim: usize,
    n: usize,
    seed: u64,
}

#[derive(Args, Debug)]
struct SelectArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    families: Option<Vec<String>>,
    #[arg(long, default_value_t = 3.0)]
    gamma: f64,
    /// Reference family; defaults to the highest pseudo-likelihood fit.
    #[arg(long)]
    baseline: Option<String>,
    #[command(flatten)]
    quadrature: Quadrature,
}

enum Payload {
    Records(Vec<Value>),
    Text(String),
}

fn execute(cli: &Cli) -> CliResult<Payload> {
    let records = match &cli.command {
        Command::Measure(a) => vec![run_measure(&MeasureJob {
            kind: a.kind.clone(),
            gamma: a.gamma,
            copula_x: a.copula_x.clone(),
            copula_y: a.copula_y.clone(),
            marginals_x: a.marginals_x.clone(),
            marginals_y: a.marginals_y.clone(),
            powers: a.powers.clone(),
            integration: a.quadrature.config(),
        })?],
        Command::Bounds(a) => vec![run_bounds(&BoundsJob {
            gamma: a.gamma,
            alpha: a.alpha,
            beta: a.beta,
            target: match a.target {
                TargetArg::Mccri => BoundTarget::Mccri,
                TargetArg::Mscri => BoundTarget::Mscri,
            },
        })?],
        Command::Fit(a) => vec![run_fit(&FitJob {
            data: a.data.clone(),
            family: a.family.clone(),
            columns: a.columns.clone(),
            method: match a.method {
                FitArg::Mpl => FitMethod::Mpl,
                FitArg::Tau => FitMethod::TauInversion,
            },
        })?],
        Command::Sample(a) => {
            let model = CopulaModel::parse_spec(&format!("{}:{}:{}", a.family, a.theta, a.dim))?;
            return Ok(Payload::Text(sample_csv(&model, a.n, a.seed)?));
        }
        Command::Simulate { config } => {
            let job = load_simulation_file(config)?;
            vec![run_simulate(&simulation_config(&job, None)?)?]
        }
        Command::Select(a) => vec![run_select(&SelectJob {
            data: a.data.clone(),
            columns: a.columns.clone(),
            families: a.families.clone(),
            gamma: a.gamma,
            baseline: a.baseline.clone(),
            integration: a.quadrature.config(),
        })?],
        Command::Run { config } => {
            let file = RunConfigFile::load(config)?;
            let sims = file.validate()?;
            let mut records = vec![json!({ "command": "run", "jobs": file.counts() })];
            for job in &file.measure {
                records.push(run_measure(job)?);
            }
            for job in &file.bounds {
                records.push(run_bounds(job)?);
            }
            for job in &file.fit {
                records.push(run_fit(job)?);
            }
            for job in &file.select {
                records.push(run_select(job)?);
            }
            for cfg in &sims {
                records.push(run_simulate(cfg)?);
            }
            if cli.out.is_none() {
                if let Some(path) = &file.output {
                    write_payload(Some(path), &render(cli.pretty, &records))?;
                    return Ok(Payload::Text(String::new()));
                }
            }
            records
        }
    };
    Ok(Payload::Records(records))
}

fn render(pretty: bool, records: &[Value]) -> String {
    if pretty {
        output::pretty(records)
    } else {
        output::jsonl(records)
    }
}

fn write_payload(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display())))
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("COPRENYI_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::usage(format!(
            "COPRENYI_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(e.to_string()))
}

fn run() -> CliResult<()> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return Ok(());
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            return Err(CliError::usage(
                line.trim_start_matches("error: ").to_string(),
            ));
        }
    };
    configure_threads()?;
    match execute(&cli)? {
        Payload::Records(records) => write_payload(cli.out.as_ref(), &render(cli.pretty, &records)),
        Payload::Text(text) if text.is_empty() => Ok(()),
        Payload::Text(text) => write_payload(cli.out.as_ref(), &text),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("coprenyi: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
