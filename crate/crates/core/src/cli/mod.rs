//! Command-line front end used by the `qestkit` binary.

mod commands;
mod config;
mod format;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use crate::error::{Error, Result};
pub use config::ConfigFile;
pub use format::{fmt_num, round_sig, to_csv, to_json, SIG_DIGITS};

pub const SEED_ENV: &str = "QESTKIT_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Unknown { kind: "format", name: s.into(), known: "csv, json".into() }),
        }
    }
}

/// Parses a real number written as a decimal, `a/b`, or `b^e` (e.g. `2^-4`).
pub fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    if let Some((b, e)) = s.split_once('^') {
        Ok(num(b)?.powf(num(e)?))
    } else if let Some((a, b)) = s.split_once('/') {
        Ok(num(a)? / num(b)?)
    } else {
        num(s)
    }
}

fn parse_assignment(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    Ok((k.trim().to_string(), parse_real(v)?))
}

#[derive(Debug, Parser)]
#[command(name = "qestkit", version, about = "Quantum estimation metrics and iterative phase estimation")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// RNG seed; falls back to the config file, then QESTKIT_SEED, then 0
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for simulations
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON file with default values for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record wall-clock time in simulation output (otherwise 0)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Information matrices, gaps and attainability verdicts for a family
    Metrics(MetricsArgs),
    /// Monte-Carlo coverage of the iterative phase estimator
    PhaseSim(PhaseSimArgs),
    /// Measurement counts, optimal stage count and fidelity bound
    PhasePlan(PhasePlanArgs),
    /// Runs the two worked arc-iteration examples
    ArcDemo,
    /// SLD trace for separate versus sequential commuting channels
    Commuting(CommutingArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct MetricsArgs {
    /// One of phase_on_psix, bloch_qubit, depol_qutrit_rotation, commuting_ud
    #[arg(long)]
    pub family: Option<String>,
    /// Parameter point, comma separated
    #[arg(long, value_delimiter = ',', value_parser = parse_real, allow_hyphen_values = true)]
    pub params: Vec<f64>,
    /// Family constant such as m=2 or eps=0.2 (repeatable)
    #[arg(long = "set", value_parser = parse_assignment)]
    pub set: Vec<(String, f64)>,
    /// fixed_phase or parallel
    #[arg(long)]
    pub gauge: Option<String>,
    /// Measurement for the Fisher information: x, y, z (qubits) or ballester
    #[arg(long)]
    pub povm: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PhaseSimArgs {
    /// Stage counts
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<u32>,
    /// Measurements per stage (even)
    #[arg(long = "n-tot", value_delimiter = ',')]
    pub n_tot: Vec<u64>,
    /// Depolarizing rates, e.g. 0,2^-4,0.01
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    pub r: Vec<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PhasePlanArgs {
    #[arg(long)]
    pub l: Option<u32>,
    /// Allowed failure probability
    #[arg(long, value_parser = parse_real)]
    pub eps: Option<f64>,
    /// Depolarizing rate for the stage-count plan
    #[arg(long, value_parser = parse_real)]
    pub r: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommutingArgs {
    /// Number of channels
    #[arg(long)]
    pub n: Option<usize>,
    /// Hilbert-space dimension
    #[arg(long)]
    pub d: Option<usize>,
    /// Derivatives f_j'(theta_j), comma separated; defaults to all ones
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    pub slopes: Vec<f64>,
}

/// Resolved global settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub seed: u64,
    pub workers: Option<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

fn resolve(global: &GlobalArgs, cfg: &ConfigFile) -> Result<Settings> {
    let env_seed = match std::env::var(SEED_ENV) {
        Ok(s) => Some(s.trim().parse::<u64>().map_err(|e| Error::InvalidArgument(format!("{SEED_ENV}: {e}")))?),
        Err(_) => None,
    };
    let format = match (global.format, &cfg.format) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse()?,
        (None, None) => Format::Csv,
    };
    let workers = global.workers.or(cfg.workers);
    if workers == Some(0) {
        return Err(Error::InvalidArgument("--workers must be at least 1".into()));
    }
    Ok(Settings {
        seed: global.seed.or(cfg.seed).or(env_seed).unwrap_or(0),
        workers,
        format,
        output: global.output.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from)),
        timing: global.timing || cfg.timing.unwrap_or(false),
    })
}

/// Runs the command and returns its output text with the resolved settings.
pub fn render(cli: &Cli) -> Result<(String, Settings)> {
    let cfg = match &cli.global.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let s = resolve(&cli.global, &cfg)?;
    let text = match &cli.command {
        Command::Metrics(a) => commands::metrics(a, &cfg, &s)?,
        Command::PhaseSim(a) => commands::phase_sim(a, &cfg, &s)?,
        Command::PhasePlan(a) => commands::phase_plan(a, &cfg, &s)?,
        Command::ArcDemo => commands::arc_demo(&s)?,
        Command::Commuting(a) => commands::commuting(a, &cfg, &s)?,
    };
    Ok((text, s))
}

/// Runs the command and writes the result to --output or stdout.
pub fn execute(cli: &Cli) -> Result<()> {
    let (text, s) = render(cli)?;
    match &s.output {
        Some(p) => std::fs::write(p, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Process exit code for an error: 3 for numerical failures, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        3
    } else {
        2
    }
}
