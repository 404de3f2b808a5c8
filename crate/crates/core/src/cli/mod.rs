//! Config-driven command line. Every command reads one TOML file, writes
//! CSV/JSON artefacts plus `manifest.json` into the output directory and
//! exits with 0 (success), 1 (configuration), 2 (numeric failure) or
//! 3 (verification failure).

mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use output::{fmt_f64, RunManifest};

use crate::domain::RuleMeta;
use crate::error::Error;
use crate::fields::FIELD_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(Error),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numeric(e) => write!(f, "numeric failure: {e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Library errors split by cause: bad inputs are configuration errors,
/// everything else is a numeric failure.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::UnsupportedRule { .. } => CliError::Config(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bessel-rbf", version, about = "Bessel RBF series, transforms and causal expansions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML run configuration (or a previous run's manifest.json).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output_dir`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Monte Carlo seed; overrides `mc_seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Positive zeros of J_v as CSV.
    Zeros,
    /// Series coefficients of a built-in field.
    Expand,
    /// Expansion plus reconstruction samples and L2 error.
    Reconstruct,
    /// Gram matrix of the normalised basis.
    Gram,
    /// Continuous transform grid and calibration report.
    Transform,
    /// Causal space-time expansion and reconstruction.
    Spacetime,
    /// Invariant battery; exit 3 if any check fails.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Zeros => "zeros",
            Command::Expand => "expand",
            Command::Reconstruct => "reconstruct",
            Command::Gram => "gram",
            Command::Transform => "transform",
            Command::Spacetime => "spacetime",
            Command::Verify => "verify",
        }
    }
}

/// What a command produced, before the manifest is written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub outputs: Vec<String>,
    pub rules: Vec<RuleMeta>,
    pub results: serde_json::Value,
    pub summary: String,
    /// Set by `verify` when a check failed; artefacts are still written.
    pub failure: Option<CliError>,
}

/// Runs `command` with an already loaded config, writing into `out`.
pub fn execute(command: Command, mut config: RunConfig, out: PathBuf, seed: Option<u64>) -> Result<Outcome, CliError> {
    if let Some(s) = seed {
        config.mc_seed = Some(s);
    }
    config.output_dir = Some(out.clone());
    let started = Instant::now();
    let result = match command {
        Command::Zeros => commands::zeros(&config, &out),
        Command::Expand => commands::expand(&config, &out),
        Command::Reconstruct => commands::reconstruct(&config, &out),
        Command::Gram => commands::gram(&config, &out),
        Command::Transform => commands::transform(&config, &out),
        Command::Spacetime => commands::spacetime(&config, &out),
        Command::Verify => verify::run(&config, &out),
    };
    let (mut outcome, status) = match result {
        Ok(o) => {
            let status = o.failure.as_ref().map_or(EXIT_OK, CliError::exit_code);
            (o, status)
        }
        Err(e) => {
            let status = e.exit_code();
            if status == EXIT_CONFIG {
                return Err(e);
            }
            (
                Outcome {
                    results: serde_json::json!({ "error": e.to_string() }),
                    summary: e.to_string(),
                    failure: Some(e),
                    ..Outcome::default()
                },
                status,
            )
        }
    };
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: command.name().into(),
        seed: config.seed(),
        config,
        field_version: FIELD_VERSION,
        rules: std::mem::take(&mut outcome.rules),
        results: std::mem::take(&mut outcome.results),
        outputs: outcome.outputs.clone(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        exit_status: status,
    };
    output::write_json(&out, "manifest.json", &manifest)?;
    outcome.outputs.push("manifest.json".into());
    match outcome.failure.take() {
        Some(e) => Err(e),
        None => Ok(outcome),
    }
}

/// Entry point behind the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{e}");
                return e.exit_code();
            }
        },
        None if cli.command == Command::Verify => RunConfig::default(),
        None => {
            eprintln!("configuration error: --config <path> is required for `{}`", cli.command.name());
            return EXIT_CONFIG;
        }
    };
    let out = cli
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    match execute(cli.command, config, out, cli.seed) {
        Ok(outcome) => {
            if !cli.quiet {
                println!("{}", outcome.summary);
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
