//! Command-line front end for the trap-noise toolkit.
//!
//! Four subcommands: `synth` (generate traces), `snr` (cascade SNR analysis
//! of a trace file), `heating-sweep` (ensemble heating rates over a grid of
//! noise coherence times), and `trap` (Gaussian-beam trap report). Every
//! output artifact embeds a manifest sufficient to reproduce it byte for
//! byte.
//!
//! Exit codes: 0 success, 2 input/configuration error, 3 numerical failure
//! (fit did not converge, SNR undefined, filter design infeasible),
//! 1 anything else (I/O).

pub mod commands;
pub mod config;
pub mod manifest;
pub mod tracefile;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use asetrap_core::CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::UndefinedSnr
            | CoreError::FitRangeTooSparse { .. }
            | CoreError::FilterDesign(_)
            | CoreError::NoiseExhausted { .. } => CliError::Numerical(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "asetrap",
    version,
    about = "Intensity-noise and trap-heating analysis for broadband-light dipole traps"
)]
pub struct Cli {
    /// Master seed for anything stochastic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// JSON config file overriding built-in defaults (species table,
    /// coupling constants, simulation defaults).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,

    /// Trace file format written by `synth`.
    #[arg(long, global = true, value_enum, default_value_t = tracefile::TraceFormat::Csv)]
    pub format: tracefile::TraceFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic trace (broadband intensity signal or
    /// band-limited fractional noise) with sidecar and manifest.
    Synth(commands::synth::SynthArgs),
    /// SNR versus cutoff frequency for a recorded trace, via the
    /// filter/decimate cascade, plus a power-law fit.
    Snr(commands::snr::SnrArgs),
    /// Ensemble heating and loss rates over a grid of noise coherence
    /// times.
    HeatingSweep(commands::heating::HeatingArgs),
    /// Gaussian-beam trap parameters for a species/beam combination.
    Trap(commands::trap::TrapArgs),
}

/// Run a parsed command line. Returns the paths of the artifacts written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let config = config::FileConfig::load(cli.config.as_deref())?;
    std::fs::create_dir_all(&cli.out)?;
    match &cli.command {
        Command::Synth(args) => commands::synth::run(cli, &config, args),
        Command::Snr(args) => commands::snr::run(cli, &config, args),
        Command::HeatingSweep(args) => commands::heating::run(cli, &config, args),
        Command::Trap(args) => commands::trap::run(cli, &config, args),
    }
}
