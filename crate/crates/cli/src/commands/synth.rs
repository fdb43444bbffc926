//! `asetrap synth`: generate a test trace with sidecar and manifest.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use asetrap_core::{synth_ase_trace, synth_band_limited, IntensityTrace, NoiseSpec};

use crate::config::FileConfig;
use crate::manifest::RunManifest;
use crate::tracefile::write_trace;
use crate::{Cli, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SynthKind {
    /// Broadband intensity trace: constant mean plus flat band-limited noise.
    Ase,
    /// Band-limited fractional-fluctuation noise ε(t).
    Band,
}

#[derive(Debug, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub kind: SynthKind,

    /// Base name of the output files.
    #[arg(long, default_value = "trace")]
    pub name: String,

    /// [ase] Mean value of the trace.
    #[arg(long)]
    pub mean: Option<f64>,

    /// [ase] Raw SNR (mean over noise rms); `inf` gives a constant trace.
    #[arg(long)]
    pub snr: Option<f64>,

    /// [ase] Noise bandwidth in Hz.
    #[arg(long)]
    pub bandwidth: Option<f64>,

    /// [ase] Sample rate in samples/s.
    #[arg(long)]
    pub fs: Option<f64>,

    /// [ase] Number of samples.
    #[arg(long)]
    pub n: Option<usize>,

    /// [ase] Unit label recorded in the sidecar.
    #[arg(long, default_value = "V")]
    pub unit: String,

    /// [band] Total noise power (variance of ε).
    #[arg(long)]
    pub s0: Option<f64>,

    /// [band] Coherence time in seconds.
    #[arg(long)]
    pub tau0: Option<f64>,

    /// [band] Trace duration in seconds.
    #[arg(long)]
    pub duration: Option<f64>,

    /// [band] Sample spacing in seconds.
    #[arg(long)]
    pub dt: Option<f64>,
}

fn require<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Input(format!("--{flag} is required for --kind {kind}")))
}

pub fn run(cli: &Cli, _config: &FileConfig, args: &SynthArgs) -> Result<Vec<PathBuf>> {
    let trace: IntensityTrace = match args.kind {
        SynthKind::Ase => synth_ase_trace(
            require(args.mean, "mean", "ase")?,
            require(args.snr, "snr", "ase")?,
            require(args.bandwidth, "bandwidth", "ase")?,
            require(args.fs, "fs", "ase")?,
            require(args.n, "n", "ase")?,
            cli.seed,
        )
        .map(|mut t| {
            t.unit = args.unit.clone();
            t
        })?,
        SynthKind::Band => {
            let spec = NoiseSpec::new(
                require(args.s0, "s0", "band")?,
                require(args.tau0, "tau0", "band")?,
            )?;
            let noise = synth_band_limited(
                &spec,
                require(args.duration, "duration", "band")?,
                require(args.dt, "dt", "band")?,
                cli.seed,
            )?;
            IntensityTrace::new(1.0 / noise.dt, noise.samples, "eps")?
        }
    };

    let manifest = RunManifest::new("synth", serde_json::to_value(args)?, cli.seed);
    let mut written = write_trace(&cli.out, &args.name, cli.format, &trace, &manifest)?;

    let manifest_path = cli.out.join(format!("{}.manifest.json", args.name));
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)? + "\n",
    )?;
    written.push(manifest_path);

    println!(
        "wrote {} samples at {} S/s to {}",
        trace.samples.len(),
        trace.sample_rate,
        written[0].display()
    );
    Ok(written)
}
