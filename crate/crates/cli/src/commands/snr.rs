//! `asetrap snr`: cascade SNR curve and power-law fit for a trace file.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use asetrap_core::{cascade_snr, fit_power_law, CascadeConfig, PowerLawFit, SnrCurve};

use crate::commands::fmt;
use crate::config::FileConfig;
use crate::manifest::RunManifest;
use crate::tracefile::load_trace;
use crate::{Cli, Result};

#[derive(Debug, Args, Serialize)]
pub struct SnrArgs {
    /// Trace file (CSV or RAW; RAW needs its sidecar).
    #[arg(long)]
    pub trace: PathBuf,

    /// Sample rate in Hz for single-column CSV traces.
    #[arg(long)]
    pub sample_rate: Option<f64>,

    /// Apply each stage's filter once or twice.
    #[arg(long, default_value_t = 1)]
    pub passes: u32,

    /// Stop the cascade below this many samples.
    #[arg(long, default_value_t = 1000)]
    pub min_samples: usize,

    /// Lower edge of the power-law fit range in Hz (default: all points).
    #[arg(long)]
    pub fit_min: Option<f64>,

    /// Upper edge of the power-law fit range in Hz (default: all points).
    #[arg(long)]
    pub fit_max: Option<f64>,

    /// Base name of the output files.
    #[arg(long, default_value = "snr")]
    pub name: String,
}

#[derive(Serialize)]
struct SnrSummary<'a> {
    passes_per_stage: u32,
    fit_range_hz: (f64, f64),
    fit: &'a PowerLawFit,
    points: usize,
    manifest: &'a RunManifest,
}

pub fn run(cli: &Cli, _config: &FileConfig, args: &SnrArgs) -> Result<Vec<PathBuf>> {
    let trace = load_trace(&args.trace, args.sample_rate)?;
    let mut manifest = RunManifest::new("snr", serde_json::to_value(args)?, cli.seed);
    manifest.add_input(&args.trace)?;

    let config = CascadeConfig {
        passes_per_stage: args.passes,
        min_samples: args.min_samples,
        ..CascadeConfig::default()
    };
    let mut curve: SnrCurve = cascade_snr(&trace, &config)?;
    let f_min = args.fit_min.unwrap_or(0.0);
    let f_max = args.fit_max.unwrap_or(f64::INFINITY);
    let fit = fit_power_law(&curve, f_min, f_max)?;
    curve.fit = Some(fit);

    let csv_path = cli.out.join(format!("{}.csv", args.name));
    let mut buf = String::new();
    buf.push_str(&format!(
        "# asetrap v{} snr curve\n",
        env!("CARGO_PKG_VERSION")
    ));
    buf.push_str(&format!("# manifest: {}\n", manifest.to_line()));
    buf.push_str("cutoff_hz,snr\n");
    for p in &curve.points {
        buf.push_str(&format!("{},{}\n", fmt(p.cutoff_hz), fmt(p.snr)));
    }
    std::fs::write(&csv_path, buf)?;

    let json_path = cli.out.join(format!("{}_fit.json", args.name));
    let summary = SnrSummary {
        passes_per_stage: args.passes,
        fit_range_hz: (f_min, f_max),
        fit: &fit,
        points: curve.points.len(),
        manifest: &manifest,
    };
    std::fs::write(&json_path, serde_json::to_string_pretty(&summary)? + "\n")?;

    println!(
        "{} cascade points, snr = {:.4e}·f^{:.4}, unity at {:.3e} Hz",
        curve.points.len(),
        fit.amplitude,
        fit.exponent,
        fit.unity_snr_hz
    );
    Ok(vec![csv_path, json_path])
}
