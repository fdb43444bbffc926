//! Trace file formats.
//!
//! Two normative formats:
//!
//! - **CSV**: `time_s,value` rows (or a single `value` column, in which case
//!   the sample rate comes from the `--sample-rate` flag). Lines starting
//!   with `#` are comments; the first non-comment line may be a header.
//!   Values print with 17 significant digits, so a round trip recovers every
//!   f64 bit.
//! - **RAW**: 64-bit little-endian floats, with a mandatory JSON sidecar at
//!   `<file>.json` holding `sample_rate_hz`, `unit`, and an optional `scale`
//!   multiplier applied on load.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use asetrap_core::IntensityTrace;

use crate::manifest::RunManifest;
use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceFormat {
    Csv,
    Raw,
}

/// Sidecar metadata for RAW traces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub sample_rate_hz: f64,
    pub unit: String,
    #[serde(default)]
    pub scale: Option<f64>,
}

/// Write `trace` under `dir/name` in the requested format. Returns the paths
/// written (trace file first, then sidecar for RAW).
pub fn write_trace(
    dir: &Path,
    name: &str,
    format: TraceFormat,
    trace: &IntensityTrace,
    manifest: &RunManifest,
) -> Result<Vec<PathBuf>> {
    match format {
        TraceFormat::Csv => {
            let path = dir.join(format!("{name}.csv"));
            let mut buf = String::new();
            buf.push_str(&format!("# asetrap v{} trace\n", env!("CARGO_PKG_VERSION")));
            buf.push_str(&format!("# manifest: {}\n", manifest.to_line()));
            buf.push_str("time_s,value\n");
            let dt = 1.0 / trace.sample_rate;
            for (i, s) in trace.samples.iter().enumerate() {
                buf.push_str(&format!("{:.16e},{:.16e}\n", i as f64 * dt, s));
            }
            fs::write(&path, buf)?;
            Ok(vec![path])
        }
        TraceFormat::Raw => {
            let path = dir.join(format!("{name}.raw"));
            let mut file = fs::File::create(&path)?;
            let mut bytes = Vec::with_capacity(trace.samples.len() * 8);
            for s in &trace.samples {
                bytes.extend_from_slice(&s.to_le_bytes());
            }
            file.write_all(&bytes)?;
            let sidecar_path = dir.join(format!("{name}.raw.json"));
            let sidecar = Sidecar {
                sample_rate_hz: trace.sample_rate,
                unit: trace.unit.clone(),
                scale: None,
            };
            fs::write(
                &sidecar_path,
                serde_json::to_string_pretty(&sidecar)? + "\n",
            )?;
            Ok(vec![path, sidecar_path])
        }
    }
}

/// Load a trace, dispatching on the `.raw` extension; anything else parses
/// as CSV. `sample_rate_flag` covers single-column CSV files.
pub fn load_trace(path: &Path, sample_rate_flag: Option<f64>) -> Result<IntensityTrace> {
    let is_raw = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("raw"))
        .unwrap_or(false);
    if is_raw {
        load_raw(path)
    } else {
        load_csv(path, sample_rate_flag)
    }
}

fn load_raw(path: &Path) -> Result<IntensityTrace> {
    let sidecar_path = PathBuf::from(format!("{}.json", path.display()));
    let sidecar_text = fs::read_to_string(&sidecar_path).map_err(|e| {
        CliError::Input(format!(
            "RAW trace needs a sidecar at {}: {e}",
            sidecar_path.display()
        ))
    })?;
    let sidecar: Sidecar = serde_json::from_str(&sidecar_text).map_err(|e| {
        CliError::Input(format!(
            "malformed sidecar {}: {e}",
            sidecar_path.display()
        ))
    })?;
    let bytes = fs::read(path)?;
    if bytes.len() % 8 != 0 {
        return Err(CliError::Input(format!(
            "RAW file length {} is not a multiple of 8",
            bytes.len()
        )));
    }
    let scale = sidecar.scale.unwrap_or(1.0);
    let samples: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()) * scale)
        .collect();
    Ok(IntensityTrace::new(
        sidecar.sample_rate_hz,
        samples,
        &sidecar.unit,
    )?)
}

fn load_csv(path: &Path, sample_rate_flag: Option<f64>) -> Result<IntensityTrace> {
    let text = fs::read_to_string(path)?;
    let mut times: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut columns: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if columns.is_none() => continue, // header line
            Err(e) => {
                return Err(CliError::Input(format!(
                    "{}:{}: unparsable value ({e})",
                    path.display(),
                    lineno + 1
                )));
            }
        };
        match columns {
            None => columns = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(CliError::Input(format!(
                    "{}:{}: expected {c} columns, found {}",
                    path.display(),
                    lineno + 1,
                    row.len()
                )));
            }
            _ => {}
        }
        match row.len() {
            1 => values.push(row[0]),
            2 => {
                times.push(row[0]);
                values.push(row[1]);
            }
            n => {
                return Err(CliError::Input(format!(
                    "{}:{}: traces have 1 or 2 columns, found {n}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
    }
    if values.len() < 2 {
        return Err(CliError::Input(format!(
            "{}: fewer than 2 samples",
            path.display()
        )));
    }
    let sample_rate = if times.is_empty() {
        sample_rate_flag.ok_or_else(|| {
            CliError::Input(
                "single-column CSV needs --sample-rate to fix the time axis".into(),
            )
        })?
    } else {
        let dt0 = times[1] - times[0];
        if dt0 <= 0.0 {
            return Err(CliError::Input("time column must increase".into()));
        }
        for (i, pair) in times.windows(2).enumerate() {
            let dt = pair[1] - pair[0];
            if ((dt - dt0) / dt0).abs() > 1e-6 {
                return Err(CliError::Input(format!(
                    "time column not uniform within 1 ppm at row {} ({dt} vs {dt0})",
                    i + 2
                )));
            }
        }
        1.0 / dt0
    };
    Ok(IntensityTrace::new(sample_rate, values, "arb")?)
}
