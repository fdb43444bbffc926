//! Filter/decimate cascade and the SNR-vs-cutoff curve.

use serde::{Deserialize, Serialize};

use super::fir::{design_lowpass, filter_apply};
use super::{snr, IntensityTrace};
use crate::error::CoreError;
use crate::fit::linear_fit;
use crate::Result;

/// One stage of the cascade: a lowpass design and a downsampling factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageSpec {
    pub decimation: usize,
    /// −3 dB cutoff as a fraction of the stage's input Nyquist frequency.
    pub cutoff_norm: f64,
    pub order: usize,
}

/// Cascade parameters.
///
/// The default reproduces the reference procedure: a first stage with
/// decimation 10 at cutoff 0.1 (order 150, the half-band order scaled by the
/// cutoff ratio), then identical stages with decimation 2 at cutoff 0.5 and
/// order 30 until fewer than `min_samples` samples remain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CascadeConfig {
    pub first_stage: StageSpec,
    pub later_stage: StageSpec,
    /// Apply each stage's filter once (1) or twice (2).
    pub passes_per_stage: u32,
    /// Stop once a stage would leave fewer samples than this.
    pub min_samples: usize,
}

impl Default for CascadeConfig {
    fn default() -> Self {
        Self {
            first_stage: StageSpec {
                decimation: 10,
                cutoff_norm: 0.1,
                order: 150,
            },
            later_stage: StageSpec {
                decimation: 2,
                cutoff_norm: 0.5,
                order: 30,
            },
            passes_per_stage: 1,
            min_samples: 1000,
        }
    }
}

impl CascadeConfig {
    /// Anti-aliasing contract: every stage must filter at or below the band
    /// that survives its decimation.
    pub fn validate(&self) -> Result<()> {
        for (name, stage) in [("first", self.first_stage), ("later", self.later_stage)] {
            if stage.decimation < 2 {
                return Err(CoreError::InvalidInput(format!(
                    "{name} stage decimation must be ≥ 2"
                )));
            }
            if stage.cutoff_norm > 1.0 / stage.decimation as f64 {
                return Err(CoreError::InvalidInput(format!(
                    "{name} stage cutoff {} above anti-aliasing bound 1/{}",
                    stage.cutoff_norm, stage.decimation
                )));
            }
        }
        if !(self.passes_per_stage == 1 || self.passes_per_stage == 2) {
            return Err(CoreError::InvalidInput(
                "passes_per_stage must be 1 or 2".into(),
            ));
        }
        if self.min_samples < 100 {
            return Err(CoreError::InvalidInput(
                "min_samples must be at least 100 (snr needs that many)".into(),
            ));
        }
        Ok(())
    }
}

/// One point of the SNR curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrPoint {
    /// Absolute −3 dB cutoff of the accumulated filtering, in Hz.
    pub cutoff_hz: f64,
    pub snr: f64,
}

/// Power-law description `snr(f) = amplitude · f^exponent` (f in Hz).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub amplitude: f64,
    pub exponent: f64,
    /// Extrapolated frequency where the fitted SNR reaches 1.
    pub unity_snr_hz: f64,
}

/// SNR as a function of cutoff frequency, highest cutoff first.
#[derive(Debug, Clone, Serialize)]
pub struct SnrCurve {
    pub points: Vec<SnrPoint>,
    pub fit: Option<PowerLawFit>,
}

/// Keep one sample in `d`: indices 0, d, 2d, … The caller is responsible for
/// having filtered the trace to at most `1/d` of Nyquist beforehand (the
/// cascade enforces this; standalone use is index bookkeeping only).
pub fn decimate(trace: &IntensityTrace, d: usize) -> Result<IntensityTrace> {
    if d == 0 {
        return Err(CoreError::InvalidInput("decimation factor 0".into()));
    }
    if d == 1 {
        return Ok(trace.clone());
    }
    let samples: Vec<f64> = trace.samples.iter().step_by(d).copied().collect();
    IntensityTrace::new(trace.sample_rate / d as f64, samples, &trace.unit)
}

fn apply_stage(trace: &IntensityTrace, stage: &StageSpec, passes: u32) -> Result<IntensityTrace> {
    let filter = design_lowpass(stage.order, stage.cutoff_norm)?;
    let mut filtered = filter_apply(trace, &filter)?;
    for _ in 1..passes {
        filtered = filter_apply(&filtered, &filter)?;
    }
    Ok(filtered)
}

/// Run the filter/decimate cascade over `trace` and record the SNR after each
/// filtering stage.
///
/// Each point's SNR is measured on the filtered signal *before* decimation;
/// its cutoff is the stage's normalized cutoff times the Nyquist frequency at
/// that moment. Decimating a properly filtered signal leaves the SNR
/// statistically unchanged, so the recorded cutoffs halve exactly from the
/// second point on.
pub fn cascade_snr(trace: &IntensityTrace, config: &CascadeConfig) -> Result<SnrCurve> {
    config.validate()?;
    let mut points = Vec::new();

    let first = apply_stage(trace, &config.first_stage, config.passes_per_stage)?;
    points.push(SnrPoint {
        cutoff_hz: config.first_stage.cutoff_norm * first.nyquist(),
        snr: snr(&first)?,
    });
    let mut current = decimate(&first, config.first_stage.decimation)?;

    loop {
        let stage = &config.later_stage;
        let needed = 10 * (stage.order + 1) + 1;
        if current.len() < needed {
            break;
        }
        let filtered = apply_stage(&current, stage, config.passes_per_stage)?;
        if filtered.len() < config.min_samples {
            break;
        }
        points.push(SnrPoint {
            cutoff_hz: stage.cutoff_norm * filtered.nyquist(),
            snr: snr(&filtered)?,
        });
        current = decimate(&filtered, stage.decimation)?;
    }

    if points.len() < 3 {
        return Err(CoreError::TraceTooShort {
            len: trace.len(),
            min: 3 * config.min_samples * 20,
            context: "cascade needs at least 3 stages",
        });
    }
    Ok(SnrCurve { points, fit: None })
}

/// [`cascade_snr`] with each stage's filter applied twice, doubling the
/// stopband attenuation (−6 dB at the cutoff instead of −3).
pub fn double_pass_variant(trace: &IntensityTrace, config: &CascadeConfig) -> Result<SnrCurve> {
    let config = CascadeConfig {
        passes_per_stage: 2,
        ..*config
    };
    cascade_snr(trace, &config)
}

/// Least-squares power-law fit of the curve on log(snr) vs log(f), restricted
/// to points with cutoff in `[f_min, f_max]`.
pub fn fit_power_law(curve: &SnrCurve, f_min: f64, f_max: f64) -> Result<PowerLawFit> {
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for p in &curve.points {
        if p.cutoff_hz >= f_min && p.cutoff_hz <= f_max && p.snr.is_finite() && p.snr > 0.0 {
            xs.push(p.cutoff_hz.ln());
            ys.push(p.snr.ln());
        }
    }
    if xs.len() < 4 {
        return Err(CoreError::FitRangeTooSparse { found: xs.len() });
    }
    let (exponent, intercept) = linear_fit(&xs, &ys);
    let amplitude = intercept.exp();
    // snr = A·f^p = 1  ⇒  f = A^(−1/p)
    let unity_snr_hz = amplitude.powf(-1.0 / exponent);
    Ok(PowerLawFit {
        amplitude,
        exponent,
        unity_snr_hz,
    })
}
