//! Cutoff-dependent SNR analysis of sampled intensity traces.
//!
//! The central operation is [`cascade_snr`]: repeated lowpass-filter /
//! downsample stages, recording the signal-to-noise ratio after each
//! filtering pass. Filtering at a fixed, moderate normalized cutoff and then
//! halving the sample rate reaches arbitrarily low absolute cutoff
//! frequencies with one small, well-characterized filter — the direct route
//! would need impractically long filters (thousands of taps below 10⁻³ of
//! Nyquist).

mod cascade;
mod fir;

pub use cascade::{
    cascade_snr, decimate, double_pass_variant, fit_power_law, CascadeConfig, PowerLawFit,
    SnrCurve, SnrPoint, StageSpec,
};
pub use fir::{design_lowpass, filter_apply, FirFilter};

use serde::Serialize;

use crate::error::CoreError;
use crate::Result;

/// Uniformly sampled real-valued intensity signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntensityTrace {
    /// Sample rate in samples per second.
    pub sample_rate: f64,
    pub samples: Vec<f64>,
    /// Unit label carried through processing (e.g. "V").
    pub unit: String,
}

impl IntensityTrace {
    pub fn new(sample_rate: f64, samples: Vec<f64>, unit: &str) -> Result<Self> {
        if sample_rate <= 0.0 || !sample_rate.is_finite() {
            return Err(CoreError::NonPositive {
                name: "sample_rate",
                value: sample_rate,
            });
        }
        if samples.len() < 2 {
            return Err(CoreError::TraceTooShort {
                len: samples.len(),
                min: 2,
                context: "intensity trace",
            });
        }
        Ok(Self {
            sample_rate,
            samples,
            unit: unit.to_string(),
        })
    }

    /// Nyquist frequency in Hz.
    pub fn nyquist(&self) -> f64 {
        self.sample_rate / 2.0
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

/// Signal-to-noise ratio: mean divided by the rms fluctuation about the mean
/// (square root of the unbiased variance).
///
/// A constant trace has zero rms; that case is signaled as `+∞` rather than
/// an error. A zero-mean trace has no meaningful SNR and is an error.
pub fn snr(trace: &IntensityTrace) -> Result<f64> {
    let n = trace.len();
    if n < 100 {
        return Err(CoreError::TraceTooShort {
            len: n,
            min: 100,
            context: "snr estimate",
        });
    }
    let mean = trace.mean();
    let ss: f64 = trace
        .samples
        .iter()
        .map(|s| (s - mean) * (s - mean))
        .sum();
    let rms = (ss / (n as f64 - 1.0)).sqrt();
    // "Zero mean" at floating-point scale: indistinguishable from rounding
    // residue of the fluctuations themselves.
    if mean.abs() <= rms * 1e3 * f64::EPSILON || mean == 0.0 {
        return Err(CoreError::UndefinedSnr);
    }
    if rms == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(mean.abs() / rms)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trace with exact mean 168 and population rms 3.
    fn anchor_trace() -> IntensityTrace {
        let samples: Vec<f64> = (0..10_000)
            .map(|i| if i % 2 == 0 { 171.0 } else { 165.0 })
            .collect();
        IntensityTrace::new(1.0, samples, "mV").unwrap()
    }

    #[test]
    fn snr_of_mean_168_rms_3_is_56() {
        let s = snr(&anchor_trace()).unwrap();
        assert!((s - 56.0).abs() < 1.0, "snr {s}");
    }

    #[test]
    fn constant_trace_signals_infinite_snr() {
        let trace = IntensityTrace::new(1.0, vec![5.0; 200], "V").unwrap();
        assert_eq!(snr(&trace).unwrap(), f64::INFINITY);
    }

    #[test]
    fn zero_mean_trace_is_undefined() {
        let samples: Vec<f64> = (0..200).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let trace = IntensityTrace::new(1.0, samples, "V").unwrap();
        assert!(matches!(snr(&trace), Err(CoreError::UndefinedSnr)));
    }

    #[test]
    fn short_trace_rejected() {
        let trace = IntensityTrace::new(1.0, vec![1.0; 50], "V").unwrap();
        assert!(matches!(snr(&trace), Err(CoreError::TraceTooShort { .. })));
    }

    #[test]
    fn trace_validation() {
        assert!(IntensityTrace::new(0.0, vec![1.0, 2.0], "V").is_err());
        assert!(IntensityTrace::new(1.0, vec![1.0], "V").is_err());
    }
}
