//! Windowed-sinc lowpass FIR design and application.

use serde::Serialize;

use super::IntensityTrace;
use crate::error::CoreError;
use crate::Result;

/// Linear-phase lowpass FIR filter with unity DC gain.
#[derive(Debug, Clone, Serialize)]
pub struct FirFilter {
    taps: Vec<f64>,
    cutoff_norm: f64,
}

impl FirFilter {
    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Filter order (number of taps minus one).
    pub fn order(&self) -> usize {
        self.taps.len() - 1
    }

    /// Design cutoff: the −3 dB frequency as a fraction of Nyquist.
    pub fn cutoff_norm(&self) -> f64 {
        self.cutoff_norm
    }

    /// Magnitude response at `f_norm` (fraction of Nyquist, 0..=1).
    pub fn response_magnitude(&self, f_norm: f64) -> f64 {
        // ω = π·f_norm radians/sample
        let omega = std::f64::consts::PI * f_norm;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, t) in self.taps.iter().enumerate() {
            let phase = omega * k as f64;
            re += t * phase.cos();
            im -= t * phase.sin();
        }
        (re * re + im * im).sqrt()
    }

    /// Magnitude response in dB.
    pub fn response_db(&self, f_norm: f64) -> f64 {
        20.0 * self.response_magnitude(f_norm).log10()
    }
}

/// Hamming-windowed sinc taps for a given sinc cutoff (fraction of Nyquist),
/// normalized to unity DC gain.
fn windowed_sinc(order: usize, sinc_cutoff: f64) -> Vec<f64> {
    let n = order + 1;
    let center = order as f64 / 2.0;
    let mut taps: Vec<f64> = (0..n)
        .map(|k| {
            let x = k as f64 - center;
            let sinc = if x == 0.0 {
                sinc_cutoff
            } else {
                (std::f64::consts::PI * sinc_cutoff * x).sin() / (std::f64::consts::PI * x)
            };
            let window = 0.54
                - 0.46 * (2.0 * std::f64::consts::PI * k as f64 / order as f64).cos();
            sinc * window
        })
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in &mut taps {
        *t /= sum;
    }
    taps
}

/// Design a lowpass filter whose magnitude response crosses −3 dB at
/// `cutoff_norm` (fraction of Nyquist).
///
/// A windowed sinc puts roughly −6 dB at its nominal cutoff, so the sinc
/// cutoff is tuned by bisection until the realized −3 dB point lands on the
/// request. Designs whose achieved response misses the target by more than
/// 0.2 dB (order too low for the cutoff) are rejected.
pub fn design_lowpass(order: usize, cutoff_norm: f64) -> Result<FirFilter> {
    if !(0.0 < cutoff_norm && cutoff_norm < 1.0) {
        return Err(CoreError::FilterDesign(format!(
            "cutoff_norm must be in (0, 1), got {cutoff_norm}"
        )));
    }
    if order < 8 {
        return Err(CoreError::FilterDesign(format!(
            "order {order} below minimum of 8"
        )));
    }
    let target = std::f64::consts::FRAC_1_SQRT_2;
    let response_at_target = |c: f64| {
        FirFilter {
            taps: windowed_sinc(order, c),
            cutoff_norm,
        }
        .response_magnitude(cutoff_norm)
    };
    // The response at the target frequency grows with the sinc cutoff;
    // bracket the crossing then bisect.
    let mut lo = cutoff_norm * 0.5;
    let mut hi = cutoff_norm;
    while response_at_target(hi) < target && hi < 0.999 {
        lo = hi;
        hi = (hi + 0.25 * (1.0 - cutoff_norm)).min(0.999);
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if response_at_target(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let filter = FirFilter {
        taps: windowed_sinc(order, 0.5 * (lo + hi)),
        cutoff_norm,
    };
    let achieved_db = filter.response_db(cutoff_norm);
    if (achieved_db + 3.0103).abs() > 0.2 {
        return Err(CoreError::FilterDesign(format!(
            "order {order} cannot place −3 dB at {cutoff_norm} (achieved {achieved_db:.2} dB)"
        )));
    }
    Ok(filter)
}

/// Convolve `trace` with `filter`, discarding the leading and trailing edge
/// transients (the first and last `order` samples of the full convolution),
/// so every output sample saw a full tap span. Sample rate is unchanged.
pub fn filter_apply(trace: &IntensityTrace, filter: &FirFilter) -> Result<IntensityTrace> {
    let taps = filter.taps();
    let min_len = 10 * taps.len();
    if trace.len() <= min_len {
        return Err(CoreError::TraceTooShort {
            len: trace.len(),
            min: min_len + 1,
            context: "filtering",
        });
    }
    let x = &trace.samples;
    let out_len = x.len() - filter.order();
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let acc: f64 = taps
            .iter()
            .rev()
            .zip(&x[i..i + taps.len()])
            .map(|(t, v)| t * v)
            .sum();
        out.push(acc);
    }
    IntensityTrace::new(trace.sample_rate, out, &trace.unit)
}
