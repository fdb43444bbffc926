//! Averaged-periodogram power spectral density estimation.
//!
//! Non-overlapping rectangular segments, periodograms averaged bin by bin.
//! The estimate follows the crate convention: a one-sided density over
//! angular frequency whose bin-sum integral equals the variance of the
//! (mean-subtracted) input exactly, by Parseval's theorem. This is the
//! validation tool for the synthesizers in [`crate::noise`], which share the
//! same convention.

use num_complex::Complex64;
use serde::Serialize;

use crate::dsp::IntensityTrace;
use crate::error::CoreError;
use crate::noise::NoiseTrace;
use crate::Result;

/// Normalization convention of a [`Psd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PsdConvention {
    /// One-sided density over angular frequency: `∫₀^∞ S(ω) dω = variance`.
    OneSidedAngular,
}

/// Estimated power spectral density on a uniform frequency grid.
#[derive(Debug, Clone, Serialize)]
pub struct Psd {
    /// Ascending angular-frequency grid, from 0 to the Nyquist frequency.
    pub frequencies: Vec<f64>,
    /// Density values, same length as `frequencies`.
    pub density: Vec<f64>,
    pub convention: PsdConvention,
}

impl Psd {
    /// Bin width of the uniform grid.
    pub fn bin_width(&self) -> f64 {
        self.frequencies[1] - self.frequencies[0]
    }

    /// Integral of the density over the full grid (bin sum). Equals the
    /// variance of the analyzed signal up to segment-truncation effects.
    pub fn integral(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.bin_width()
    }

    /// Mean density over bins with frequency in `[lo, hi]`.
    pub fn mean_density_in(&self, lo: f64, hi: f64) -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (f, d) in self.frequencies.iter().zip(&self.density) {
            if *f >= lo && *f <= hi {
                sum += d;
                count += 1;
            }
        }
        assert!(count > 0, "no PSD bins in [{lo}, {hi}]");
        sum / count as f64
    }
}

/// Uniformly sampled real signal, the common view of the trace types.
pub trait Sampled {
    fn samples(&self) -> &[f64];
    /// Spacing between consecutive samples.
    fn sample_spacing(&self) -> f64;
}

impl Sampled for NoiseTrace {
    fn samples(&self) -> &[f64] {
        &self.samples
    }
    fn sample_spacing(&self) -> f64 {
        self.dt
    }
}

impl Sampled for IntensityTrace {
    fn samples(&self) -> &[f64] {
        &self.samples
    }
    fn sample_spacing(&self) -> f64 {
        1.0 / self.sample_rate
    }
}

/// Estimate the one-sided PSD of `trace` by averaging periodograms of
/// consecutive length-`segment_length` segments.
///
/// The trace mean is subtracted once, globally, before segmentation, so the
/// integral of the estimate matches the trace variance. Eight or more
/// segments are recommended for a usable estimate; a trailing partial
/// segment is discarded.
pub fn psd_estimate<T: Sampled>(trace: &T, segment_length: usize) -> Result<Psd> {
    let samples = trace.samples();
    let dt = trace.sample_spacing();
    if segment_length < 2 {
        return Err(CoreError::InvalidInput(
            "segment_length must be at least 2".into(),
        ));
    }
    if samples.len() < segment_length {
        return Err(CoreError::TraceTooShort {
            len: samples.len(),
            min: segment_length,
            context: "PSD segmentation",
        });
    }
    let n_segments = samples.len() / segment_length;
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;

    let fft = crate::fft::forward(segment_length);
    let mut buf = vec![Complex64::new(0.0, 0.0); segment_length];

    let n_bins = segment_length / 2 + 1;
    let mut accum = vec![0.0f64; n_bins];
    for seg in 0..n_segments {
        let start = seg * segment_length;
        for (b, s) in buf.iter_mut().zip(&samples[start..start + segment_length]) {
            *b = Complex64::new(s - mean, 0.0);
        }
        fft.process(&mut buf);
        // One-sided fold: interior bins pick up their conjugate partner.
        accum[0] += buf[0].norm_sqr();
        for k in 1..segment_length / 2 {
            accum[k] += buf[k].norm_sqr() + buf[segment_length - k].norm_sqr();
        }
        accum[segment_length / 2] += buf[segment_length / 2].norm_sqr();
    }

    let n = segment_length as f64;
    let dw = 2.0 * std::f64::consts::PI / (n * dt);
    // |X_k|² / N² is the per-bin power; dividing by the bin width makes it a
    // density whose bin sum reproduces the segment variance (Parseval).
    let scale = 1.0 / (n_segments as f64 * n * n * dw);
    let density: Vec<f64> = accum.iter().map(|a| a * scale).collect();
    let frequencies: Vec<f64> = (0..n_bins).map(|k| k as f64 * dw).collect();
    Ok(Psd {
        frequencies,
        density,
        convention: PsdConvention::OneSidedAngular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn white_noise(n: usize, seed: u64) -> NoiseTrace {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        NoiseTrace {
            dt: 1.0,
            samples: (0..n).map(|_| StandardNormal.sample(&mut rng)).collect(),
            seed,
        }
    }

    #[test]
    fn white_noise_is_flat_and_parseval_holds() {
        let trace = white_noise(1 << 16, 4);
        let psd = psd_estimate(&trace, 1024).unwrap();
        let var = trace.variance();
        assert!(
            (psd.integral() - var).abs() / var < 0.1,
            "integral {} vs variance {var}",
            psd.integral()
        );
        // Flatness: broad band averages agree within a few percent.
        let low = psd.mean_density_in(0.1, 1.0);
        let high = psd.mean_density_in(2.0, 3.0);
        assert!((low - high).abs() / low < 0.1);
    }

    #[test]
    fn sinusoid_power_concentrates_in_one_bin() {
        // Analytic oracle: a sinusoid of amplitude A carries power A²/2.
        let segment = 1024usize;
        let amp = 3.0;
        let cycles = 32.0; // on-bin frequency for the segment length
        let samples: Vec<f64> = (0..segment * 16)
            .map(|i| amp * (2.0 * std::f64::consts::PI * cycles * i as f64 / segment as f64).sin())
            .collect();
        let trace = NoiseTrace {
            dt: 1.0,
            samples,
            seed: 0,
        };
        let psd = psd_estimate(&trace, segment).unwrap();
        let total = psd.integral();
        assert!(
            (total - amp * amp / 2.0).abs() / (amp * amp / 2.0) < 0.05,
            "total power {total}"
        );
        let peak = psd
            .density
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let peak_bin = psd.density.iter().position(|&d| d == peak).unwrap();
        assert_eq!(peak_bin, 32);
        // Dominance: the peak bin holds essentially all the power.
        assert!(peak * psd.bin_width() > 0.99 * total);
    }

    #[test]
    fn synthesized_band_matches_design_level() {
        // Construction consistency: flat density at total_power·τ₀ in band.
        let spec = crate::noise::NoiseSpec::new(0.04, 1.0).unwrap();
        let trace = crate::noise::synth_band_limited(&spec, 4e4, 0.1, 12).unwrap();
        let psd = psd_estimate(&trace, 4096).unwrap();
        let level = spec.total_power * spec.coherence_time;
        let measured = psd.mean_density_in(0.05, 0.9);
        let db = 10.0 * (measured / level).log10();
        assert!(db.abs() < 1.5, "in-band density off by {db:.2} dB");
    }

    #[test]
    fn rejects_short_trace() {
        let trace = white_noise(100, 0);
        assert!(matches!(
            psd_estimate(&trace, 512),
            Err(CoreError::TraceTooShort { .. })
        ));
    }
}
