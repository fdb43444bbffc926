//! Band-limited flat-spectrum noise synthesis.
//!
//! The fractional fluctuation process ε(t) is modeled as zero-mean Gaussian
//! noise with a one-sided angular-frequency spectrum that is constant at
//! `total_power · coherence_time` from zero up to the band edge
//! `1/coherence_time`, and zero above. Under the crate-wide convention
//! `⟨ε²⟩ = ∫₀^∞ S(ω) dω`, the variance of the process is `total_power`
//! regardless of the coherence time.
//!
//! Synthesis is done in the frequency domain: independent complex Gaussian
//! coefficients with the prescribed magnitude profile, Hermitian symmetry,
//! inverse FFT. The spectral shape is therefore exact by construction; a bin
//! straddling the band edge receives weight proportional to its in-band
//! fraction. The zero-frequency coefficient is held at zero (the realization
//! is exactly zero-mean in expectation), which costs a variance deficit of
//! half a bin width — negligible for durations long against the coherence
//! time.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::dsp::IntensityTrace;
use crate::error::CoreError;
use crate::Result;

/// Spectral shape tag. Only the flat band model is implemented; the tag
/// exists so traces record what produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandShape {
    #[default]
    Flat,
}

/// Description of the stochastic fractional-fluctuation process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Total noise power: the variance of ε, equal to the integral of the
    /// one-sided spectral density over angular frequency.
    pub total_power: f64,
    /// Coherence time τ₀; the spectrum extends to angular frequency 1/τ₀.
    /// Unit is whatever time unit the caller works in (seconds, or 1/ω₀ in
    /// the dimensionless ladder simulation).
    pub coherence_time: f64,
    pub band_shape: BandShape,
}

impl NoiseSpec {
    pub fn new(total_power: f64, coherence_time: f64) -> Result<Self> {
        if total_power < 0.0 || !total_power.is_finite() {
            return Err(CoreError::InvalidInput(format!(
                "total noise power must be finite and non-negative, got {total_power}"
            )));
        }
        if coherence_time <= 0.0 || !coherence_time.is_finite() {
            return Err(CoreError::NonPositive {
                name: "coherence_time",
                value: coherence_time,
            });
        }
        Ok(Self {
            total_power,
            coherence_time,
            band_shape: BandShape::Flat,
        })
    }

    /// Band edge in angular frequency.
    pub fn band_edge(&self) -> f64 {
        1.0 / self.coherence_time
    }

    /// One-sided spectral density at angular frequency `omega` (≥ 0).
    /// The edge is inclusive: the flat level applies up to and including
    /// `1/coherence_time`.
    pub fn density_at(&self, omega: f64) -> f64 {
        match self.band_shape {
            BandShape::Flat => {
                if omega <= self.band_edge() {
                    self.total_power * self.coherence_time
                } else {
                    0.0
                }
            }
        }
    }
}

/// A sampled realization of ε(t).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseTrace {
    /// Sample spacing, same time unit as the spec's coherence time.
    pub dt: f64,
    pub samples: Vec<f64>,
    /// Seed that generated this realization (ChaCha12).
    pub seed: u64,
}

impl NoiseTrace {
    /// Time span covered by the samples.
    pub fn duration(&self) -> f64 {
        self.dt * self.samples.len().saturating_sub(1) as f64
    }

    /// Population variance of the samples about their mean.
    pub fn variance(&self) -> f64 {
        variance_of(&self.samples)
    }

    /// Linearly interpolated value at time `t ∈ [0, duration]`.
    pub fn value_at(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t > self.duration() {
            return Err(CoreError::NoiseExhausted {
                t,
                covered: self.duration(),
            });
        }
        Ok(self.interp_unchecked(t))
    }

    /// Interpolation without the range check; callers guarantee coverage.
    #[inline]
    pub(crate) fn interp_unchecked(&self, t: f64) -> f64 {
        let pos = t / self.dt;
        let idx = pos as usize;
        if idx + 1 >= self.samples.len() {
            return self.samples[self.samples.len() - 1];
        }
        let frac = pos - idx as f64;
        self.samples[idx] * (1.0 - frac) + self.samples[idx + 1] * frac
    }
}

pub(crate) fn variance_of(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n
}

/// Synthesize a realization of the band-limited process described by `spec`.
///
/// Deterministic in all arguments: the same `(spec, duration, dt, seed)`
/// yields a bit-identical trace. The trace holds `round(duration/dt)`
/// samples. `dt` must resolve the band edge (`dt ≤ π·coherence_time`, i.e.
/// the Nyquist frequency of the sampling is at or above the band edge);
/// durations of at least ~100 coherence times give meaningful statistics.
pub fn synth_band_limited(
    spec: &NoiseSpec,
    duration: f64,
    dt: f64,
    seed: u64,
) -> Result<NoiseTrace> {
    if duration <= 0.0 || !duration.is_finite() {
        return Err(CoreError::NonPositive {
            name: "duration",
            value: duration,
        });
    }
    if dt <= 0.0 || !dt.is_finite() {
        return Err(CoreError::NonPositive {
            name: "dt",
            value: dt,
        });
    }
    let limit = std::f64::consts::PI * spec.coherence_time;
    if dt > limit {
        return Err(CoreError::DtTooCoarse { dt, limit });
    }
    let n = (duration / dt).round() as usize;
    let n = n.max(2);
    let samples = spectral_synthesis(spec.total_power, spec.band_edge(), n, dt, seed);
    Ok(NoiseTrace { dt, samples, seed })
}

/// Synthesize an intensity trace mimicking a broadband source on a
/// photodetector: a constant `mean` plus band-limited Gaussian noise that is
/// spectrally flat from DC to `bandwidth` (Hz) with rms `mean / snr_raw`.
///
/// `snr_raw = +∞` is accepted and produces a constant trace.
pub fn synth_ase_trace(
    mean: f64,
    snr_raw: f64,
    bandwidth: f64,
    fs: f64,
    n: usize,
    seed: u64,
) -> Result<IntensityTrace> {
    if bandwidth <= 0.0 {
        return Err(CoreError::NonPositive {
            name: "bandwidth",
            value: bandwidth,
        });
    }
    if fs < 2.0 * bandwidth {
        return Err(CoreError::Aliased { fs, bandwidth });
    }
    if snr_raw <= 0.0 {
        return Err(CoreError::NonPositive {
            name: "snr_raw",
            value: snr_raw,
        });
    }
    if n < 2 {
        return Err(CoreError::TraceTooShort {
            len: n,
            min: 2,
            context: "synthesized trace",
        });
    }
    let rms = if snr_raw.is_infinite() {
        0.0
    } else {
        mean / snr_raw
    };
    let dt = 1.0 / fs;
    let samples = if rms == 0.0 {
        vec![mean; n]
    } else {
        let omega_edge = 2.0 * std::f64::consts::PI * bandwidth;
        let mut s = spectral_synthesis(rms * rms, omega_edge, n, dt, seed);
        for v in &mut s {
            *v += mean;
        }
        s
    };
    IntensityTrace::new(fs, samples, "arb")
}

/// Frequency-domain synthesis core shared by both generators.
///
/// Produces `n` samples of zero-mean Gaussian noise whose one-sided
/// angular-frequency spectrum is flat at `variance / omega_edge` on
/// `[0, omega_edge]`. Works on a power-of-two grid internally and truncates
/// to `n`, which preserves the per-sample covariance structure.
fn spectral_synthesis(variance: f64, omega_edge: f64, n: usize, dt: f64, seed: u64) -> Vec<f64> {
    if variance == 0.0 {
        return vec![0.0; n];
    }
    let nfft = n.next_power_of_two();
    let dw = 2.0 * std::f64::consts::PI / (nfft as f64 * dt);
    let level = variance / omega_edge;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let normal = StandardNormal;

    let mut spectrum = vec![Complex64::new(0.0, 0.0); nfft];
    let nf = nfft as f64;
    // Positive-frequency bins, drawn in ascending order so the realization
    // is a pure function of the seed.
    for k in 1..nfft / 2 {
        let wk = k as f64 * dw;
        let in_band = in_band_fraction(wk - 0.5 * dw, wk + 0.5 * dw, omega_edge);
        if in_band == 0.0 {
            break; // flat band: nothing above the edge bin
        }
        // Conjugate pair (k, nfft-k) must contribute level·weight·dw to the
        // variance: E|X_k|² = N²·S_k·Δω / 2.
        let sigma2 = nf * nf * level * in_band * dw / 2.0;
        let amp = (sigma2 / 2.0).sqrt();
        let g1: f64 = normal.sample(&mut rng);
        let g2: f64 = normal.sample(&mut rng);
        spectrum[k] = Complex64::new(amp * g1, amp * g2);
        spectrum[nfft - k] = spectrum[k].conj();
    }
    // Nyquist bin is real-valued and self-conjugate; it covers the half
    // interval just below the folding frequency.
    let w_nyq = nfft as f64 / 2.0 * dw;
    let nyq_measure = in_band_fraction(w_nyq - 0.5 * dw, w_nyq, omega_edge) * 0.5 * dw;
    if nyq_measure > 0.0 {
        let g: f64 = normal.sample(&mut rng);
        spectrum[nfft / 2] = Complex64::new(nf * (level * nyq_measure).sqrt() * g, 0.0);
    }

    crate::fft::inverse(nfft).process(&mut spectrum);
    spectrum
        .iter()
        .take(n)
        .map(|c| c.re / nf)
        .collect()
}

/// Fraction of the interval `[lo, hi]` lying inside `[0, edge]`.
fn in_band_fraction(lo: f64, hi: f64, edge: f64) -> f64 {
    let overlap = (hi.min(edge) - lo.max(0.0)).max(0.0);
    overlap / (hi - lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psd::{psd_estimate, Sampled};

    #[test]
    fn zero_power_gives_zero_trace() {
        let spec = NoiseSpec::new(0.0, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 100.0, 0.1, 7).unwrap();
        assert!(trace.samples.iter().all(|&s| s == 0.0));
        assert_eq!(trace.samples.len(), 1000);
    }

    #[test]
    fn rejects_bad_arguments() {
        let spec = NoiseSpec::new(0.01, 1.0).unwrap();
        assert!(synth_band_limited(&spec, -1.0, 0.1, 0).is_err());
        assert!(synth_band_limited(&spec, 100.0, 0.0, 0).is_err());
        // dt > π·τ₀ cannot resolve the band edge
        assert!(synth_band_limited(&spec, 100.0, 3.5, 0).is_err());
        assert!(NoiseSpec::new(-0.1, 1.0).is_err());
        assert!(NoiseSpec::new(0.1, 0.0).is_err());
    }

    #[test]
    fn variance_matches_total_power() {
        // Oracle: direct variance of the synthesized sequence; the spectrum
        // construction must deliver the specified total power.
        let spec = NoiseSpec::new(0.01, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 1e4, 0.05, 11).unwrap();
        let var = trace.variance();
        assert!(
            (var - 0.01).abs() < 0.001,
            "sample variance {var} not within 10% of 0.01"
        );
    }

    #[test]
    fn parseval_on_periodogram() {
        let spec = NoiseSpec::new(0.01, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 1e4, 0.05, 11).unwrap();
        let psd = psd_estimate(&trace, 4096).unwrap();
        let integral = psd.integral();
        assert!(
            (integral - trace.variance()).abs() / trace.variance() < 0.02,
            "PSD integral {integral} vs variance {}",
            trace.variance()
        );
    }

    #[test]
    fn autocorrelation_first_zero_near_pi_tau0() {
        // Oracle: the analytic autocorrelation of flat band-limited noise is
        // sin(t/τ₀)/(t/τ₀), whose first zero sits at t = π·τ₀.
        let spec = NoiseSpec::new(0.01, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 2e4, 0.05, 3).unwrap();
        let s = &trace.samples;
        let n = s.len();
        let mean = s.iter().sum::<f64>() / n as f64;
        let autocorr = |lag: usize| -> f64 {
            (0..n - lag)
                .map(|i| (s[i] - mean) * (s[i + lag] - mean))
                .sum::<f64>()
                / (n - lag) as f64
        };
        let max_lag = (5.0 / trace.dt) as usize;
        let mut first_zero = None;
        let mut prev = autocorr(0);
        for lag in 1..max_lag {
            let c = autocorr(lag);
            if prev > 0.0 && c <= 0.0 {
                first_zero = Some(lag as f64 * trace.dt);
                break;
            }
            prev = c;
        }
        let zero = first_zero.expect("no zero crossing found within 5 time units");
        assert!(
            (zero - std::f64::consts::PI).abs() < 0.3,
            "first zero at {zero}, expected near π"
        );
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let spec = NoiseSpec::new(0.05, 2.0).unwrap();
        let a = synth_band_limited(&spec, 500.0, 0.1, 99).unwrap();
        let b = synth_band_limited(&spec, 500.0, 0.1, 99).unwrap();
        assert_eq!(a, b);
        let c = synth_band_limited(&spec, 500.0, 0.1, 100).unwrap();
        assert_ne!(a.samples, c.samples);
    }

    #[test]
    fn stationarity_halves_agree() {
        // Variance over each half of a long realization; tolerance set by the
        // ~T/(2π·τ₀) effective samples per half (≈8000 here → ~2% scatter).
        let spec = NoiseSpec::new(1.0, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 1e5, 0.1, 17).unwrap();
        let half = trace.samples.len() / 2;
        let v1 = variance_of(&trace.samples[..half]);
        let v2 = variance_of(&trace.samples[half..]);
        let rel = (v1 - v2).abs() / (0.5 * (v1 + v2));
        assert!(rel < 0.05, "halves differ by {:.1}%", rel * 100.0);
    }

    #[test]
    fn gaussian_excess_kurtosis_small() {
        let spec = NoiseSpec::new(1.0, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 1e5, 0.1, 23).unwrap();
        let s = &trace.samples;
        let n = s.len() as f64;
        let mean = s.iter().sum::<f64>() / n;
        let m2 = s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let m4 = s.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
        let excess = m4 / (m2 * m2) - 3.0;
        assert!(excess.abs() < 0.1, "excess kurtosis {excess}");
    }

    #[test]
    fn band_limited_spectrum_drops_past_edge() {
        let spec = NoiseSpec::new(1.0, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 2e4, 0.1, 31).unwrap();
        let psd = psd_estimate(&trace, 2048).unwrap();
        let in_band = psd.mean_density_in(0.1, 0.8);
        let above = psd.mean_density_in(1.8, 2.2);
        assert!(
            above < in_band * 0.01,
            "density at 2/τ₀ only {:.1} dB below band",
            10.0 * (in_band / above).log10()
        );
    }

    #[test]
    fn ase_trace_hits_requested_snr() {
        let trace = synth_ase_trace(168.0, 56.0, 1e9, 20e9, 1 << 20, 5).unwrap();
        let snr = crate::dsp::snr(&trace).unwrap();
        assert!((snr - 56.0).abs() < 1.0, "snr {snr}");
    }

    #[test]
    fn ase_trace_infinite_snr_is_constant() {
        let trace = synth_ase_trace(10.0, f64::INFINITY, 1e9, 20e9, 4096, 5).unwrap();
        assert!(trace.samples.iter().all(|&s| s == 10.0));
    }

    #[test]
    fn ase_trace_noise_rms() {
        // Direct statistics oracle: rms of (trace − mean) must equal mean/snr.
        let trace = synth_ase_trace(10.0, 10.0, 1e6, 1e7, 1 << 20, 8).unwrap();
        let rms = variance_of(&trace.samples).sqrt();
        assert!((rms - 1.0).abs() < 0.03, "rms {rms}");
    }

    #[test]
    fn ase_trace_rejects_aliased_construction() {
        assert!(matches!(
            synth_ase_trace(1.0, 10.0, 1e9, 1.5e9, 1024, 0),
            Err(CoreError::Aliased { .. })
        ));
    }

    #[test]
    fn sampled_views_agree() {
        let spec = NoiseSpec::new(0.01, 1.0).unwrap();
        let trace = synth_band_limited(&spec, 100.0, 0.1, 7).unwrap();
        assert_eq!(trace.samples(), trace.samples.as_slice());
        assert_eq!(trace.sample_spacing(), 0.1);
    }

    #[test]
    fn interpolation_is_linear_between_samples() {
        let trace = NoiseTrace {
            dt: 1.0,
            samples: vec![0.0, 2.0, 4.0],
            seed: 0,
        };
        assert_eq!(trace.value_at(0.5).unwrap(), 1.0);
        assert_eq!(trace.value_at(2.0).unwrap(), 4.0);
        assert!(trace.value_at(2.1).is_err());
    }
}
