//! Numerical toolkit for broadband-light optical dipole traps.
//!
//! Three computational pieces:
//!
//! - [`noise`]: synthesis of band-limited flat-spectrum noise (the fractional
//!   intensity-fluctuation process of an incoherent source) and averaged
//!   periodogram spectral estimation for validating it.
//! - [`dsp`]: signal-to-noise ratio of a sampled intensity trace as a function
//!   of lowpass cutoff frequency, computed by a cascade of FIR filtering and
//!   decimation stages, plus a power-law fit of the resulting curve.
//! - [`ladder`]: ensemble simulation of a harmonic oscillator with a
//!   stochastically fluctuating spring constant on a truncated number-state
//!   ladder with an absorbing boundary, yielding heating and loss rates.
//! - [`trap`]: Gaussian-beam trap arithmetic (depth, trap frequencies, unit
//!   conversions) connecting the dimensionless simulation output to lab
//!   quantities.
//!
//! # Conventions
//!
//! Noise spectra are one-sided densities over *angular* frequency, normalized
//! so that the variance of the process equals the integral of the density:
//! `⟨ε²⟩ = ∫₀^∞ S(ω) dω`. The flat band model has density
//! `total_power · coherence_time` up to the band edge `1/coherence_time` and
//! zero above. All synthesis and estimation routines share this convention.
//!
//! The ladder simulation works in scaled units: time in `1/ω₀`, energy in
//! `ħω₀`, heating rates in `ħω₀²`. [`trap`] converts rates to K/s.
//!
//! All randomness flows from explicit `u64` seeds through ChaCha12;
//! per-realization seeds derive from a master seed via [`seed::derive_seed`].
//! Identical inputs produce bit-identical outputs, independent of thread
//! scheduling.

pub mod constants;
pub mod dsp;
pub mod error;
mod fft;
mod fit;
pub mod ladder;
pub mod noise;
pub mod psd;
pub mod seed;
pub mod trap;

pub use dsp::{
    cascade_snr, decimate, design_lowpass, double_pass_variant, filter_apply, fit_power_law, snr,
    CascadeConfig, FirFilter, IntensityTrace, PowerLawFit, SnrCurve, SnrPoint, StageSpec,
};
pub use error::CoreError;
pub use ladder::{
    coupling_table, ensemble_heating, perturbative_rate, run_realization, CouplingTable,
    HeatingResult, InitialState, Integrator, LadderState, Realization, SimConfig, TrapSpec,
};
pub use noise::{synth_ase_trace, synth_band_limited, BandShape, NoiseSpec, NoiseTrace};
pub use psd::{psd_estimate, Psd, PsdConvention, Sampled};
pub use trap::{
    coherence_length, depth, level_to_temperature, rate_to_kelvin_per_s, scattering_heating,
    trap_frequencies, trap_params, BeamSpec, CouplingConstants, ScatterReference, Species,
    TrapParams,
};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CoreError>;
