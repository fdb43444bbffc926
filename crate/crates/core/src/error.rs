//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// A parameter that must be strictly positive was not.
    #[error("{name} must be positive (got {value})")]
    NonPositive { name: &'static str, value: f64 },

    /// Sample spacing too coarse to resolve the requested band.
    #[error("sample spacing {dt} cannot resolve the band edge (limit {limit})")]
    DtTooCoarse { dt: f64, limit: f64 },

    /// A trace construction that would alias (sample rate below twice the
    /// band edge).
    #[error("sample rate {fs} Hz below Nyquist limit for bandwidth {bandwidth} Hz")]
    Aliased { fs: f64, bandwidth: f64 },

    /// An input sequence is shorter than an operation requires.
    #[error("trace of {len} samples is too short ({context}, minimum {min})")]
    TraceTooShort {
        len: usize,
        min: usize,
        context: &'static str,
    },

    /// SNR is undefined because the trace mean is zero.
    #[error("SNR undefined: trace mean is zero")]
    UndefinedSnr,

    /// Filter design could not meet its specification.
    #[error("filter design failed: {0}")]
    FilterDesign(String),

    /// Not enough points in the requested fit range.
    #[error("power-law fit needs at least 4 points in range, found {found}")]
    FitRangeTooSparse { found: usize },

    /// The noise trace does not cover the requested integration interval.
    #[error("noise trace exhausted at t = {t}: trace covers {covered} time units")]
    NoiseExhausted { t: f64, covered: f64 },

    /// Integrator step incompatible with the configured bounds.
    #[error("step size {dt} exceeds stability bound {limit}")]
    StepTooCoarse { dt: f64, limit: f64 },

    /// Generic invalid-argument case with context.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
