//! Harmonic oscillator with a stochastically fluctuating spring constant,
//! truncated to a number-state ladder with an absorbing top level.
//!
//! The Hamiltonian `H = p²/2M + ½k₀(1 + ε(t))x²` splits into a static
//! oscillator and a quadratic perturbation `½k₀ε(t)x²`, which couples number
//! states differing by 0 or ±2. The state is tracked as complex amplitudes
//! `a_n` in the frame rotating at the unperturbed level energies, so the
//! equations of motion carry explicit `e^(±2iτ)` factors and the only
//! dynamics left is the one driven by ε. Population reaching the top level
//! `n_max` is absorbed into a `lost` counter after every step, modeling
//! escape from the finite-depth trap.
//!
//! Everything here is dimensionless: time in units of `1/ω₀`, energy in
//! `ħω₀`, heating rates in `ħω₀²`. Inputs carrying physical units (seconds,
//! rad/s) are scaled on entry.

mod coupling;
mod ensemble;
mod integrate;
mod perturbative;

pub use coupling::{coupling_table, CouplingTable};
pub use ensemble::{ensemble_heating, run_realization, HeatingResult, Realization};
pub use integrate::{rhs, Integrator};
pub use perturbative::perturbative_rate;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::noise::NoiseSpec;
use crate::Result;

/// Trap parameters of the ladder model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapSpec {
    /// Angular trap frequency. Use 1.0 for dimensionless runs; any other
    /// value makes the module interpret times in the matching unit (seconds
    /// for rad/s).
    pub omega0: f64,
    /// Absorbing-boundary level: population reaching `n_max` counts as lost.
    pub n_max: usize,
}

impl TrapSpec {
    pub fn new(omega0: f64, n_max: usize) -> Result<Self> {
        if omega0 <= 0.0 || !omega0.is_finite() {
            return Err(CoreError::NonPositive {
                name: "omega0",
                value: omega0,
            });
        }
        if n_max < 4 {
            return Err(CoreError::InvalidInput(format!(
                "n_max must be at least 4 for a meaningful Δn = 2 ladder, got {n_max}"
            )));
        }
        Ok(Self { omega0, n_max })
    }
}

/// Initial condition of a realization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// Ground state |0⟩.
    Ground,
    /// Thermal mixture: each realization starts in a number state drawn from
    /// a Boltzmann distribution with the given mean occupation.
    Thermal { mean_occupation: f64 },
}

impl Default for InitialState {
    fn default() -> Self {
        Self::Ground
    }
}

/// State of one realization: amplitudes on levels 0..=n_max plus the
/// accumulated lost population.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderState {
    pub(crate) amplitudes: Vec<Complex64>,
    pub(crate) lost: f64,
    pub(crate) time: f64,
}

impl LadderState {
    /// Ground state |0⟩ at t = 0.
    pub fn ground(n_max: usize) -> Self {
        Self::number_state(n_max, 0)
    }

    /// Number state |n⟩ at t = 0.
    pub fn number_state(n_max: usize, n: usize) -> Self {
        assert!(n <= n_max, "level {n} beyond ladder top {n_max}");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_max + 1];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Self {
            amplitudes,
            lost: 0.0,
            time: 0.0,
        }
    }

    /// Arbitrary amplitudes (not renormalized), for tests and restarts.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>, lost: f64, time: f64) -> Result<Self> {
        if amplitudes.len() < 5 {
            return Err(CoreError::InvalidInput(
                "ladder needs at least 5 levels (n_max ≥ 4)".into(),
            ));
        }
        if lost < 0.0 {
            return Err(CoreError::NonPositive {
                name: "lost",
                value: lost,
            });
        }
        Ok(Self {
            amplitudes,
            lost,
            time,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Index of the absorbing level.
    pub fn top_level(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn lost(&self) -> f64 {
        self.lost
    }

    /// Current time in units of 1/ω₀.
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Population of level `n`.
    pub fn population(&self, n: usize) -> f64 {
        self.amplitudes[n].norm_sqr()
    }

    /// Σ|a_n|², the probability still on the ladder.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Σ|a_n|² + lost; conserved at 1 by the integrator-plus-absorber pair.
    pub fn total_probability(&self) -> f64 {
        self.norm_sq() + self.lost
    }

    /// Mean energy Σ n|a_n|² in units of ħω₀ (level energies E_n = nħω₀;
    /// the zero-point offset is excluded).
    pub fn energy(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a.norm_sqr())
            .sum()
    }

    /// Move the top-level population into `lost` and clear the amplitude.
    /// Idempotent after the first application. Returns the absorbed amount.
    pub fn absorb(&mut self) -> f64 {
        let top = self.top_level();
        let absorbed = self.amplitudes[top].norm_sqr();
        self.lost += absorbed;
        self.amplitudes[top] = Complex64::new(0.0, 0.0);
        absorbed
    }
}

/// Integration and ensemble parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Integrator step (same time unit as 1/omega0).
    pub dt: f64,
    /// Total integration time per realization.
    pub t_end: f64,
    pub n_realizations: usize,
    pub master_seed: u64,
    /// Fraction of the run over which rates are fitted (before the loss
    /// restriction is applied).
    pub fit_window: f64,
    /// Number of (E, lost) samples recorded per realization.
    pub output_points: usize,
    #[serde(default)]
    pub initial: InitialState,
}

impl SimConfig {
    /// Defaults resolving both the drive phase and the noise correlation:
    /// dt = min(2π/200, τ₀/20)/ω₀ scaled, 100 trap periods, 100 realizations.
    pub fn default_for(trap: &TrapSpec, spec: &NoiseSpec) -> Self {
        let period = 2.0 * std::f64::consts::PI / trap.omega0;
        let dt = (period / 200.0).min(spec.coherence_time / 20.0);
        Self {
            dt,
            t_end: 100.0 * period,
            n_realizations: 100,
            master_seed: 0,
            fit_window: 1.0,
            output_points: 200,
            initial: InitialState::Ground,
        }
    }

    /// Step-size and sanity bounds; `dt` must resolve both the trap period
    /// and the noise coherence time (dt ≤ min(2π/ω₀, τ₀)/20).
    pub fn validate(&self, trap: &TrapSpec, spec: &NoiseSpec) -> Result<()> {
        let limit =
            (2.0 * std::f64::consts::PI / trap.omega0).min(spec.coherence_time) / 20.0;
        if self.dt <= 0.0 {
            return Err(CoreError::NonPositive {
                name: "dt",
                value: self.dt,
            });
        }
        if self.dt > limit {
            return Err(CoreError::StepTooCoarse {
                dt: self.dt,
                limit,
            });
        }
        if self.t_end < 6.0 * self.dt {
            return Err(CoreError::InvalidInput(
                "t_end must cover at least 6 integrator steps".into(),
            ));
        }
        if self.n_realizations == 0 {
            return Err(CoreError::InvalidInput(
                "n_realizations must be at least 1".into(),
            ));
        }
        if !(self.fit_window > 0.0 && self.fit_window <= 1.0) {
            return Err(CoreError::InvalidInput(
                "fit_window must lie in (0, 1]".into(),
            ));
        }
        if self.output_points < 2 {
            return Err(CoreError::InvalidInput(
                "output_points must be at least 2".into(),
            ));
        }
        if let InitialState::Thermal { mean_occupation } = self.initial {
            if mean_occupation <= 0.0 {
                return Err(CoreError::NonPositive {
                    name: "mean_occupation",
                    value: mean_occupation,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ground_state_basics() {
        let state = LadderState::ground(12);
        assert_eq!(state.amplitudes().len(), 13);
        assert_eq!(state.energy(), 0.0);
        assert_eq!(state.norm_sq(), 1.0);
        assert_eq!(state.total_probability(), 1.0);
    }

    #[test]
    fn energy_of_simple_superpositions() {
        let mut amps = vec![Complex64::new(0.0, 0.0); 13];
        amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[2] = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        let state = LadderState::from_amplitudes(amps, 0.0, 0.0).unwrap();
        assert!((state.energy() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn absorb_bookkeeping() {
        let mut amps = vec![Complex64::new(0.0, 0.0); 13];
        amps[0] = Complex64::new(0.9f64.sqrt(), 0.0);
        amps[12] = Complex64::new(0.1f64.sqrt(), 0.0);
        let mut state = LadderState::from_amplitudes(amps, 0.0, 0.0).unwrap();
        let before = state.norm_sq();
        let absorbed = state.absorb();
        assert!((absorbed - 0.1).abs() < 1e-15);
        assert!((state.lost() - 0.1).abs() < 1e-15);
        assert!((state.norm_sq() - (before - 0.1)).abs() < 1e-15);
        // Idempotent after the first application.
        assert_eq!(state.absorb(), 0.0);
        assert!((state.lost() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn absorb_noop_when_top_empty() {
        let mut state = LadderState::ground(8);
        let copy = state.clone();
        state.absorb();
        assert_eq!(state, copy);
    }

    #[test]
    fn trap_spec_validation() {
        assert!(TrapSpec::new(1.0, 12).is_ok());
        assert!(TrapSpec::new(0.0, 12).is_err());
        assert!(TrapSpec::new(1.0, 3).is_err());
    }

    #[test]
    fn config_validation() {
        let trap = TrapSpec::new(1.0, 12).unwrap();
        let spec = NoiseSpec::new(1e-4, 0.25).unwrap();
        let config = SimConfig::default_for(&trap, &spec);
        assert!(config.validate(&trap, &spec).is_ok());
        assert!(config.dt <= 0.25 / 20.0);
        let bad = SimConfig {
            dt: 0.1,
            ..config
        };
        assert!(matches!(
            bad.validate(&trap, &spec),
            Err(CoreError::StepTooCoarse { .. })
        ));
    }

    proptest! {
        #[test]
        fn absorb_conserves_total_probability(
            res in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5..20),
            lost in 0.0f64..0.5,
        ) {
            let amps: Vec<Complex64> =
                res.iter().map(|(re, im)| Complex64::new(*re, *im)).collect();
            let mut state = LadderState::from_amplitudes(amps, lost, 0.0).unwrap();
            let total_before = state.total_probability();
            state.absorb();
            prop_assert!((state.total_probability() - total_before).abs() < 1e-12);
            prop_assert_eq!(state.population(state.top_level()), 0.0);
        }
    }
}
