//! First-order (golden-rule) heating rate, the analytic oracle for the
//! ensemble simulation.
//!
//! A quadratic perturbation only drives Δn = ±2 transitions, so to first
//! order only the noise density at 2ω₀ matters. With the crate's one-sided
//! angular-frequency convention, the transition rates per unit dimensionless
//! time are
//!
//!   R(n → n+2) = (π/16)·S'(2)·(n+1)(n+2)
//!   R(n → n−2) = (π/16)·S'(2)·n(n−1)
//!
//! where S'(ω') = ω₀·S(ω'·ω₀) is the density on the dimensionless frequency
//! axis. Each transition moves 2ħω₀ of energy, so a state with level
//! populations p_n heats initially at
//!
//!   Ė = (π/8)·S'(2)·Σ_n p_n·(4n + 2)   [ħω₀² units]
//!
//! For the ground state this is (π/4)·S'(2). The formula is derived from
//! time-dependent perturbation theory alone and shares no code with the
//! integrator, which is the point: the two routes cross-validate.

use super::{LadderState, TrapSpec};
use crate::noise::NoiseSpec;

/// Predicted initial heating rate in ħω₀² for the given starting state.
///
/// Returns 0 when the noise band does not reach 2ω₀ (no first-order
/// heating). Valid in the weak-noise regime where the transition probability
/// per trap period is small; the caller checks that, not this function.
pub fn perturbative_rate(trap: &TrapSpec, spec: &NoiseSpec, initial: &LadderState) -> f64 {
    let density_dimless = trap.omega0 * spec.density_at(2.0 * trap.omega0);
    let weighted: f64 = initial
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm_sqr() * (4.0 * n as f64 + 2.0))
        .sum();
    std::f64::consts::FRAC_PI_8 * density_dimless * weighted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::LadderState;

    #[test]
    fn silent_above_the_band_edge() {
        // Band edge 1/τ₀ below 2ω₀: no spectral weight at the transition.
        let trap = TrapSpec::new(1.0, 12).unwrap();
        let spec = NoiseSpec::new(0.01, 1.0).unwrap(); // edge at 1 < 2
        assert_eq!(
            perturbative_rate(&trap, &spec, &LadderState::ground(12)),
            0.0
        );
    }

    #[test]
    fn ground_state_rate() {
        // |⟨2|x²|0⟩|² = 2 in ladder units → Ė = (π/4)·S₀τ₀ for ω₀ = 1.
        let trap = TrapSpec::new(1.0, 12).unwrap();
        let spec = NoiseSpec::new(0.01, 0.25).unwrap();
        let rate = perturbative_rate(&trap, &spec, &LadderState::ground(12));
        let expected = std::f64::consts::FRAC_PI_4 * 0.01 * 0.25;
        assert!((rate - expected).abs() < 1e-15);
    }

    #[test]
    fn linear_in_total_power() {
        let trap = TrapSpec::new(1.0, 12).unwrap();
        let ground = LadderState::ground(12);
        let s1 = NoiseSpec::new(0.01, 0.25).unwrap();
        let s2 = NoiseSpec::new(0.02, 0.25).unwrap();
        let r1 = perturbative_rate(&trap, &s1, &ground);
        let r2 = perturbative_rate(&trap, &s2, &ground);
        assert!((r2 - 2.0 * r1).abs() < 1e-15);
    }

    #[test]
    fn excited_levels_heat_faster() {
        // From |n⟩ the weight is 4n+2, so |2⟩ heats 5× faster than |0⟩.
        let trap = TrapSpec::new(1.0, 12).unwrap();
        let spec = NoiseSpec::new(0.01, 0.25).unwrap();
        let r0 = perturbative_rate(&trap, &spec, &LadderState::ground(12));
        let r2 = perturbative_rate(&trap, &spec, &LadderState::number_state(12, 2));
        assert!((r2 - 5.0 * r0).abs() < 1e-15);
    }

    #[test]
    fn physical_frequency_scaling() {
        // The dimensionless rate is invariant when (spec, trap) are expressed
        // in physical units consistently.
        let omega0 = 2.0 * std::f64::consts::PI * 3.35e3;
        let trap_si = TrapSpec::new(omega0, 12).unwrap();
        let spec_si = NoiseSpec::new(0.01, 0.25 / omega0).unwrap();
        let trap = TrapSpec::new(1.0, 12).unwrap();
        let spec = NoiseSpec::new(0.01, 0.25).unwrap();
        let a = perturbative_rate(&trap_si, &spec_si, &LadderState::ground(12));
        let b = perturbative_rate(&trap, &spec, &LadderState::ground(12));
        assert!((a - b).abs() / b < 1e-12);
    }
}
