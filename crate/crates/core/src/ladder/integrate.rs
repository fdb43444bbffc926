//! Equations of motion and the fourth-order Runge-Kutta stepper.

use num_complex::Complex64;

use super::coupling::{coupling_table, CouplingTable};
use super::LadderState;
use crate::error::CoreError;
use crate::noise::NoiseTrace;
use crate::Result;

/// Amplitude derivatives in the rotating frame, dimensionless time τ = ω₀t:
///
/// da_n/dτ = −(i/4)·ε(τ)·[ (2n+1)·a_n
///                        + √((n−1)n)·e^(+2iτ)·a_(n−2)
///                        + √((n+1)(n+2))·e^(−2iτ)·a_(n+2) ]
///
/// with terms referencing levels outside 0..=n_max dropped. The coupling
/// matrix is Hermitian, so Σ|a_n|² is conserved exactly by the flow; only
/// integrator truncation error and the absorbing boundary change it.
pub fn rhs(
    amplitudes: &[Complex64],
    eps: f64,
    tau: f64,
    table: &CouplingTable,
    out: &mut [Complex64],
) {
    let phase = Complex64::from_polar(1.0, 2.0 * tau);
    rhs_with_phase(amplitudes, eps, phase, table, out);
}

/// [`rhs`] with e^(2iτ) already in hand; the stepper maintains the phase by
/// recurrence instead of calling sin/cos at every stage.
pub(crate) fn rhs_with_phase(
    amplitudes: &[Complex64],
    eps: f64,
    phase: Complex64,
    table: &CouplingTable,
    out: &mut [Complex64],
) {
    debug_assert_eq!(amplitudes.len(), out.len());
    let levels = amplitudes.len();
    let phase_conj = phase.conj();
    let factor = Complex64::new(0.0, -0.25 * eps);
    for ((o, a), d) in out.iter_mut().zip(amplitudes).zip(table.diagonal_all()) {
        *o = a * *d;
    }
    let off = table.off_diagonal_all();
    // raising: |n⟩ feeds |n+2⟩ through the e^(+2iτ) sideband
    for ((o, a), c) in out[2..].iter_mut().zip(amplitudes).zip(off) {
        *o += phase * (a * *c);
    }
    // lowering: |n+2⟩ feeds |n⟩ through the e^(−2iτ) sideband
    for ((o, a), c) in out[..levels - 2]
        .iter_mut()
        .zip(&amplitudes[2..])
        .zip(off)
    {
        *o += phase_conj * (a * *c);
    }
    for o in out.iter_mut() {
        *o *= factor;
    }
}

/// Classic fourth-order Runge-Kutta stepper with reusable stage buffers.
///
/// The fluctuation ε is read from a sampled [`NoiseTrace`] by linear
/// interpolation at the stage times, which avoids the aliasing a zero-order
/// hold would introduce at the 2ω₀ resonance.
#[derive(Debug, Clone)]
pub struct Integrator {
    table: CouplingTable,
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    stage: Vec<Complex64>,
    // e^(2iτ) carried by recurrence between contiguous steps; resynced from
    // sin/cos periodically so rounding cannot accumulate.
    phase_tau: f64,
    phase: Complex64,
    rot_dt: f64,
    rot: Complex64,
    steps_since_sync: u32,
}

impl Integrator {
    pub fn new(n_max: usize) -> Result<Self> {
        let table = coupling_table(n_max)?;
        let zero = vec![Complex64::new(0.0, 0.0); n_max + 1];
        Ok(Self {
            table,
            k1: zero.clone(),
            k2: zero.clone(),
            k3: zero.clone(),
            k4: zero.clone(),
            stage: zero,
            phase_tau: f64::NAN,
            phase: Complex64::new(1.0, 0.0),
            rot_dt: f64::NAN,
            rot: Complex64::new(1.0, 0.0),
            steps_since_sync: 0,
        })
    }

    /// e^(2iτ) at the step start, from the cache when the step is contiguous
    /// with the previous one.
    fn phase_at(&mut self, tau: f64) -> Complex64 {
        let stale = self.steps_since_sync >= 1024
            || !((tau - self.phase_tau).abs() <= 1e-12 * tau.abs().max(1.0));
        if stale {
            self.phase = Complex64::from_polar(1.0, 2.0 * tau);
            self.steps_since_sync = 0;
        }
        self.phase
    }

    /// Half-step rotation e^(i·dt) (the phase advance of 2τ over dt/2).
    fn rotation(&mut self, dt: f64) -> Complex64 {
        if dt != self.rot_dt {
            self.rot_dt = dt;
            self.rot = Complex64::from_polar(1.0, dt);
        }
        self.rot
    }

    pub fn table(&self) -> &CouplingTable {
        &self.table
    }

    /// Advance one step and apply the absorbing boundary. Returns the
    /// population absorbed in this step.
    pub fn step(&mut self, state: &mut LadderState, noise: &NoiseTrace, dt: f64) -> Result<f64> {
        self.advance(state, noise, dt)?;
        Ok(state.absorb())
    }

    /// Advance one step with the absorbing boundary disabled (diagnostics:
    /// unitarity checks).
    pub fn step_no_absorb(
        &mut self,
        state: &mut LadderState,
        noise: &NoiseTrace,
        dt: f64,
    ) -> Result<()> {
        self.advance(state, noise, dt)
    }

    fn advance(&mut self, state: &mut LadderState, noise: &NoiseTrace, dt: f64) -> Result<()> {
        let t = state.time;
        if t < 0.0 || t + dt > noise.duration() * (1.0 + 1e-12) {
            return Err(CoreError::NoiseExhausted {
                t: t + dt,
                covered: noise.duration(),
            });
        }
        debug_assert_eq!(state.amplitudes.len(), self.k1.len());
        let eps_0 = noise.interp_unchecked(t);
        let eps_mid = noise.interp_unchecked(t + 0.5 * dt);
        let eps_1 = noise.interp_unchecked((t + dt).min(noise.duration()));

        let rot = self.rotation(dt);
        let phase_0 = self.phase_at(t);
        let phase_mid = phase_0 * rot;
        let phase_1 = phase_mid * rot;

        let a = &state.amplitudes;
        rhs_with_phase(a, eps_0, phase_0, &self.table, &mut self.k1);
        for (s, (ai, k)) in self.stage.iter_mut().zip(a.iter().zip(&self.k1)) {
            *s = ai + 0.5 * dt * k;
        }
        rhs_with_phase(&self.stage, eps_mid, phase_mid, &self.table, &mut self.k2);
        for (s, (ai, k)) in self.stage.iter_mut().zip(a.iter().zip(&self.k2)) {
            *s = ai + 0.5 * dt * k;
        }
        rhs_with_phase(&self.stage, eps_mid, phase_mid, &self.table, &mut self.k3);
        for (s, (ai, k)) in self.stage.iter_mut().zip(a.iter().zip(&self.k3)) {
            *s = ai + dt * k;
        }
        rhs_with_phase(&self.stage, eps_1, phase_1, &self.table, &mut self.k4);

        let sixth = dt / 6.0;
        for (i, ai) in state.amplitudes.iter_mut().enumerate() {
            *ai += sixth * (self.k1[i] + 2.0 * self.k2[i] + 2.0 * self.k3[i] + self.k4[i]);
        }
        state.time = t + dt;
        self.phase_tau = state.time;
        self.phase = phase_1;
        self.steps_since_sync += 1;
        Ok(())
    }
}
