//! Ensemble runs and rate extraction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::integrate::Integrator;
use super::{InitialState, LadderState, SimConfig, TrapSpec};
use crate::error::CoreError;
use crate::fit::linear_fit;
use crate::noise::{synth_band_limited, NoiseSpec};
use crate::seed::derive_seed;
use crate::Result;

/// Recorded time series of one realization. Times are dimensionless (units
/// of 1/ω₀), energies in ħω₀.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Realization {
    pub times: Vec<f64>,
    pub energy: Vec<f64>,
    pub lost: Vec<f64>,
    /// Seed of this realization's noise, derived from the master seed.
    pub seed: u64,
}

/// Ensemble heating and loss rates with their standard errors.
///
/// Rates are slopes of least-squares line fits to the ensemble-mean energy
/// and lost-population curves over the fit window, in units of ħω₀².
/// Standard errors come from the realization-to-realization scatter of the
/// per-realization slopes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatingResult {
    /// Heating rate dE/dτ in ħω₀².
    pub e_dot: f64,
    /// Loss rate d(lost)/dτ.
    pub loss_rate: f64,
    pub stderr_e_dot: f64,
    pub stderr_loss: f64,
    /// Losses crossed the 1% threshold before a usable fit window formed;
    /// the rates were fitted over the unrestricted window and should be
    /// treated as unreliable.
    pub saturated: bool,
    /// Fit window in dimensionless time.
    pub fit_start: f64,
    pub fit_end: f64,
    pub n_realizations: usize,
    pub master_seed: u64,
}

/// Integrate a single realization.
///
/// The noise seed is `derive_seed(master_seed, index)`; everything else
/// follows deterministically, so the same arguments always reproduce the
/// same series. Energy and lost population are recorded on an evenly spaced
/// grid of `config.output_points` step boundaries (plus the initial point).
pub fn run_realization(
    trap: &TrapSpec,
    spec: &NoiseSpec,
    config: &SimConfig,
    index: usize,
) -> Result<Realization> {
    config.validate(trap, spec)?;
    // Scale to dimensionless time.
    let tau0 = spec.coherence_time * trap.omega0;
    let dt = config.dt * trap.omega0;
    let t_end = config.t_end * trap.omega0;
    let scaled_spec = NoiseSpec::new(spec.total_power, tau0)?;

    let seed = derive_seed(config.master_seed, index as u64);
    let steps = (t_end / dt).ceil() as usize;
    // Noise sampling resolves the coherence time; the trace length depends
    // only on (t_end, tau0), so changing the integrator step reuses the
    // exact same realization.
    let noise_dt = (tau0 / 10.0).min(t_end / 16.0);
    let noise = synth_band_limited(&scaled_spec, t_end + 3.0 * noise_dt, noise_dt, seed)?;

    let mut state = match config.initial {
        InitialState::Ground => LadderState::ground(trap.n_max),
        InitialState::Thermal { mean_occupation } => {
            // Geometric (Boltzmann) level distribution with the requested
            // mean, truncated below the absorbing level.
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, u64::MAX));
            let q = mean_occupation / (1.0 + mean_occupation);
            let u: f64 = rng.random();
            let level = (u.ln() / q.ln()).floor() as usize;
            LadderState::number_state(trap.n_max, level.min(trap.n_max - 1))
        }
    };

    let mut integrator = Integrator::new(trap.n_max)?;
    let record_every = (steps / config.output_points).max(1);
    let mut times = Vec::with_capacity(config.output_points + 1);
    let mut energy = Vec::with_capacity(config.output_points + 1);
    let mut lost = Vec::with_capacity(config.output_points + 1);
    times.push(0.0);
    energy.push(state.energy());
    lost.push(state.lost());
    for step_index in 1..=steps {
        integrator.step(&mut state, &noise, dt)?;
        if step_index % record_every == 0 || step_index == steps {
            times.push(state.time());
            energy.push(state.energy());
            lost.push(state.lost());
        }
    }
    Ok(Realization {
        times,
        energy,
        lost,
        seed,
    })
}

/// Run the ensemble and extract heating and loss rates.
///
/// Realizations execute in parallel; the reduction iterates in realization
/// order, so results are bit-identical regardless of scheduling. The fit
/// window is the configured fraction of the run, further restricted to the
/// region where the ensemble-mean lost population stays below 1%.
pub fn ensemble_heating(
    trap: &TrapSpec,
    spec: &NoiseSpec,
    config: &SimConfig,
) -> Result<HeatingResult> {
    if config.n_realizations < 2 {
        return Err(CoreError::InvalidInput(
            "ensemble needs at least 2 realizations for a standard error".into(),
        ));
    }
    config.validate(trap, spec)?;
    let realizations: Vec<Realization> = (0..config.n_realizations)
        .into_par_iter()
        .map(|i| run_realization(trap, spec, config, i))
        .collect::<Result<_>>()?;

    let times = &realizations[0].times;
    let grid = times.len();
    let mut mean_lost = vec![0.0f64; grid];
    for r in &realizations {
        for (m, l) in mean_lost.iter_mut().zip(&r.lost) {
            *m += l;
        }
    }
    for m in &mut mean_lost {
        *m /= realizations.len() as f64;
    }

    let window_cap = ((grid as f64 * config.fit_window).ceil() as usize).clamp(2, grid);
    let loss_limit = mean_lost
        .iter()
        .position(|&l| l >= 0.01)
        .unwrap_or(grid);
    let (end, saturated) = if loss_limit >= 2 {
        (loss_limit.min(window_cap), false)
    } else {
        (window_cap, true)
    };

    let window = &times[..end];
    let mut slopes_e = Vec::with_capacity(realizations.len());
    let mut slopes_l = Vec::with_capacity(realizations.len());
    for r in &realizations {
        slopes_e.push(linear_fit(window, &r.energy[..end]).0);
        slopes_l.push(linear_fit(window, &r.lost[..end]).0);
    }
    let (e_dot, stderr_e_dot) = mean_and_stderr(&slopes_e);
    let (loss_rate, stderr_loss) = mean_and_stderr(&slopes_l);

    Ok(HeatingResult {
        e_dot,
        loss_rate,
        stderr_e_dot,
        stderr_loss,
        saturated,
        fit_start: window[0],
        fit_end: window[end - 1],
        n_realizations: realizations.len(),
        master_seed: config.master_seed,
    })
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
