//! `asetrap trap`: Gaussian-beam trap report.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use asetrap_core::{
    rate_to_kelvin_per_s, scattering_heating, trap_params, BeamSpec, Species, TrapParams,
};

use crate::config::FileConfig;
use crate::manifest::RunManifest;
use crate::{Cli, Result};

#[derive(Debug, Args, Serialize)]
pub struct TrapArgs {
    /// Species name (rb87 built in; extend via the config file).
    #[arg(long, default_value = "rb87")]
    pub species: String,

    /// Mass override in kg for species not in any table.
    #[arg(long)]
    pub mass: Option<f64>,

    /// Beam power in W.
    #[arg(long)]
    pub power: f64,

    /// Beam waist in m.
    #[arg(long)]
    pub waist: f64,

    /// Wavelength in m.
    #[arg(long)]
    pub wavelength: f64,

    /// Base name of the output file.
    #[arg(long, default_value = "trap")]
    pub name: String,
}

#[derive(Serialize)]
struct TrapReport<'a> {
    species: &'a str,
    mass_kg: f64,
    power_w: f64,
    waist_m: f64,
    wavelength_m: f64,
    #[serde(flatten)]
    params: TrapParams,
    scattering_heating_k_per_s: f64,
    /// Example conversion: a heating rate of 10⁻¹⁰ ħω₀² at the radial
    /// frequency, in K/s under this tool's convention.
    rate_1e_minus10_hbar_omega0_sq_k_per_s: f64,
    /// Conversion convention in force here.
    rate_convention: &'static str,
    /// Where other published conversions differ.
    rate_convention_note: &'static str,
    manifest: &'a RunManifest,
}

pub fn run(cli: &Cli, config: &FileConfig, args: &TrapArgs) -> Result<Vec<PathBuf>> {
    let species: Species = config.species(&args.species, args.mass)?;
    let beam = BeamSpec::new(args.power, args.waist, args.wavelength)?;
    let coupling = config.coupling();
    let params = trap_params(&beam, &species, &coupling);
    let manifest = RunManifest::new("trap", serde_json::to_value(args)?, cli.seed);

    let report = TrapReport {
        species: &species.name,
        mass_kg: species.mass,
        power_w: args.power,
        waist_m: args.waist,
        wavelength_m: args.wavelength,
        params,
        scattering_heating_k_per_s: scattering_heating(
            params.depth_kelvin,
            &coupling.scatter_reference,
        ),
        rate_1e_minus10_hbar_omega0_sq_k_per_s: rate_to_kelvin_per_s(1e-10, params.radial_freq),
        rate_convention: "dT/dt = rate × ħ(2πf)²/k_B (ħ-based)",
        rate_convention_note:
            "conventions using h instead of ħ report values larger by ~2π for the same rate",
        manifest: &manifest,
    };

    let json = serde_json::to_string_pretty(&report)? + "\n";
    print!("{json}");
    let path = cli.out.join(format!("{}.json", args.name));
    std::fs::write(&path, json)?;
    Ok(vec![path])
}
