//! Optional JSON configuration file.
//!
//! Everything is optional; missing fields fall back to built-in defaults.
//!
//! ```json
//! {
//!   "species": { "cs133": 2.2069e-25 },
//!   "depth_per_intensity": 2.55e-36,
//!   "scatter_reference": { "depth_kelvin": 900e-6, "rate_kelvin_per_s": 30e-9 },
//!   "sim": { "output_points": 200 }
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use asetrap_core::{CouplingConstants, ScatterReference, Species};

use crate::{CliError, Result};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Extra species, name → mass in kg. Overrides the built-ins on clash.
    #[serde(default)]
    pub species: BTreeMap<String, f64>,
    /// Trap depth per unit peak intensity, J·m²/W.
    pub depth_per_intensity: Option<f64>,
    pub scatter_reference: Option<ScatterReference>,
    #[serde(default)]
    pub sim: SimDefaults,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimDefaults {
    pub dt: Option<f64>,
    pub fit_window: Option<f64>,
    pub output_points: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Input(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text).map_err(|e| {
                    CliError::Input(format!("malformed config {}: {e}", p.display()))
                })
            }
        }
    }

    /// Species lookup: explicit mass beats the config table beats built-ins.
    pub fn species(&self, name: &str, mass_override: Option<f64>) -> Result<Species> {
        if let Some(mass) = mass_override {
            return Ok(Species::new(name, mass)?);
        }
        if let Some(&mass) = self.species.get(name) {
            return Ok(Species::new(name, mass)?);
        }
        match name {
            "rb87" => Ok(Species::rb87()),
            other => Err(CliError::Input(format!(
                "unknown species '{other}': add it to the config file or pass --mass"
            ))),
        }
    }

    pub fn coupling(&self) -> CouplingConstants {
        let mut coupling = CouplingConstants::default();
        if let Some(u) = self.depth_per_intensity {
            coupling.depth_per_intensity = u;
        }
        if let Some(r) = self.scatter_reference {
            coupling.scatter_reference = r;
        }
        coupling
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_when_no_file() {
        let c = FileConfig::load(None).unwrap();
        assert!(c.species("rb87", None).is_ok());
        assert!(c.species("unobtainium", None).is_err());
        assert!(c.species("unobtainium", Some(1e-25)).is_ok());
    }

    #[test]
    fn config_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(
            &path,
            r#"{"species": {"cs133": 2.2069e-25}, "depth_per_intensity": 1e-36}"#,
        )
        .unwrap();
        let c = FileConfig::load(Some(&path)).unwrap();
        assert!((c.species("cs133", None).unwrap().mass - 2.2069e-25).abs() < 1e-30);
        assert_eq!(c.coupling().depth_per_intensity, 1e-36);
        // scatter reference untouched
        assert!((c.coupling().scatter_reference.depth_kelvin - 900e-6).abs() < 1e-12);
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"speceis": {}}"#).unwrap();
        assert!(FileConfig::load(Some(&path)).is_err());
    }
}
