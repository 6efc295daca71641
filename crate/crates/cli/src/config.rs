//! Run configuration read from `--config`.

use std::path::Path;

use bdry_ext_core::io::{GeometryJson, MatrixJson, ParamJson};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryJson,
    pub extension: ExtensionJson,
    /// Extension matrices are given in raw L² boundary coordinates.
    #[serde(default)]
    pub raw_coords: bool,
    #[serde(default)]
    pub spectrum: SpectrumOptions,
    #[serde(default)]
    pub oracle: OracleOptions,
    #[serde(default)]
    pub form: Option<FormOptions>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// Exactly one of the fields must be present.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub preset: Option<String>,
    /// Robin parameter α.
    pub alpha: Option<f64>,
    pub unitary: Option<MatrixJson>,
    pub param: Option<ParamJson>,
    pub random: Option<RandomSpec>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumOptions {
    pub window: Option<[f64; 2]>,
    pub grid: Option<usize>,
    pub workers: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleOptions {
    pub elements: Option<usize>,
    pub count: Option<usize>,
}

/// Either a catalog function by name or the `eigen_index`-th eigenfunction
/// (0-based, with multiplicity) of the configured spectrum window.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormOptions {
    pub function: Option<String>,
    pub eigen_index: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_tol_one")]
    pub tol_one: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { tol_one: default_tol_one() }
    }
}

fn default_tol_one() -> f64 {
    bdry_ext_core::boundary::DEFAULT_TOL_ONE
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let cfg: Self = serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let e = &self.extension;
        let given = [e.preset.is_some(), e.unitary.is_some(), e.param.is_some(), e.random.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if given != 1 {
            return Err(CliError::Config(format!(
                "extension must contain exactly one of preset, unitary, param, random (found {given})"
            )));
        }
        if e.alpha.is_some() && e.preset.is_none() {
            return Err(CliError::Config("`alpha` only applies to presets".into()));
        }
        if !(self.tolerances.tol_one > 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        if let Some([lo, hi]) = self.spectrum.window {
            if !(lo < hi) {
                return Err(CliError::Config(format!("empty spectrum window [{lo}, {hi}]")));
            }
        }
        if let Some(f) = &self.form {
            if f.function.is_some() == f.eigen_index.is_some() {
                return Err(CliError::Config("form needs exactly one of function, eigen_index".into()));
            }
        }
        Ok(())
    }
}
