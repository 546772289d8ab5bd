//! JSON input files: physical parameters and initial data.
//!
//! Unknown keys are rejected so that a misspelt override cannot silently
//! fall back to a default.

use std::fs;
use std::path::Path;

use kgt_core::{InitialData, PhysicalParams, Profile, Tabulated};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Overrides of the default (electron) physical parameters, SI units.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass_kg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_m_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0_joule: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon0_f_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hbar_j_s: Option<f64>,
}

impl ParamsFile {
    pub fn apply(&self, base: PhysicalParams) -> PhysicalParams {
        PhysicalParams {
            mass: self.mass_kg.unwrap_or(base.mass),
            alpha: self.alpha.unwrap_or(base.alpha),
            c: self.c_m_s.unwrap_or(base.c),
            v0: self.v0_joule.unwrap_or(base.v0),
            epsilon0: self.epsilon0_f_m.unwrap_or(base.epsilon0),
            hbar: self.hbar_j_s.unwrap_or(base.hbar),
        }
    }

    /// Full record of `p`, as written to metadata sidecars.
    pub fn record(p: &PhysicalParams) -> Self {
        ParamsFile {
            mass_kg: Some(p.mass),
            alpha: Some(p.alpha),
            c_m_s: Some(p.c),
            v0_joule: Some(p.v0),
            epsilon0_f_m: Some(p.epsilon0),
            hbar_j_s: Some(p.hbar),
        }
    }
}

/// One initial-data profile, tagged by `"shape"`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProfileFile {
    Gaussian {
        center: f64,
        width: f64,
        amplitude: f64,
    },
    Rectangle {
        center: f64,
        halfwidth: f64,
        amplitude: f64,
    },
    Constant {
        amplitude: f64,
    },
    #[default]
    Zero,
    /// Linear interpolation between samples, zero outside `[x[0], x[n-1]]`.
    Tabulated {
        x: Vec<f64>,
        values: Vec<f64>,
    },
}

impl ProfileFile {
    pub fn to_profile(&self) -> kgt_core::Result<Profile> {
        match self {
            ProfileFile::Gaussian {
                center,
                width,
                amplitude,
            } => Profile::gaussian(*center, *width, *amplitude),
            ProfileFile::Rectangle {
                center,
                halfwidth,
                amplitude,
            } => Profile::rectangle(*center, *halfwidth, *amplitude),
            ProfileFile::Constant { amplitude } => Profile::constant(*amplitude),
            ProfileFile::Zero => Ok(Profile::Zero),
            ProfileFile::Tabulated { x, values } => Ok(Profile::Tabulated(Tabulated::new(
                x.clone(),
                values.clone(),
            )?)),
        }
    }
}

/// `{"phi": {...}, "psi": {...}}`; a missing profile is zero.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InitialDataFile {
    #[serde(default)]
    pub phi: ProfileFile,
    #[serde(default)]
    pub psi: ProfileFile,
}

impl InitialDataFile {
    pub fn to_data(&self) -> kgt_core::Result<InitialData> {
        Ok(InitialData::new(
            self.phi.to_profile()?,
            self.psi.to_profile()?,
        ))
    }
}

pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &Path) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::input(origin, e))
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
    parse_json(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn parses_documented_initial_data() {
        let text = r#"{"phi": {"shape": "gaussian", "center": 0, "width": 1e-10, "amplitude": 300}, "psi": {"shape": "zero"}}"#;
        let file: InitialDataFile = parse_json(text, origin()).unwrap();
        let data = file.to_data().unwrap();
        assert_eq!(data.phi, Profile::gaussian(0.0, 1e-10, 300.0).unwrap());
        assert_eq!(data.psi, Profile::Zero);
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = parse_json::<ParamsFile>(r#"{"alpha": 1, "alhpa": 2}"#, origin()).unwrap_err();
        assert!(err.to_string().contains("alhpa"), "{err}");
        let err = parse_json::<InitialDataFile>(r#"{"phi": {"shape": "gaussian", "center": 0, "width": 1, "amplitude": 1, "sigma": 3}}"#, origin())
            .unwrap_err();
        assert!(err.to_string().contains("sigma"), "{err}");
        let err =
            parse_json::<InitialDataFile>(r#"{"chi": {"shape": "zero"}}"#, origin()).unwrap_err();
        assert!(err.to_string().contains("chi"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn params_override_defaults() {
        let file: ParamsFile = parse_json(r#"{"alpha": 1}"#, origin()).unwrap();
        let p = file.apply(PhysicalParams::default());
        assert_eq!(p.alpha, 1.0);
        assert_eq!(p.c, PhysicalParams::default().c);
        let round: ParamsFile = parse_json(
            &serde_json::to_string(&ParamsFile::record(&p)).unwrap(),
            origin(),
        )
        .unwrap();
        assert_eq!(round.apply(PhysicalParams::default()), p);
    }

    #[test]
    fn tabulated_profiles_are_validated() {
        let text = r#"{"psi": {"shape": "tabulated", "x": [0, 1], "values": [1]}}"#;
        let file: InitialDataFile = parse_json(text, origin()).unwrap();
        assert!(file.to_data().is_err());
    }
}
