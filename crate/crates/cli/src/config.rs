//! Experiment configuration: JSON documents with defaults and validation.

use std::path::PathBuf;

use minnaert::bubble::{DistanceConvention, MaterialParams};
use minnaert::geometry::{CurveDescriptor, ParametricCurve};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Table1,
    Table2,
    SpectrumMap,
    DistanceSweep,
    ScatterSweep,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Table1 => "table1",
            Experiment::Table2 => "table2",
            Experiment::SpectrumMap => "spectrum_map",
            Experiment::DistanceSweep => "distance_sweep",
            Experiment::ScatterSweep => "scatter_sweep",
        }
    }
}

/// `[lo, hi, count]` with `count` equispaced samples including both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis(pub f64, pub f64, pub usize);

impl Axis {
    pub fn samples(&self) -> Vec<f64> {
        let Axis(lo, hi, n) = *self;
        if n == 1 {
            return vec![lo];
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    pub fn as_tuple(&self) -> (f64, f64, usize) {
        (self.0, self.1, self.2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaGrid {
    pub re: Axis,
    #[serde(default = "default_im_axis")]
    pub im: Axis,
}

fn default_im_axis() -> Axis {
    Axis(0.0, 0.0, 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    /// Bubble shape; two-bubble experiments place two copies on the x-axis.
    #[serde(default = "default_geometry")]
    pub geometry: CurveDescriptor,
    /// Explicit materials; table1 derives them from `background` and each δ instead.
    #[serde(default)]
    pub materials: Option<MaterialParams>,
    /// ρ = κ of the background in table1, with ρ_b = κ_b = δ·background.
    #[serde(default = "default_background")]
    pub background: f64,
    #[serde(default)]
    pub delta_list: Option<Vec<f64>>,
    #[serde(default)]
    pub d_list: Option<Vec<f64>>,
    #[serde(default)]
    pub omega_grid: Option<OmegaGrid>,
    /// Contrast used by scatter sweeps and single-bubble spectrum maps without explicit materials.
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub distance_convention: DistanceConvention,
    /// Distance of the far-field probe from the bubble center.
    #[serde(default = "default_far_radius")]
    pub far_radius: f64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_n() -> usize {
    512
}
fn default_tol() -> f64 {
    1e-10
}
fn default_max_iter() -> usize {
    100
}
fn default_geometry() -> CurveDescriptor {
    CurveDescriptor::Circle { center: [0.0, 0.0], radius: 1.0 }
}
fn default_background() -> f64 {
    1000.0
}
fn default_far_radius() -> f64 {
    1000.0
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

pub const TABLE1_DELTAS: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
pub const TABLE2_DISTANCES: [f64; 2] = [10.0, 100.0];

impl ExperimentConfig {
    pub fn deltas(&self) -> Vec<f64> {
        self.delta_list.clone().unwrap_or_else(|| TABLE1_DELTAS.to_vec())
    }

    pub fn distances(&self) -> Vec<f64> {
        self.d_list.clone().unwrap_or_else(|| TABLE2_DISTANCES.to_vec())
    }

    /// Materials for two-bubble runs: explicit, else ρ = κ = 1000, ρ_b = 1.1, κ_b = 0.1.
    pub fn pair_materials(&self) -> MaterialParams {
        self.materials.unwrap_or(MaterialParams { rho: 1000.0, kappa: 1000.0, rho_b: 1.1, kappa_b: 0.1 })
    }

    /// Materials for single-bubble sweeps: explicit, else matched with contrast `delta` (default 1e-3).
    pub fn single_materials(&self) -> Result<MaterialParams, CliError> {
        match self.materials {
            Some(m) => Ok(m),
            None => MaterialParams::matched(self.background, self.delta.unwrap_or(1e-3)).map_err(CliError::from_validation),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |key: &str, reason: String| Err(CliError::Validation { key: key.to_string(), reason });
        if self.n < 16 || self.n % 2 != 0 {
            return invalid("n", format!("must be even and at least 16, got {}", self.n));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return invalid("tol", format!("must lie in (0, 1), got {}", self.tol));
        }
        if self.max_iter == 0 {
            return invalid("max_iter", "must be positive".into());
        }
        ParametricCurve::new(self.geometry.clone()).map_err(CliError::from_validation)?;
        if let Some(m) = &self.materials {
            m.validate().map_err(CliError::from_validation)?;
        }
        if !(self.background.is_finite() && self.background > 0.0) {
            return invalid("background", format!("must be positive, got {}", self.background));
        }
        if !(self.far_radius.is_finite() && self.far_radius > 0.0) {
            return invalid("far_radius", format!("must be positive, got {}", self.far_radius));
        }
        if let Some(d) = self.delta {
            if !(d.is_finite() && d > 0.0) {
                return invalid("delta", format!("must be positive, got {d}"));
            }
        }
        let check_list = |key: &str, list: &Option<Vec<f64>>| -> Result<(), CliError> {
            if let Some(values) = list {
                if values.is_empty() {
                    return invalid(key, "must not be empty".into());
                }
                if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                    return invalid(key, format!("entries must be positive, got {v}"));
                }
            }
            Ok(())
        };
        check_list("delta_list", &self.delta_list)?;
        check_list("d_list", &self.d_list)?;
        if let Some(grid) = &self.omega_grid {
            for (key, axis) in [("omega_grid.re", grid.re), ("omega_grid.im", grid.im)] {
                if axis.2 == 0 || !axis.0.is_finite() || !axis.1.is_finite() {
                    return invalid(key, "needs finite bounds and a positive count".into());
                }
            }
            if grid.re.0 <= 0.0 {
                return invalid("omega_grid.re", "frequencies must be positive".into());
            }
        }
        match self.experiment {
            Experiment::SpectrumMap | Experiment::DistanceSweep | Experiment::ScatterSweep if self.omega_grid.is_none() => {
                invalid("omega_grid", format!("required by {}", self.experiment.name()))
            }
            Experiment::DistanceSweep if self.d_list.is_none() => invalid("d_list", "required by distance_sweep".into()),
            _ => Ok(()),
        }
    }

    /// Hex SHA-256 of the canonical (key-sorted, compact) JSON form.
    pub fn hash(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        let canonical = serde_json::to_string(&value).expect("value serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parse and validate a configuration document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    config.validate()?;
    Ok(config)
}
