use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::domain::{AngularSpec, BallRuleSpec, ConeRuleSpec, Dimension, RadialMap, SpaceTimePoint, WaveContext};
use crate::fields::BuiltinField;
use crate::series::WeightMode;
use crate::spacetime::DistanceMode;
use crate::transform::MeasureMode;

/// Flat key-value run description, read from TOML. Keys a command needs but
/// the file lacks are reported by name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "R")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers: Option<Vec<Vec<f64>>>,
    /// Emission times of space-time centres, one per entry of `centers`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_times: Option<Vec<f64>>,
    #[serde(rename = "J")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_mode: Option<WeightMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_mode: Option<DistanceMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure_mode: Option<MeasureMode>,

    /// Bessel order for `zeros`; defaults to `n/2 - 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,

    #[serde(skip_serializing_if = "Option::is_none")]

    pub radial_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_order: Option<usize>,

    #[serde(skip_serializing_if = "Option::is_none")]

    pub svd_cutoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha0_base: Option<Vec<f64>>,
    /// `formula` (default) or `oracle` coefficients for `reconstruct` and `spacetime`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,

    #[serde(rename = "R_cut")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_cut: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feature_scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_half_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eval_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eval_half_width: Option<f64>,

    #[serde(skip_serializing_if = "Option::is_none")]

    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<f64>,

    #[serde(skip_serializing_if = "Option::is_none")]

    pub field: Option<BuiltinField>,
    /// Origin of the test field; defaults to the first centre.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_origin: Option<Vec<f64>>,
    /// Spatial radius of the space-time box; defaults to `R`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_radius: Option<f64>,
    /// CSV file of `r,value` rows for a tabulated field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_file: Option<PathBuf>,

    #[serde(skip_serializing_if = "Option::is_none")]

    pub output_dir: Option<PathBuf>,
    /// Fault injection for `verify`: `wrong_zero_table`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<String>,
}

fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing config key `{key}`"))
}

fn bad(key: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("config key `{key}`: {why}"))
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    /// Reads a TOML config, or the `config` object of a JSON run manifest.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut config = if path.extension().is_some_and(|e| e == "json") {
            let manifest: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid manifest: {e}")))?;
            let inner = manifest
                .get("config")
                .cloned()
                .ok_or_else(|| CliError::Config("manifest has no `config` object".into()))?;
            serde_json::from_value(inner).map_err(|e| CliError::Config(format!("invalid manifest config: {e}")))?
        } else {
            Self::from_toml(&text)?
        };
        if let Some(file) = &config.field_file {
            if file.is_relative() {
                if let Some(dir) = path.parent() {
                    config.field_file = Some(dir.join(file));
                }
            }
        }
        Ok(config)
    }

    pub fn dimension(&self) -> Result<Dimension, CliError> {
        let n = self.n.ok_or_else(|| missing("n"))?;
        Dimension::new(n).map_err(|e| bad("n", e))
    }

    pub fn radius(&self) -> Result<f64, CliError> {
        let r = self.radius.ok_or_else(|| missing("R"))?;
        if !(r > 0.0) || !r.is_finite() {
            return Err(bad("R", "must be positive"));
        }
        Ok(r)
    }

    pub fn modes(&self) -> Result<usize, CliError> {
        match self.modes {
            None => Err(missing("J")),
            Some(0) => Err(bad("J", "must be at least 1")),
            Some(j) => Ok(j),
        }
    }

    pub fn centers(&self, n: Dimension) -> Result<Vec<Vec<f64>>, CliError> {
        let centers = self.centers.clone().unwrap_or_else(|| vec![vec![0.0; n.get()]]);
        if centers.is_empty() {
            return Err(bad("centers", "must list at least one point"));
        }
        for c in &centers {
            if c.len() != n.get() {
                return Err(bad("centers", format!("point {c:?} does not have {} coordinates", n.get())));
            }
            if c.iter().any(|v| !v.is_finite()) {
                return Err(bad("centers", "coordinates must be finite"));
            }
        }
        Ok(centers)
    }

    pub fn spacetime_centers(&self, n: Dimension) -> Result<Vec<SpaceTimePoint>, CliError> {
        let centers = self.centers(n)?;
        let times = self.center_times.clone().unwrap_or_else(|| vec![0.0; centers.len()]);
        if times.len() != centers.len() {
            return Err(bad("center_times", "needs one time per centre"));
        }
        Ok(centers.into_iter().zip(times).map(|(x, t)| SpaceTimePoint::new(x, t)).collect())
    }

    pub fn weight_mode(&self) -> WeightMode {
        self.weight_mode.unwrap_or(WeightMode::OrthogonalityConsistent)
    }

    pub fn seed(&self) -> u64 {
        self.mc_seed.unwrap_or(0)
    }

    fn positive_count(&self, key: &str, value: Option<usize>, default: usize) -> Result<usize, CliError> {
        match value.unwrap_or(default) {
            0 => Err(bad(key, "must be at least 1")),
            v => Ok(v),
        }
    }

    fn positive_real(&self, key: &str, value: Option<f64>, default: f64) -> Result<f64, CliError> {
        let v = value.unwrap_or(default);
        if !(v > 0.0) || !v.is_finite() {
            return Err(bad(key, "must be positive"));
        }
        Ok(v)
    }

    /// Ball rule spec: product rules for `n <= 3` unless `monte_carlo = true`.
    pub fn ball_spec(&self, n: Dimension) -> Result<BallRuleSpec, CliError> {
        let radial = self.positive_count("radial_order", self.radial_order, 64)?;
        if radial < 2 {
            return Err(bad("radial_order", "must be at least 2"));
        }
        let angular = if self.monte_carlo.unwrap_or(n.get() > 3) {
            AngularSpec::MonteCarlo {
                samples: self.positive_count("mc_samples", self.mc_samples, 20_000)?,
                seed: self.seed(),
            }
        } else {
            AngularSpec::Product {
                order: self.positive_count("angular_order", self.angular_order, 16)?,
            }
        };
        Ok(BallRuleSpec {
            radial_order: radial,
            angular,
            radial_map: RadialMap::Linear,
        })
    }

    pub fn cone_spec(&self, n: Dimension) -> Result<ConeRuleSpec, CliError> {
        if n.get() == 1 && !self.monte_carlo.unwrap_or(false) {
            Ok(ConeRuleSpec::Sliced {
                time_order: self.positive_count("time_order", self.time_order, 48)?,
                space_order: self.positive_count("radial_order", self.radial_order, 48)?,
            })
        } else {
            Ok(ConeRuleSpec::MonteCarlo {
                samples: self.positive_count("mc_samples", self.mc_samples, 100_000)?,
                seed: self.seed(),
            })
        }
    }

    pub fn wave(&self) -> Result<WaveContext, CliError> {
        WaveContext::new(self.c.unwrap_or(1.0)).map_err(|e| bad("c", e))
    }

    pub fn svd_cutoff(&self) -> Result<f64, CliError> {
        let v = self.svd_cutoff.unwrap_or(1e-10);
        if !(v > 0.0 && v < 1.0) {
            return Err(bad("svd_cutoff", "must lie in (0, 1)"));
        }
        Ok(v)
    }

    pub fn use_oracle(&self) -> Result<bool, CliError> {
        match self.coefficients.as_deref() {
            None | Some("formula") => Ok(false),
            Some("oracle") => Ok(true),
            Some(other) => Err(bad("coefficients", format!("expected `formula` or `oracle`, got `{other}`"))),
        }
    }

    pub fn samples(&self) -> Result<usize, CliError> {
        self.positive_count("samples", self.samples, 101)
    }

    /// The test field, with a tabulated profile loaded from `field_file`.
    pub fn field(&self) -> Result<BuiltinField, CliError> {
        match (&self.field, &self.field_file) {
            (Some(_), Some(_)) => Err(bad("field_file", "give either `field` or `field_file`, not both")),
            (Some(f), None) => Ok(f.clone()),
            (None, Some(path)) => read_tabulated(path),
            (None, None) => Err(missing("field")),
        }
    }

    pub fn field_origin(&self, n: Dimension) -> Result<Vec<f64>, CliError> {
        let origin = match &self.field_origin {
            Some(o) => o.clone(),
            None => self.centers(n)?.swap_remove(0),
        };
        if origin.len() != n.get() {
            return Err(bad("field_origin", format!("needs {} coordinates", n.get())));
        }
        Ok(origin)
    }

    pub fn box_radius(&self) -> Result<f64, CliError> {
        let default = self.radius()?;
        self.positive_real("box_radius", self.box_radius, default)
    }

    pub fn transform_grids(&self) -> Result<TransformGrids, CliError> {
        Ok(TransformGrids {
            lambda_max: self.lambda_max.map(|v| self.positive_real("lambda_max", Some(v), 1.0)).transpose()?,
            feature_scale: self.positive_real("feature_scale", self.feature_scale, 1.0)?,
            spectral_nodes: self.positive_count("spectral_nodes", self.spectral_nodes, 96)?,
            center_nodes: self.positive_count("center_nodes", self.center_nodes, 160)?,
            center_half_width: self.positive_real("center_half_width", self.center_half_width, 8.0)?,
            r_cut: self.r_cut.map(|v| self.positive_real("R_cut", Some(v), 1.0)).transpose()?,
            eval_nodes: self.positive_count("eval_nodes", self.eval_nodes, 81)?,
            eval_half_width: self.positive_real("eval_half_width", self.eval_half_width, 4.0)?,
            radial_order: self.positive_count("radial_order", self.radial_order, 96)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformGrids {
    pub lambda_max: Option<f64>,
    pub feature_scale: f64,
    pub spectral_nodes: usize,
    pub center_nodes: usize,
    pub center_half_width: f64,
    pub r_cut: Option<f64>,
    pub eval_nodes: usize,
    pub eval_half_width: f64,
    pub radial_order: usize,
}

fn read_tabulated(path: &Path) -> Result<BuiltinField, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| bad("field_file", format!("{}: {e}", path.display())))?;
    let mut samples = Vec::new();
    for row in reader.deserialize::<(f64, f64)>() {
        let (r, v) = row.map_err(|e| bad("field_file", e))?;
        samples.push([r, v]);
    }
    Ok(BuiltinField::Tabulated { samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_keys() {
        let c = RunConfig::from_toml(
            r#"
            n = 1
            R = 1.0
            J = 4
            weight_mode = "orthogonality_consistent"
            centers = [[0.0]]
            field = { name = "cosine_mode", m = 1 }
            "#,
        )
        .unwrap();
        assert_eq!(c.modes().unwrap(), 4);
        assert_eq!(c.field().unwrap(), BuiltinField::CosineMode { m: 1 });
    }

    #[test]
    fn missing_key_is_named() {
        let c = RunConfig::from_toml("n = 2").unwrap();
        match c.radius() {
            Err(CliError::Config(msg)) => assert!(msg.contains("`R`")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(RunConfig::from_toml("colour = 3").is_err());
    }
}
