//! Run configuration: JSON on disk, validated eagerly with diagnostics that
//! name the violated hypothesis.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use hwave_core::duhamel::{validate_exponent, FixedPointConfig, WeightProfile};
use hwave_core::error::{Error, Result};
use hwave_core::fields::{CoefficientField, DataNorms, PhysicalField};
use hwave_core::fixtures;
use hwave_core::fourier::TransformPlan;
use hwave_core::grids::{PhysicalGrid, SpectralGrid, SpectralGridSpec};
use hwave_core::params::ModelParams;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub model: ModelParams,
    #[serde(default)]
    pub spectral: Option<SpectralGridSpec>,
    #[serde(default)]
    pub physical: Option<PhysicalConfig>,
    #[serde(default)]
    pub data: Option<DataConfig>,
    #[serde(default)]
    pub experiment: ExperimentConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhysicalConfig {
    pub half_widths: Vec<f64>,
    pub counts: Vec<usize>,
}

/// Named initial-data families. The spike families are spectral-side data
/// that exercise the low and high frequency zones separately.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DataConfig {
    Gaussian {
        #[serde(default = "default_width")]
        width: f64,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
        /// Optional width of a Gaussian velocity datum; absent means zero.
        #[serde(default)]
        u1_width: Option<f64>,
    },
    LowFreqSpike {
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    HighFreqSpike {
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    File {
        path: PathBuf,
        /// Optional velocity-datum file; absent means zero.
        #[serde(default)]
        u1_path: Option<PathBuf>,
    },
}

fn default_width() -> f64 {
    1.0
}

fn default_amplitude() -> f64 {
    1.0
}

impl Default for DataConfig {
    fn default() -> Self {
        DataConfig::Gaussian {
            width: 1.0,
            amplitude: 1.0,
            u1_width: None,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Sample times: log-spaced on `[0, t_max]`.
    #[serde(default)]
    pub t_max: Option<f64>,
    #[serde(default)]
    pub time_samples: Option<usize>,
    /// Envelope ids for `simulate-linear` (default: all six linear kinds).
    #[serde(default)]
    pub envelopes: Option<Vec<String>>,
    /// Synthetic `(t, value)` series for `fit-decay`.
    #[serde(default)]
    pub series: Option<Vec<(f64, f64)>>,
    /// Fixed-point settings for the nonlinear experiments.
    #[serde(default)]
    pub fixed_point: Option<FixedPointSettings>,
    /// Gauss-Hermite points for the transforms.
    #[serde(default)]
    pub gh_points: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointSettings {
    #[serde(default = "default_p")]
    pub p: f64,
    /// Second exponent of the coupled system; defaults to `p`.
    #[serde(default)]
    pub q: Option<f64>,
    /// Smallness bound; defaults to the calibrated fixture scale.
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default = "default_horizon")]
    pub horizon: f64,
    #[serde(default = "default_time_nodes")]
    pub time_nodes: usize,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_margin")]
    pub r: f64,
    /// Solution-space profile: "x-l1", "x-l2" or "z-mass".
    #[serde(default = "default_profile")]
    pub profile: String,
}

fn default_p() -> f64 {
    2.0
}
fn default_horizon() -> f64 {
    40.0
}
fn default_time_nodes() -> usize {
    33
}
fn default_max_iters() -> usize {
    25
}
fn default_tol() -> f64 {
    1e-12
}
fn default_margin() -> f64 {
    2.0
}
fn default_profile() -> String {
    "x-l1".to_string()
}

impl FixedPointSettings {
    pub fn profile(&self) -> Result<WeightProfile> {
        match self.profile.as_str() {
            "x-l1" => Ok(WeightProfile::XL1),
            "x-l2" => Ok(WeightProfile::XL2),
            "z-mass" => Ok(WeightProfile::ZMass),
            other => Err(Error::Config(format!(
                "unknown solution-space profile '{other}' (expected x-l1, x-l2 or z-mass)"
            ))),
        }
    }

    pub fn to_core(&self, epsilon: f64) -> FixedPointConfig {
        FixedPointConfig {
            p: self.p,
            epsilon,
            horizon: self.horizon,
            time_nodes: self.time_nodes,
            max_iters: self.max_iters,
            tol: self.tol,
            r: self.r,
        }
    }
}

impl Default for FixedPointSettings {
    fn default() -> Self {
        FixedPointSettings {
            p: default_p(),
            q: None,
            epsilon: None,
            horizon: default_horizon(),
            time_nodes: default_time_nodes(),
            max_iters: default_max_iters(),
            tol: default_tol(),
            r: default_margin(),
            profile: default_profile(),
        }
    }
}

/// Parse and validate a configuration file. Every invariant is checked
/// eagerly; violations carry the failed hypothesis in the message.
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    validate(&config)?;
    Ok(config)
}

pub fn validate(config: &RunConfig) -> Result<()> {
    config.model.validate()?;
    if let Some(p) = &config.physical {
        PhysicalGrid::new(p.half_widths.clone(), p.counts.clone())?;
    }
    if let Some(s) = &config.spectral {
        SpectralGrid::new(config.model.n, s)?;
    }
    if let Some(fp) = &config.experiment.fixed_point {
        let profile = fp.profile()?;
        validate_exponent(fp.p, profile, &config.model)?;
        if let Some(q) = fp.q {
            validate_exponent(q, profile, &config.model)?;
        }
    }
    Ok(())
}

impl RunConfig {
    pub fn physical_grid(&self) -> Result<Arc<PhysicalGrid>> {
        Ok(Arc::new(match &self.physical {
            Some(p) => PhysicalGrid::new(p.half_widths.clone(), p.counts.clone())?,
            None => fixtures::ingestion_grid()?,
        }))
    }

    pub fn reduced_physical_grid(&self) -> Result<Arc<PhysicalGrid>> {
        Ok(Arc::new(match &self.physical {
            Some(p) => PhysicalGrid::new(p.half_widths.clone(), p.counts.clone())?,
            None => fixtures::reduced_grid()?,
        }))
    }

    pub fn spectral_spec_or(&self, default: SpectralGridSpec) -> SpectralGridSpec {
        self.spectral.clone().unwrap_or(default)
    }

    pub fn gh_points(&self) -> usize {
        self.experiment.gh_points.unwrap_or(fixtures::GH_POINTS)
    }

    pub fn times(&self) -> Vec<f64> {
        fixtures::log_times(
            self.experiment.t_max.unwrap_or(100.0),
            self.experiment.time_samples.unwrap_or(64),
        )
    }

    /// Materialize the configured data family as coefficient fields plus
    /// their norms, through the given plan.
    pub fn build_data(
        &self,
        plan: &TransformPlan,
        sgrid: &Arc<SpectralGrid>,
    ) -> Result<(CoefficientField, CoefficientField, DataNorms)> {
        let pgrid = plan.physical_grid();
        let data = self.data.clone().unwrap_or_default();
        match data {
            DataConfig::Gaussian {
                width,
                amplitude,
                u1_width,
            } => {
                let u0 = fixtures::gaussian_field(pgrid, width, amplitude);
                let u1 = match u1_width {
                    Some(w) => fixtures::gaussian_field(pgrid, w, amplitude),
                    None => PhysicalField::zero(Arc::clone(pgrid)),
                };
                let f0 = plan.forward(&u0)?;
                let f1 = plan.forward(&u1)?;
                let norms = hwave_core::fourier::data_norms(&u0, &u1, &f0, &f1, &self.model)?;
                Ok((f0, f1, norms))
            }
            DataConfig::LowFreqSpike { amplitude } => {
                let f0 = fixtures::low_freq_spike(sgrid, &self.model, amplitude)?;
                let f1 = CoefficientField::zeros(Arc::clone(sgrid));
                let norms = fixtures::spectral_data_norms(&f0, &f1, plan, &self.model)?;
                Ok((f0, f1, norms))
            }
            DataConfig::HighFreqSpike { amplitude } => {
                let f0 = fixtures::high_freq_spike(sgrid, &self.model, amplitude)?;
                let f1 = CoefficientField::zeros(Arc::clone(sgrid));
                let norms = fixtures::spectral_data_norms(&f0, &f1, plan, &self.model)?;
                Ok((f0, f1, norms))
            }
            DataConfig::File { path, u1_path } => {
                let u0 = hwave_core::io::read_field(&path)?;
                if u0.grid().as_ref() != pgrid.as_ref() {
                    return Err(Error::Config(format!(
                        "field file {} does not match the configured grid",
                        path.display()
                    )));
                }
                let u1 = match u1_path {
                    Some(p) => {
                        let f = hwave_core::io::read_field(&p)?;
                        if f.grid().as_ref() != pgrid.as_ref() {
                            return Err(Error::Config(format!(
                                "field file {} does not match the configured grid",
                                p.display()
                            )));
                        }
                        f
                    }
                    None => PhysicalField::zero(Arc::clone(pgrid)),
                };
                let f0 = plan.forward(&u0)?;
                let f1 = plan.forward(&u1)?;
                let norms = hwave_core::fourier::data_norms(&u0, &u1, &f0, &f1, &self.model)?;
                Ok((f0, f1, norms))
            }
        }
    }

    /// Scale coefficient data so that its size in the profile norm is the
    /// requested fraction of `epsilon`.
    pub fn scaled_to_epsilon(
        f0: &CoefficientField,
        f1: &CoefficientField,
        norms: &DataNorms,
        profile: WeightProfile,
        epsilon: f64,
        fraction: f64,
    ) -> (CoefficientField, CoefficientField, DataNorms) {
        let size = profile.data_size(norms);
        let scale = if size > 0.0 { fraction * epsilon / size } else { 0.0 };
        (
            f0.scale(Complex64::new(scale, 0.0)),
            f1.scale(Complex64::new(scale, 0.0)),
            DataNorms {
                l1: scale * norms.l1,
                l2: scale * norms.l2,
                h_alpha_seminorm: scale * norms.h_alpha_seminorm,
            },
        )
    }
}
