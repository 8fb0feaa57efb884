//! Experiment configuration: a sectioned TOML file with dotted-key overrides.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{uniform_zgrid, DEFAULT_TAYLOR_CAP, DEFAULT_Z_POINTS};
use crate::majorant::DominationMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    Burgers,
    LinearAdvection,
    Euler,
    Hydrostatic,
    Vdb,
    Kie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Sine,
    TaylorGreen,
    Shear,
    PerturbedMaxwellian,
    Random,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub name: ModelName,
    #[serde(default)]
    pub augmented: bool,
    #[serde(default = "default_cap")]
    pub taylor_cap: usize,
    /// Velocity weight exponent `m` of the kinetic generator.
    #[serde(default = "default_weight")]
    pub weight: f64,
    #[serde(default = "default_cheb")]
    pub chebyshev_nodes: usize,
    #[serde(default = "default_v_nodes")]
    pub v_nodes: usize,
    #[serde(default = "default_v_half_width")]
    pub v_half_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "one")]
    pub measure_every: usize,
    pub output: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZGridConfig {
    pub rho: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    pub preset: Preset,
    /// Perturbation size of `perturbed_maxwellian`.
    #[serde(default = "default_eps")]
    pub eps: f64,
    /// Planted decay rate of `random` data.
    #[serde(default = "default_rate")]
    pub rate: f64,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MajorantConfig {
    /// Multiplies the model's certified C0 (below 1 gives a negative control).
    #[serde(default = "default_scale")]
    pub c0_scale: f64,
    /// Replace C0 by the constant fitted on the run's own states.
    #[serde(default)]
    pub fit_c0: bool,
    #[serde(default = "default_safety")]
    pub fit_safety: f64,
    #[serde(default = "default_mode")]
    pub domination: DominationMode,
}

impl Default for MajorantConfig {
    fn default() -> Self {
        Self {
            c0_scale: default_scale(),
            fit_c0: false,
            fit_safety: default_safety(),
            domination: default_mode(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub run: RunConfig,
    pub zgrid: ZGridConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub majorant: MajorantConfig,
}

fn default_cap() -> usize {
    DEFAULT_TAYLOR_CAP
}
fn default_weight() -> f64 {
    4.0
}
fn default_cheb() -> usize {
    33
}
fn default_v_nodes() -> usize {
    129
}
fn default_v_half_width() -> f64 {
    8.0
}
fn one() -> usize {
    1
}
fn default_points() -> usize {
    DEFAULT_Z_POINTS
}
fn default_eps() -> f64 {
    0.01
}
fn default_rate() -> f64 {
    0.5
}
fn default_amplitude() -> f64 {
    1.0
}
fn default_scale() -> f64 {
    1.0
}
fn default_safety() -> f64 {
    1.25
}
fn default_mode() -> DominationMode {
    DominationMode::Rescaled
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
    }
}

fn at_least(name: &str, v: usize, min: usize) -> Result<()> {
    if v >= min {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("{name} must be at least {min}, got {v}")))
    }
}

impl ExperimentConfig {
    /// The flagship Burgers experiment: `sin x`, N = 32, rho = 1, dt = 1e-3.
    pub fn burgers_flagship(output: impl Into<PathBuf>) -> Self {
        Self {
            model: ModelConfig {
                name: ModelName::Burgers,
                augmented: false,
                taylor_cap: default_cap(),
                weight: default_weight(),
                chebyshev_nodes: default_cheb(),
                v_nodes: default_v_nodes(),
                v_half_width: default_v_half_width(),
            },
            run: RunConfig { n: 32, dt: 1e-3, t_end: 0.125, measure_every: 1, output: output.into() },
            zgrid: ZGridConfig { rho: 1.0, points: default_points() },
            initial: InitialConfig {
                preset: Preset::Sine,
                eps: default_eps(),
                rate: default_rate(),
                amplitude: default_amplitude(),
                seed: 0,
            },
            majorant: MajorantConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config fields are all representable in TOML")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn zgrid(&self) -> Vec<f64> {
        uniform_zgrid(self.zgrid.rho, self.zgrid.points)
    }

    pub fn validate(&self) -> Result<()> {
        let (m, r, z, i, g) = (&self.model, &self.run, &self.zgrid, &self.initial, &self.majorant);
        at_least("run.n", r.n, 1)?;
        positive("run.dt", r.dt)?;
        positive("run.t_end", r.t_end)?;
        at_least("run.measure_every", r.measure_every, 1)?;
        positive("zgrid.rho", z.rho)?;
        at_least("zgrid.points", z.points, 2)?;
        positive("majorant.c0_scale", g.c0_scale)?;
        positive("majorant.fit_safety", g.fit_safety)?;
        positive("model.weight", m.weight)?;
        positive("model.v_half_width", m.v_half_width)?;
        at_least("model.chebyshev_nodes", m.chebyshev_nodes, 8)?;
        at_least("model.v_nodes", m.v_nodes, 5)?;
        positive("initial.eps", i.eps)?;
        positive("initial.rate", i.rate)?;
        positive("initial.amplitude", i.amplitude)?;
        if r.output.as_os_str().is_empty() {
            return Err(Error::InvalidConfig("run.output must name a directory".into()));
        }
        let allowed: &[Preset] = match m.name {
            ModelName::Burgers | ModelName::LinearAdvection => &[Preset::Sine, Preset::Random, Preset::Zero],
            ModelName::Euler => &[Preset::TaylorGreen, Preset::Random, Preset::Zero],
            ModelName::Hydrostatic => &[Preset::Shear, Preset::Random, Preset::Zero],
            ModelName::Vdb | ModelName::Kie => &[Preset::PerturbedMaxwellian, Preset::Random],
        };
        if !allowed.contains(&i.preset) {
            return Err(Error::InvalidConfig(format!("preset {:?} does not fit model {:?}", i.preset, m.name)));
        }
        if m.name == ModelName::Hydrostatic && i.preset == Preset::Random && i.rate < 0.3 {
            return Err(Error::InvalidConfig("hydrostatic random data need rate >= 0.3".into()));
        }
        Ok(())
    }

    /// Applies `section.key=value` overrides; values use TOML syntax and fall
    /// back to plain strings.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        let mut table = toml::Table::try_from(self).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        for o in overrides {
            let o = o.as_ref();
            let (key, raw) = o
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("override {o:?} is not key=value")))?;
            let value = parse_value(raw.trim());
            let path: Vec<&str> = key.trim().split('.').collect();
            let (last, parents) = path.split_last().expect("split yields one piece");
            let mut node = &mut table;
            for p in parents {
                node = node
                    .entry(p.to_string())
                    .or_insert_with(|| toml::Value::Table(toml::Table::new()))
                    .as_table_mut()
                    .ok_or_else(|| Error::InvalidConfig(format!("{p} in {key} is not a section")))?;
            }
            node.insert(last.to_string(), value);
        }
        let cfg: Self = table.try_into().map_err(|e: toml::de::Error| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_value(raw: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}
