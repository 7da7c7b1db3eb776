//! Run configuration: a TOML file, or the `manifest.json` of an earlier run.

use std::path::Path;

use fracpx::degree::MapPreset;
use fracpx::exponents::{PairExponent, PointExponent};
use fracpx::mesh::{BoxDomain, ExteriorCoupling, KernelTable, Mesh};
use fracpx::solver::{SeedFunction, SeedPreset, SolverConfig};
use fracpx::{ExponentField, ProblemData};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Seeds every random choice of a run; copied into the seeded sub-configs.
    pub seed: u64,
    pub domain: DomainConfig,
    pub mesh: MeshConfig,
    pub exponents: ExponentConfig,
    pub lambda: f64,
    pub sweep: SweepConfig,
    pub solver: SolverConfig,
    pub norms: NormsConfig,
    pub degree: DegreeConfig,
    pub verify: VerifyConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            domain: DomainConfig::default(),
            mesh: MeshConfig::default(),
            exponents: ExponentConfig::default(),
            lambda: 10.0,
            sweep: SweepConfig::default(),
            solver: SolverConfig::default(),
            norms: NormsConfig::default(),
            degree: DegreeConfig::default(),
            verify: VerifyConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DomainConfig {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Default for DomainConfig {
    fn default() -> Self {
        Self {
            lower: vec![0.0],
            upper: vec![1.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeshConfig {
    pub h: f64,
    /// Fractional order in `(0, 1)`.
    pub s: f64,
    pub coupling: ExteriorCoupling,
}

impl Default for MeshConfig {
    fn default() -> Self {
        Self {
            h: 1.0 / 16.0,
            s: 0.5,
            coupling: ExteriorCoupling::Dirichlet,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExponentConfig {
    pub p: PairExponent,
    pub r: PointExponent,
}

impl Default for ExponentConfig {
    fn default() -> Self {
        Self {
            p: PairExponent::Constant { value: 2.0 },
            r: PointExponent::Constant { value: 1.5 },
        }
    }
}

/// Either an explicit list or `count` evenly spaced values in `[start, stop]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub lambdas: Vec<f64>,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            lambdas: Vec::new(),
            start: 0.0,
            stop: 20.0,
            count: 11,
        }
    }
}

impl SweepConfig {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let values: Vec<f64> = if !self.lambdas.is_empty() {
            self.lambdas.clone()
        } else {
            match self.count {
                0 => Vec::new(),
                1 => vec![self.start],
                n => (0..n)
                    .map(|k| self.start + (self.stop - self.start) * k as f64 / (n - 1) as f64)
                    .collect(),
            }
        };
        if values.is_empty() {
            return Err(CliError::Config("sweep: no lambda values".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("sweep: lambda {bad} is not finite")));
        }
        Ok(values)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormsConfig {
    /// Function whose norms are computed.
    pub function: SeedFunction,
}

impl Default for NormsConfig {
    fn default() -> Self {
        Self {
            function: SeedFunction {
                preset: SeedPreset::Bump,
                amplitude: 2.0,
                rng_seed: 0,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMap {
    Identity,
    NegIdentity,
    ComplexSquare,
    Cubic,
    ZSquaredMinusOne,
    /// `v -> v + t S(T v)` of the configured problem at `t = 0, 0.25, .., 1`.
    Homotopy,
}

impl DegreeMap {
    pub fn preset(self) -> Option<MapPreset> {
        match self {
            DegreeMap::Identity => Some(MapPreset::Identity),
            DegreeMap::NegIdentity => Some(MapPreset::NegIdentity),
            DegreeMap::ComplexSquare => Some(MapPreset::ComplexSquare),
            DegreeMap::Cubic => Some(MapPreset::Cubic),
            DegreeMap::ZSquaredMinusOne => Some(MapPreset::ZSquaredMinusOne),
            DegreeMap::Homotopy => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DegreeConfig {
    pub map: DegreeMap,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub target: Vec<f64>,
    /// Initial boundary samples per edge.
    pub resolution: usize,
}

impl Default for DegreeConfig {
    fn default() -> Self {
        Self {
            map: DegreeMap::ComplexSquare,
            lower: vec![-1.0, -1.0],
            upper: vec![1.0, 1.0],
            target: vec![0.0, 0.0],
            resolution: fracpx::degree::DEFAULT_RESOLUTION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// Random functions per property.
    pub samples: usize,
    pub gradient_points: usize,
    pub round_trips: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 500,
            gradient_points: 50,
            round_trips: 50,
        }
    }
}

/// What a run writes to `manifest.json`; readable back as a config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub core_version: String,
    pub command: String,
    pub seed: u64,
    pub config: RunConfig,
}

impl Manifest {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            tool: "fracpx".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            core_version: fracpx::VERSION.into(),
            command: command.into(),
            seed: config.seed,
            config: config.clone(),
        }
    }
}

impl RunConfig {
    /// Reads a TOML config, or the config stored in a `.json` manifest.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let is_json = path.extension().is_some_and(|e| e == "json");
        if is_json {
            let manifest: Manifest = serde_json::from_str(&text).map_err(|e| {
                CliError::Config(format!("{}: {e}", path.display()))
            })?;
            Ok(manifest.config)
        } else {
            Self::from_toml(&text).map_err(|e| match e {
                CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
                other => other,
            })
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().to_string()))
    }

    /// Propagates the top-level seed into every seeded component.
    pub fn resolve(mut self) -> Self {
        self.solver.seed.rng_seed = self.seed;
        self.norms.function.rng_seed = self.seed;
        self
    }

    pub fn domain(&self) -> Result<BoxDomain, CliError> {
        BoxDomain::new(self.domain.lower.clone(), self.domain.upper.clone())
            .map_err(|e| CliError::field("domain", e))
    }

    pub fn mesh(&self) -> Result<Mesh, CliError> {
        Mesh::build(&self.domain()?, self.mesh.h).map_err(|e| CliError::field("mesh.h", e))
    }

    pub fn problem(&self) -> Result<ProblemData, CliError> {
        let mesh = self.mesh()?;
        let field = ExponentField::from_presets(&mesh, &self.exponents.p, &self.exponents.r)
            .map_err(|e| CliError::field("exponents", e))?;
        let kernel = KernelTable::build_with(&mesh, self.mesh.s, &field, self.mesh.coupling)
            .map_err(|e| CliError::field("mesh.s", e))?;
        ProblemData::new(mesh, kernel, field, self.lambda).map_err(|e| CliError::field("lambda", e))
    }

    pub fn validate_solver(&self) -> Result<(), CliError> {
        self.solver.validate().map_err(|e| CliError::field("solver", e))
    }
}
