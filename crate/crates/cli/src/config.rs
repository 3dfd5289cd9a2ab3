//! TOML problem description.
//!
//! ```toml
//! mode = "exterior"
//! n = [3, 5, 10]
//! aux_scale = 0.15
//!
//! [surface]
//! kind = "sphere"
//! radius = 1.0
//!
//! [medium]
//! omega = 1.0
//! epsilon = [1.0, 0.0]
//! mu = [1.0, 0.0]
//! beta = 0.0
//!
//! [boundary]
//! kind = "dipole"
//! moment = [0.0, 0.0, 1.0]
//!
//! [eval]
//! radius = 5.0
//! count = 200
//!
//! [solver]
//! method = "square"
//! overdetermination = 1.0
//! ```
//!
//! Every table and key is optional; omitted values give the unit-sphere
//! dipole benchmark.

use std::path::{Path, PathBuf};

use num_complex::Complex;
use qmfs_core::{MediumParams64, ProblemKind, SolverOptions, SolverStrategy, SurfaceGeometry64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SurfaceSpec {
    Sphere {
        #[serde(default)]
        center: [f64; 3],
        #[serde(default = "one")]
        radius: f64,
    },
    Ellipsoid {
        #[serde(default)]
        center: [f64; 3],
        radii: [f64; 3],
    },
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        Self::Sphere { center: [0.0; 3], radius: 1.0 }
    }
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<SurfaceGeometry64, CliError> {
        let surface = match *self {
            SurfaceSpec::Sphere { center, radius } => SurfaceGeometry64::sphere(center, radius),
            SurfaceSpec::Ellipsoid { center, radii } => SurfaceGeometry64::ellipsoid(center, radii),
        };
        surface.map_err(|e| CliError::config("surface", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumSpec {
    pub omega: f64,
    /// `[re, im]`
    pub epsilon: [f64; 2],
    /// `[re, im]`
    pub mu: [f64; 2],
    pub beta: f64,
}

impl Default for MediumSpec {
    fn default() -> Self {
        Self { omega: 1.0, epsilon: [1.0, 0.0], mu: [1.0, 0.0], beta: 0.0 }
    }
}

impl MediumSpec {
    pub fn build(&self) -> Result<MediumParams64, CliError> {
        let c = |v: [f64; 2]| Complex::new(v[0], v[1]);
        Ok(MediumParams64::new(self.omega, c(self.epsilon), c(self.mu), self.beta)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exterior,
    Interior,
}

impl From<Mode> for ProblemKind {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exterior => ProblemKind::Exterior,
            Mode::Interior => ProblemKind::Interior,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BoundarySpec {
    /// Magnetic-dipole data with known exact solution.
    Dipole {
        #[serde(default = "unit_z")]
        moment: [f64; 3],
        #[serde(default)]
        position: [f64; 3],
    },
    /// CSV file `x1,x2,x3,f1_re,f1_im,f2_re,f2_im,f3_re,f3_im`; its points
    /// become the collocation nodes.
    Samples { path: PathBuf },
}

impl Default for BoundarySpec {
    fn default() -> Self {
        Self::Dipole { moment: unit_z(), position: [0.0; 3] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NSpec {
    One(usize),
    Many(Vec<usize>),
}

impl NSpec {
    pub fn values(&self) -> Vec<usize> {
        match self {
            NSpec::One(n) => vec![*n],
            NSpec::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSpec {
    pub radius: f64,
    pub count: usize,
}

impl Default for EvalSpec {
    fn default() -> Self {
        Self { radius: 5.0, count: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// LU, falling back to least squares when ill-conditioned.
    #[default]
    Square,
    LeastSquares,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSpec {
    pub method: Method,
    /// `M = ceil(2N · overdetermination)` collocation nodes.
    pub overdetermination: f64,
}

impl Default for SolverSpec {
    fn default() -> Self {
        Self { method: Method::Square, overdetermination: 1.0 }
    }
}

impl SolverSpec {
    pub fn options(&self) -> SolverOptions {
        let strategy = match self.method {
            Method::Square => SolverStrategy::Auto,
            Method::LeastSquares => SolverStrategy::LeastSquares,
        };
        SolverOptions { strategy, ..SolverOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Factorization,
    Annihilation,
    Cauchy,
    Radiation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySpec {
    pub checks: Vec<CheckKind>,
    /// Tests every kernel against the opposite radiation condition.
    pub wrong_kernel_sign: bool,
}

impl Default for VerifySpec {
    fn default() -> Self {
        Self {
            checks: vec![CheckKind::Factorization, CheckKind::Annihilation, CheckKind::Cauchy, CheckKind::Radiation],
            wrong_kernel_sign: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(default)]
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub medium: MediumSpec,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub boundary: BoundarySpec,
    #[serde(default = "default_n")]
    pub n: NSpec,
    #[serde(default = "default_aux_scale")]
    pub aux_scale: f64,
    /// Explicit collocation counts, one per N.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collocation: Option<Vec<usize>>,
    #[serde(default)]
    pub eval: EvalSpec,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub verify: VerifySpec,
}

impl Default for ProblemConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config is valid")
    }
}

fn one() -> f64 {
    1.0
}

fn unit_z() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

fn default_n() -> NSpec {
    NSpec::One(10)
}

fn default_aux_scale() -> f64 {
    0.15
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let field = e
                .span()
                .and_then(|s| text.get(..s.start))
                .map(|before| format!("line {}", before.lines().count().max(1)))
                .unwrap_or_default();
            CliError::config(field, message)
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates; a relative samples path is resolved against the
    /// config's directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = Self::parse(&text)?;
        if let BoundarySpec::Samples { path: samples } = &mut cfg.boundary {
            if samples.is_relative() {
                if let Some(dir) = path.parent() {
                    *samples = dir.join(&*samples);
                }
            }
        }
        Ok(cfg)
    }

    pub fn n_values(&self) -> Vec<usize> {
        self.n.values()
    }

    /// Collocation count for the `index`-th N.
    pub fn nodes_for(&self, index: usize, n: usize) -> usize {
        match &self.collocation {
            Some(m) => m[index],
            None => (2.0 * n as f64 * self.solver.overdetermination).ceil() as usize,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.surface.build()?;
        self.medium.build()?;
        let ns = self.n_values();
        if ns.is_empty() {
            return Err(CliError::config("n", "at least one N is required"));
        }
        if let Some(i) = ns.iter().position(|&n| n == 0) {
            return Err(CliError::config(format!("n[{i}]"), "N must be at least 1"));
        }
        if !(self.aux_scale > 0.0) || !self.aux_scale.is_finite() {
            return Err(CliError::config("aux_scale", "must be positive"));
        }
        match self.mode {
            Mode::Exterior if self.aux_scale >= 1.0 => {
                return Err(CliError::config("aux_scale", "exterior problems need aux_scale < 1"))
            }
            Mode::Interior if self.aux_scale <= 1.0 => {
                return Err(CliError::config("aux_scale", "interior problems need aux_scale > 1"))
            }
            _ => {}
        }
        if !(self.eval.radius > 0.0) || !self.eval.radius.is_finite() {
            return Err(CliError::config("eval.radius", "must be positive"));
        }
        if self.eval.count == 0 {
            return Err(CliError::config("eval.count", "must be at least 1"));
        }
        let r = self.solver.overdetermination;
        if !(r >= 1.0) || !r.is_finite() {
            return Err(CliError::config("solver.overdetermination", "must be at least 1"));
        }
        if let Some(m) = &self.collocation {
            if m.len() != ns.len() {
                return Err(CliError::config("collocation", format!("expected {} counts, got {}", ns.len(), m.len())));
            }
        }
        for (i, &n) in ns.iter().enumerate() {
            let m = self.nodes_for(i, n);
            if m < 2 * n || m < 4 {
                return Err(CliError::config(
                    format!("collocation[{i}]"),
                    format!("{m} nodes cannot determine N = {n} (need at least max(2N, 4))"),
                ));
            }
        }
        if let BoundarySpec::Dipole { moment, position } = self.boundary {
            if moment.iter().chain(position.iter()).any(|v| !v.is_finite()) {
                return Err(CliError::config("boundary", "moment and position must be finite"));
            }
        }
        Ok(())
    }

    /// Compact JSON echo, enough to rerun the record.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
