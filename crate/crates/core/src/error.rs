use thiserror::Error;

/// Every failure a computation in this crate can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is a zero divisor (|a·ā| = {magnitude:e}) and has no inverse")]
    ZeroDivisor { magnitude: f64 },

    #[error("evaluation point at distance {distance:e} from a singularity")]
    SingularPoint { distance: f64 },

    #[error("invalid wave number: {0}")]
    InvalidWaveNumber(String),

    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),

    #[error("auxiliary surface scale {scale} is not admissible: {reason}")]
    Scale { scale: f64, reason: String },

    #[error("chiral singularity: |1 {sign} αβ| = {magnitude:e}")]
    ChiralSingularity { sign: char, magnitude: f64 },

    #[error("square-root branch: {0}")]
    Branch(String),

    #[error("field is not purely vectorial (|Sc| = {scalar:e} > {tolerance:e})")]
    NonVectorial { scalar: f64, tolerance: f64 },

    #[error("collocation node {node} is within {distance:e} of source {source_index}")]
    NodeSourceCollision {
        node: usize,
        source_index: usize,
        distance: f64,
    },

    #[error("boundary data is not tangential at node {node} (|⟨f, n⟩| = {normal_component:e})")]
    Tangentiality { node: usize, normal_component: f64 },

    #[error("collocation system is singular: {0}")]
    SingularSystem(String),

    #[error("quadrature needs at least {required} samples, got {given}")]
    Quadrature { required: usize, given: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Stable diagnostic name, used by the CLI on the error stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDivisor { .. } => "ZeroDivisorError",
            Error::SingularPoint { .. } => "SingularPointError",
            Error::InvalidWaveNumber(_) => "WaveNumberError",
            Error::UnsupportedSurface(_) => "UnsupportedSurfaceError",
            Error::Scale { .. } => "ScaleError",
            Error::ChiralSingularity { .. } => "ChiralSingularityError",
            Error::Branch(_) => "BranchError",
            Error::NonVectorial { .. } => "NonVectorialError",
            Error::NodeSourceCollision { .. } => "NodeSourceCollisionError",
            Error::Tangentiality { .. } => "TangentialityError",
            Error::SingularSystem(_) => "SingularSystemError",
            Error::Quadrature { .. } => "QuadratureError",
            Error::Dimension(_) => "DimensionError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
