//! Quaternionic method of fundamental solutions for time-harmonic Maxwell
//! problems in homogeneous chiral media.
//!
//! The electromagnetic field `(E, H)` is traded for the pair
//! `φ = E + iH`, `ψ = E − iH` of biquaternion fields annihilated by
//! `D + α1` and `D − α2`. Both are approximated by right linear combinations
//! of the kernels `K±α`, and the coefficients come from a collocation of the
//! boundary condition `[E × n] = f`.
//!
//! Everything is generic over `f32`/`f64`; the aliases below fix `f64`.

pub mod biquat;
pub mod chiral;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod scalar;
pub mod solver;
pub mod verify;

pub use biquat::{Biquaternion, ComplexVector3};
pub use chiral::{MediumParams, WaveNumberPair};
pub use error::{Error, Result};
pub use geometry::{SourcePool, SurfaceGeometry, SurfaceSample};
pub use kernels::{KernelSign, WaveNumber};
pub use scalar::Real;
pub use solver::{
    BoundaryData, CollocationSystem, DipoleProblem, MfsAnsatz, ProblemKind, SolveReport, SolverOptions,
    SolverPath, SolverStrategy,
};

pub type Complex64 = num_complex::Complex<f64>;
pub type Biquaternion64 = Biquaternion<f64>;
pub type ComplexVector64 = ComplexVector3<f64>;
pub type WaveNumber64 = WaveNumber<f64>;
pub type MediumParams64 = MediumParams<f64>;
pub type SurfaceGeometry64 = SurfaceGeometry<f64>;
pub type MfsAnsatz64 = MfsAnsatz<f64>;
pub type DipoleProblem64 = DipoleProblem<f64>;
