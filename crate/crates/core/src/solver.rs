//! Collocation solver for the quaternionic method of fundamental solutions.
//!
//! The unknown fields are approximated by right linear combinations
//!
//! ```text
//! φN(x) = Σj K_{α1}(x − y_j) a_j,     (D + α1) φN = 0
//! ψN(x) = Σj K_{−α2}(x − y_j) b_j,    (D − α2) ψN = 0
//! ```
//!
//! with constant quaternions `a_j`, `b_j`. Every collocation node `x` with
//! tangent frame `(t1, t2)` and normal `n` contributes four rows:
//!
//! | row | equation |
//! |-----|----------|
//! | 0 | `⟨½[(φ + ψ) × n], t1⟩ = ⟨f, t1⟩` |
//! | 1 | `⟨½[(φ + ψ) × n], t2⟩ = ⟨f, t2⟩` |
//! | 2 | `Sc φ = s_φ` (zero for Maxwell data) |
//! | 3 | `Sc ψ = s_ψ` (zero for Maxwell data) |
//!
//! Columns are `a_1[0..4], …, a_N[0..4], b_1[0..4], …, b_N[0..4]`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{Float, Zero};
use rayon::prelude::*;

use crate::biquat::{Biquaternion, ComplexVector3};
use crate::chiral::{chiral_dipole_field, recover_eh_unchecked, MediumParams, WaveNumberPair};
use crate::error::{Error, Result};
use crate::geometry::{
    fibonacci_directions, make_source_pool, sample_surface, Side, SourcePool, SurfaceGeometry, SurfaceSample,
};
use crate::kernels::{kernel, KernelSign, WaveNumber};
use crate::scalar::{vec3, Real};

/// Scalars usable by the dense linear algebra backend.
pub trait LinalgReal: Real + RealField {}

impl<T: Real + RealField> LinalgReal for T {}

/// Which domain the fields live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// Ω⁻, sources inside Γ.
    Exterior,
    /// Ω⁺, sources outside Γ.
    Interior,
}

impl ProblemKind {
    pub fn source_side(self) -> Side {
        match self {
            ProblemKind::Exterior => Side::Interior,
            ProblemKind::Interior => Side::Exterior,
        }
    }
}

/// Pools, wave numbers and coefficients of `φN` and `ψN`.
#[derive(Debug, Clone, PartialEq)]
pub struct MfsAnsatz<T> {
    pub pair: WaveNumberPair<T>,
    /// Singularities of the `K_{α1}` terms.
    pub pool1: SourcePool<T>,
    /// Singularities of the `K_{−α2}` terms.
    pub pool2: SourcePool<T>,
    pub a: Vec<Biquaternion<T>>,
    pub b: Vec<Biquaternion<T>>,
}

/// Fields at one point; scalar parts of `phi`/`psi` are kept so callers can
/// monitor them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub e: ComplexVector3<T>,
    pub h: ComplexVector3<T>,
    pub phi: Biquaternion<T>,
    pub psi: Biquaternion<T>,
}

impl<T: Real> MfsAnsatz<T> {
    /// Ansatz with zero coefficients.
    pub fn new(pair: WaveNumberPair<T>, pool1: SourcePool<T>, pool2: SourcePool<T>) -> Result<Self> {
        if pool1.len() != pool2.len() || pool1.is_empty() {
            return Err(Error::Dimension(format!(
                "source pools must be nonempty and equal in size, got {} and {}",
                pool1.len(),
                pool2.len()
            )));
        }
        let n = pool1.len();
        Ok(Self {
            pair,
            pool1,
            pool2,
            a: vec![Biquaternion::zero(); n],
            b: vec![Biquaternion::zero(); n],
        })
    }

    /// Both families share one pool.
    pub fn with_shared_pool(pair: WaveNumberPair<T>, pool: SourcePool<T>) -> Result<Self> {
        Self::new(pair, pool.clone(), pool)
    }

    pub fn num_sources(&self) -> usize {
        self.pool1.len()
    }

    pub fn num_unknowns(&self) -> usize {
        8 * self.num_sources()
    }

    /// Replaces the coefficients, checking their count.
    pub fn with_coefficients(mut self, a: Vec<Biquaternion<T>>, b: Vec<Biquaternion<T>>) -> Result<Self> {
        let n = self.num_sources();
        if a.len() != n || b.len() != n {
            return Err(Error::Dimension(format!("expected {n} coefficients per family")));
        }
        self.a = a;
        self.b = b;
        Ok(self)
    }

    /// Coefficient vector in column order.
    pub fn coefficient_vector(&self) -> Vec<Complex<T>> {
        self.a.iter().chain(self.b.iter()).flat_map(|q| q.to_array()).collect()
    }

    fn kernel1(&self, j: usize, x: [T; 3]) -> Result<Biquaternion<T>> {
        kernel(self.pair.alpha1, KernelSign::Plus, vec3::sub(x, self.pool1.points[j]))
    }

    fn kernel2(&self, j: usize, x: [T; 3]) -> Result<Biquaternion<T>> {
        kernel(self.pair.alpha2, KernelSign::Minus, vec3::sub(x, self.pool2.points[j]))
    }

    /// `φN(x) = Σ K_{α1}(x − y_j) a_j`.
    pub fn phi(&self, x: [T; 3]) -> Result<Biquaternion<T>> {
        (0..self.num_sources()).try_fold(Biquaternion::zero(), |acc, j| Ok(acc + self.kernel1(j, x)? * self.a[j]))
    }

    /// `ψN(x) = Σ K_{−α2}(x − y_j) b_j`.
    pub fn psi(&self, x: [T; 3]) -> Result<Biquaternion<T>> {
        (0..self.num_sources()).try_fold(Biquaternion::zero(), |acc, j| Ok(acc + self.kernel2(j, x)? * self.b[j]))
    }

    /// `E = ½(φ⃗ + ψ⃗)`, `H = (1/2i)(φ⃗ − ψ⃗)` together with `φ` and `ψ`.
    pub fn evaluate(&self, x: [T; 3]) -> Result<FieldSample<T>> {
        let phi = self.phi(x)?;
        let psi = self.psi(x)?;
        let (e, h) = recover_eh_unchecked(&phi.vec(), &psi.vec());
        Ok(FieldSample { e, h, phi, psi })
    }
}

/// Free-function form of [`MfsAnsatz::evaluate`].
pub fn evaluate<T: Real>(ansatz: &MfsAnsatz<T>, x: [T; 3]) -> Result<FieldSample<T>> {
    ansatz.evaluate(x)
}

type TangentialFn<T> = Arc<dyn Fn(&SurfaceSample<T>) -> ComplexVector3<T> + Send + Sync>;
type ScalarFn<T> = Arc<dyn Fn(&SurfaceSample<T>) -> [Complex<T>; 2] + Send + Sync>;

/// Boundary values: the tangential field `f = [E × n]` and, optionally,
/// prescribed scalar parts of `φ` and `ψ`.
#[derive(Clone)]
pub enum BoundaryData<T> {
    /// Closed form, evaluable at any surface sample.
    Closed {
        tangential: TangentialFn<T>,
        scalar: Option<ScalarFn<T>>,
    },
    /// Values at the collocation nodes, in node order.
    Samples {
        tangential: Vec<ComplexVector3<T>>,
        scalar: Option<Vec<[Complex<T>; 2]>>,
    },
}

impl<T> std::fmt::Debug for BoundaryData<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryData::Closed { scalar, .. } => {
                write!(f, "BoundaryData::Closed {{ scalar: {} }}", scalar.is_some())
            }
            BoundaryData::Samples { tangential, scalar } => write!(
                f,
                "BoundaryData::Samples {{ len: {}, scalar: {} }}",
                tangential.len(),
                scalar.is_some()
            ),
        }
    }
}

impl<T: Real> BoundaryData<T> {
    pub fn closed(f: impl Fn(&SurfaceSample<T>) -> ComplexVector3<T> + Send + Sync + 'static) -> Self {
        Self::Closed { tangential: Arc::new(f), scalar: None }
    }

    pub fn samples(values: Vec<ComplexVector3<T>>) -> Self {
        Self::Samples { tangential: values, scalar: None }
    }

    pub fn zero() -> Self {
        Self::closed(|_| ComplexVector3::zero())
    }

    /// `f = [E × n]` for a known electric field `E`.
    pub fn from_electric_field(e: impl Fn([T; 3]) -> ComplexVector3<T> + Send + Sync + 'static) -> Self {
        Self::closed(move |s| e(s.point).cross_real(s.normal))
    }

    /// Traces of an existing ansatz, including its scalar parts. Data of
    /// this kind lies exactly in the trial space.
    pub fn from_ansatz(ansatz: MfsAnsatz<T>) -> Self {
        let ansatz = Arc::new(ansatz);
        let tangential_src = Arc::clone(&ansatz);
        Self::Closed {
            tangential: Arc::new(move |s| {
                let f = tangential_src.evaluate(s.point).expect("boundary point away from sources");
                f.e.cross_real(s.normal)
            }),
            scalar: Some(Arc::new(move |s| {
                let f = ansatz.evaluate(s.point).expect("boundary point away from sources");
                [f.phi.sc(), f.psi.sc()]
            })),
        }
    }

    /// Tangential value and scalar targets at node `index`.
    pub fn at(&self, index: usize, node: &SurfaceSample<T>) -> Result<(ComplexVector3<T>, [Complex<T>; 2])> {
        match self {
            BoundaryData::Closed { tangential, scalar } => {
                let s = scalar.as_ref().map_or([Complex::zero(); 2], |g| g(node));
                Ok((tangential(node), s))
            }
            BoundaryData::Samples { tangential, scalar } => {
                let f = tangential.get(index).copied().ok_or_else(|| {
                    Error::Dimension(format!("no boundary sample for node {index} ({} given)", tangential.len()))
                })?;
                let s = match scalar {
                    Some(v) => *v.get(index).ok_or_else(|| {
                        Error::Dimension(format!("no scalar sample for node {index}"))
                    })?,
                    None => [Complex::zero(); 2],
                };
                Ok((f, s))
            }
        }
    }
}

/// Dense collocation system `matrix · coefficients = rhs`.
#[derive(Debug, Clone)]
pub struct CollocationSystem<T: LinalgReal> {
    pub matrix: DMatrix<Complex<T>>,
    pub rhs: DVector<Complex<T>>,
    /// Pools and wave numbers; coefficients are ignored.
    pub ansatz: MfsAnsatz<T>,
}

impl<T: LinalgReal> CollocationSystem<T> {
    pub fn num_nodes(&self) -> usize {
        self.matrix.nrows() / 4
    }

    pub fn is_square(&self) -> bool {
        self.matrix.nrows() == self.matrix.ncols()
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    <T as num_traits::ToPrimitive>::to_f64(&x).unwrap_or(f64::NAN)
}

/// Largest distance of a node from the node centroid.
fn node_scale<T: Real>(nodes: &[SurfaceSample<T>]) -> T {
    let inv = T::count(nodes.len()).recip();
    let centroid = nodes
        .iter()
        .fold([T::zero(); 3], |acc, s| vec3::add(acc, vec3::scale(inv, s.point)));
    nodes
        .iter()
        .fold(T::zero(), |acc, s| Float::max(acc, vec3::distance(s.point, centroid)))
}

fn check_separation<T: Real>(nodes: &[SurfaceSample<T>], ansatz: &MfsAnsatz<T>) -> Result<()> {
    let min_sep = T::lit(1e-6) * Float::max(node_scale(nodes), T::lit(1e-300));
    for (i, node) in nodes.iter().enumerate() {
        for (j, y) in ansatz.pool1.points.iter().chain(ansatz.pool2.points.iter()).enumerate() {
            let d = vec3::distance(node.point, *y);
            if d <= min_sep {
                return Err(Error::NodeSourceCollision {
                    node: i,
                    source_index: j % ansatz.num_sources(),
                    distance: to_f64(d),
                });
            }
        }
    }
    Ok(())
}

/// Tangential boundary values must satisfy `|⟨f, n⟩| ≤ tol · max(1, |f|)`
/// with `tol = 1e-10`, or `100 ε` in single precision.
pub fn check_tangential<T: Real>(f: &ComplexVector3<T>, node: &SurfaceSample<T>, index: usize) -> Result<()> {
    let normal = f.dot_real(node.normal).norm();
    let tol = Float::max(T::lit(1e-10), T::lit(100.0) * T::epsilon());
    if normal > tol * Float::max(T::one(), f.norm()) {
        return Err(Error::Tangentiality { node: index, normal_component: to_f64(normal) });
    }
    Ok(())
}

/// Row block (4 rows × 8N columns) and right-hand side of one node.
fn node_rows<T: Real>(
    ansatz: &MfsAnsatz<T>,
    node: &SurfaceSample<T>,
    f: &ComplexVector3<T>,
    scalar: [Complex<T>; 2],
) -> Result<([Vec<Complex<T>>; 4], [Complex<T>; 4])> {
    let n = ansatz.num_sources();
    let cols = 8 * n;
    let half = T::lit(0.5);
    // [v × n]·t = v·(n × t)
    let w1 = vec3::cross(node.normal, node.tangent1);
    let w2 = vec3::cross(node.normal, node.tangent2);
    let mut rows: [Vec<Complex<T>>; 4] = std::array::from_fn(|_| vec![Complex::zero(); cols]);
    for j in 0..n {
        let blocks = [
            (ansatz.kernel1(j, node.point)?, 4 * j, 2),
            (ansatz.kernel2(j, node.point)?, 4 * (n + j), 3),
        ];
        for (k, offset, scalar_row) in blocks {
            let l = k.left_mul_matrix();
            for m in 0..4 {
                let v = ComplexVector3::new(l[1][m], l[2][m], l[3][m]);
                rows[0][offset + m] = v.dot_real(w1).scale(half);
                rows[1][offset + m] = v.dot_real(w2).scale(half);
                rows[scalar_row][offset + m] = l[0][m];
            }
        }
    }
    let rhs = [f.dot_real(node.tangent1), f.dot_real(node.tangent2), scalar[0], scalar[1]];
    Ok((rows, rhs))
}

/// Builds the `4M × 8N` collocation system. Node blocks are assembled in
/// parallel.
pub fn assemble<T: LinalgReal>(
    nodes: &[SurfaceSample<T>],
    ansatz: &MfsAnsatz<T>,
    data: &BoundaryData<T>,
) -> Result<CollocationSystem<T>> {
    if nodes.is_empty() {
        return Err(Error::Dimension("no collocation nodes".into()));
    }
    check_separation(nodes, ansatz)?;
    let blocks: Vec<_> = nodes
        .par_iter()
        .enumerate()
        .map(|(i, node)| {
            let (f, scalar) = data.at(i, node)?;
            check_tangential(&f, node, i)?;
            node_rows(ansatz, node, &f, scalar)
        })
        .collect::<Result<_>>()?;
    let rows = 4 * nodes.len();
    let cols = ansatz.num_unknowns();
    let mut matrix = DMatrix::zeros(rows, cols);
    let mut rhs = DVector::zeros(rows);
    for (i, (block, values)) in blocks.into_iter().enumerate() {
        for (r, row) in block.iter().enumerate() {
            for (c, value) in row.iter().enumerate() {
                matrix[(4 * i + r, c)] = *value;
            }
            rhs[4 * i + r] = values[r];
        }
    }
    let mut template = ansatz.clone();
    template.a.iter_mut().chain(template.b.iter_mut()).for_each(|q| *q = Biquaternion::zero());
    Ok(CollocationSystem { matrix, rhs, ansatz: template })
}

/// How the dense system is factorized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverPath {
    SquareLu,
    LeastSquares,
}

/// Requested factorization strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SolverStrategy {
    /// LU for well-conditioned square systems, least squares otherwise.
    #[default]
    Auto,
    /// Always least squares.
    LeastSquares,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub strategy: SolverStrategy,
    /// Condition estimate above which a square system is solved by least
    /// squares.
    pub condition_threshold: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { strategy: SolverStrategy::Auto, condition_threshold: 1e12 }
    }
}

/// Solution of a collocation system with diagnostics.
#[derive(Debug, Clone)]
pub struct SolveReport<T> {
    pub ansatz: MfsAnsatz<T>,
    /// `max |matrix · x − rhs|` over all rows.
    pub residual_norm: T,
    /// Ratio of extreme singular values (infinite when rank-deficient).
    pub condition_estimate: T,
    pub solver_path: SolverPath,
    /// Numerical rank used by the least-squares path.
    pub rank: usize,
}

/// Solves with default options.
pub fn solve<T: LinalgReal>(system: &CollocationSystem<T>) -> Result<SolveReport<T>> {
    solve_with(system, &SolverOptions::default())
}

pub fn solve_with<T: LinalgReal>(system: &CollocationSystem<T>, options: &SolverOptions) -> Result<SolveReport<T>> {
    let a = &system.matrix;
    let (rows, cols) = a.shape();
    if cols != system.ansatz.num_unknowns() || rows != system.rhs.len() {
        return Err(Error::Dimension(format!("matrix {rows}×{cols} does not match the ansatz")));
    }
    if a.iter().chain(system.rhs.iter()).any(|z| !Float::is_finite(z.re) || !Float::is_finite(z.im)) {
        return Err(Error::SingularSystem("non-finite entries".into()));
    }

    let svd = a.clone().svd(true, true);
    let sigma = &svd.singular_values;
    let sigma_max = sigma.iter().copied().fold(T::zero(), |m, s| Float::max(m, s));
    if sigma_max == T::zero() {
        return Err(Error::SingularSystem("matrix is identically zero".into()));
    }
    let sigma_min = if rows >= cols {
        sigma.iter().copied().fold(T::infinity(), |m, s| Float::min(m, s))
    } else {
        T::zero()
    };
    let condition = if sigma_min > T::zero() { sigma_max / sigma_min } else { T::infinity() };
    let cutoff = sigma_max * T::count(rows.max(cols)) * T::epsilon();
    let rank = sigma.iter().filter(|s| **s > cutoff).count();

    let use_lu = options.strategy == SolverStrategy::Auto
        && rows == cols
        && condition <= T::lit(options.condition_threshold);
    let (x, path) = match use_lu.then(|| a.clone().lu().solve(&system.rhs)).flatten() {
        Some(x) => (x, SolverPath::SquareLu),
        None => {
            let x = svd
                .solve(&system.rhs, cutoff)
                .map_err(|e| Error::SingularSystem(e.to_string()))?;
            (x, SolverPath::LeastSquares)
        }
    };
    if x.iter().any(|z| !Float::is_finite(z.re) || !Float::is_finite(z.im)) {
        return Err(Error::SingularSystem("solution is not finite".into()));
    }
    let residual = (a * &x - &system.rhs)
        .iter()
        .fold(T::zero(), |m, z| Float::max(m, z.norm()));

    let n = system.ansatz.num_sources();
    let quat = |k: usize| Biquaternion::new(x[4 * k], x[4 * k + 1], x[4 * k + 2], x[4 * k + 3]);
    let ansatz = system
        .ansatz
        .clone()
        .with_coefficients((0..n).map(quat).collect(), (n..2 * n).map(quat).collect())?;
    Ok(SolveReport { ansatz, residual_norm: residual, condition_estimate: condition, solver_path: path, rank })
}

/// `max over check nodes of |½[(φ+ψ) × n] − f| + |Sc φ − s_φ| + |Sc ψ − s_ψ|`.
pub fn boundary_residual<T: Real>(
    ansatz: &MfsAnsatz<T>,
    data: &BoundaryData<T>,
    check_nodes: &[SurfaceSample<T>],
) -> Result<T> {
    check_nodes.iter().enumerate().try_fold(T::zero(), |worst, (i, node)| {
        let (f, s) = data.at(i, node)?;
        let fields = ansatz.evaluate(node.point)?;
        let tangential = (fields.e.cross_real(node.normal) - f).norm();
        let scalar = (fields.phi.sc() - s[0]).norm() + (fields.psi.sc() - s[1]).norm();
        Ok(Float::max(worst, tangential + scalar))
    })
}

/// Exterior or interior problem with dipole boundary data and a known exact
/// solution.
#[derive(Debug, Clone)]
pub struct DipoleProblem<T> {
    pub surface: SurfaceGeometry<T>,
    pub medium: MediumParams<T>,
    pub kind: ProblemKind,
    /// Dipole moment `c`.
    pub moment: [T; 3],
    /// Dipole location; inside Γ for exterior problems, outside for interior.
    pub position: [T; 3],
    /// Homothety factor of the auxiliary surface.
    pub aux_scale: T,
    /// Number of sources N per family.
    pub sources: usize,
    /// Number of collocation nodes M; `2N` gives a square system.
    pub nodes: usize,
    pub eval_radius: T,
    pub eval_count: usize,
    pub solver: SolverOptions,
}

/// Maximum absolute differences against the exact solution.
#[derive(Debug, Clone)]
pub struct BenchmarkResult<T> {
    pub err_e: T,
    pub err_h: T,
    pub report: SolveReport<T>,
}

impl<T: LinalgReal> DipoleProblem<T> {
    /// Unit sphere, unit medium, exterior, dipole at the origin, square
    /// system and 200 evaluation points.
    pub fn exterior_benchmark(n: usize, alpha: WaveNumber<T>, c: [T; 3], aux_scale: T, eval_radius: T) -> Result<Self> {
        // ω√(εμ) = α with ω = 1, ε = α², μ = 1
        let medium = MediumParams::new(T::one(), alpha.value() * alpha.value(), Complex::new(T::one(), T::zero()), T::zero())?;
        Ok(Self {
            surface: SurfaceGeometry::unit_sphere(),
            medium,
            kind: ProblemKind::Exterior,
            moment: c,
            position: [T::zero(); 3],
            aux_scale,
            sources: n,
            nodes: 2 * n,
            eval_radius,
            eval_count: 200,
            solver: SolverOptions::default(),
        })
    }

    /// Exact `(E, H)` of the configured dipole.
    pub fn exact_field(&self, pair: &WaveNumberPair<T>, x: [T; 3]) -> Result<(ComplexVector3<T>, ComplexVector3<T>)> {
        chiral_dipole_field(pair, self.moment, vec3::sub(x, self.position))
    }

    /// Evaluation points on the sphere of radius `eval_radius` about the
    /// surface centre.
    pub fn eval_points(&self) -> Vec<[T; 3]> {
        let center = self.surface.center();
        fibonacci_directions(self.eval_count, 0.0)
            .into_iter()
            .map(|u| vec3::add(center, vec3::scale(self.eval_radius, u)))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.sources == 0 {
            return Err(Error::Dimension("N must be at least 1".into()));
        }
        if 4 * self.nodes < 8 * self.sources {
            return Err(Error::Dimension(format!(
                "{} nodes give {} equations for {} unknowns",
                self.nodes,
                4 * self.nodes,
                8 * self.sources
            )));
        }
        let inside = self.surface.contains_strictly(self.position);
        let eval_ok = self.eval_points().iter().all(|x| match self.kind {
            ProblemKind::Exterior => self.surface.implicit(*x) > T::zero(),
            ProblemKind::Interior => self.surface.contains_strictly(*x),
        });
        match self.kind {
            ProblemKind::Exterior if !inside => {
                Err(Error::Dimension("exterior problem needs the dipole inside the surface".into()))
            }
            ProblemKind::Interior if inside || self.surface.implicit(self.position) == T::zero() => {
                Err(Error::Dimension("interior problem needs the dipole outside the surface".into()))
            }
            _ if !eval_ok => Err(Error::Dimension("evaluation sphere must lie in the solution domain".into())),
            _ => Ok(()),
        }
    }

    /// Assembles, solves and measures the error against the exact field.
    pub fn run(&self) -> Result<BenchmarkResult<T>> {
        self.validate()?;
        let (_, pair) = self.medium.derive_wave_numbers()?;
        let pool = make_source_pool(&self.surface, self.kind.source_side(), self.aux_scale, self.sources)?;
        let ansatz = MfsAnsatz::with_shared_pool(pair, pool)?;
        let nodes = sample_surface(&self.surface, self.nodes)?;
        let moment = self.moment;
        let position = self.position;
        let data = BoundaryData::from_electric_field(move |x| {
            chiral_dipole_field(&pair, moment, vec3::sub(x, position))
                .map(|(e, _)| e)
                .expect("collocation node away from the dipole")
        });
        let system = assemble(&nodes, &ansatz, &data)?;
        let report = solve_with(&system, &self.solver)?;
        let mut err_e = T::zero();
        let mut err_h = T::zero();
        for x in self.eval_points() {
            let approx = report.ansatz.evaluate(x)?;
            let (e, h) = self.exact_field(&pair, x)?;
            err_e = Float::max(err_e, (approx.e - e).max_abs());
            err_h = Float::max(err_h, (approx.h - h).max_abs());
        }
        Ok(BenchmarkResult { err_e, err_h, report })
    }
}

/// Magnetic-dipole benchmark: unit sphere, dipole at the origin, sources on
/// the sphere of radius `aux_scale`, errors at radius `eval_radius`.
pub fn solve_dipole_benchmark<T: LinalgReal>(
    n: usize,
    alpha: WaveNumber<T>,
    c: [T; 3],
    aux_scale: T,
    eval_radius: T,
) -> Result<BenchmarkResult<T>> {
    DipoleProblem::exterior_benchmark(n, alpha, c, aux_scale, eval_radius)?.run()
}
