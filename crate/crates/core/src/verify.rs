//! Numerical oracles: finite-difference operator identities, Cauchy-integral
//! reproduction and radiation-condition decay.

use num_complex::Complex;

use crate::biquat::{Biquaternion, ComplexVector3};
use crate::error::{Error, Result};
use crate::geometry::{fibonacci_directions, SurfaceSample};
use crate::kernels::{dirac_apply_fd, dirac_fd, kernel, laplacian_fd, KernelSign, WaveNumber};
use crate::scalar::{vec3, Real};

/// Step, sample points and pass threshold of a finite-difference check.
#[derive(Debug, Clone, PartialEq)]
pub struct FdCheckConfig<T> {
    pub h: T,
    pub points: Vec<[T; 3]>,
    pub tolerance: T,
}

impl<T: Real> FdCheckConfig<T> {
    pub fn new(h: T, points: Vec<[T; 3]>, tolerance: T) -> Result<Self> {
        for (name, v) in [("step", h), ("tolerance", tolerance)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::Scale {
                    scale: v.to_f64().unwrap_or(f64::NAN),
                    reason: format!("{name} must be positive"),
                });
            }
        }
        Ok(Self { h, points, tolerance })
    }

    /// Fibonacci points on spheres of the given radii.
    pub fn shells(h: T, radii: &[T], per_shell: usize, tolerance: T) -> Result<Self> {
        let dirs = fibonacci_directions::<T>(per_shell, 0.3);
        let points = radii
            .iter()
            .flat_map(|&r| dirs.iter().map(move |u| vec3::scale(r, *u)))
            .collect();
        Self::new(h, points, tolerance)
    }
}

fn floor<T: Real>(x: T) -> T {
    x.max(T::min_positive_value())
}

/// Worst relative residual of `Δ + α² = −Dα D−α = −D−α Dα`, both
/// compositions, with nested central differences.
pub fn check_factorization<T, F>(alpha: WaveNumber<T>, f: &F, cfg: &FdCheckConfig<T>) -> T
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T> + Sync,
{
    let a2 = alpha.value() * alpha.value();
    let h = cfg.h;
    cfg.points.iter().fold(T::zero(), |worst, &x| {
        let fx = f(x);
        let helmholtz = laplacian_fd(f, x, h) + fx.scale(a2);
        let compose = |outer: KernelSign| {
            let inner = |y: [T; 3]| dirac_apply_fd(alpha, outer.flip(), f, y, h);
            dirac_apply_fd(alpha, outer, &inner, x, h)
        };
        let scale = floor(fx.norm() * a2.norm().max(T::one()) + laplacian_fd(f, x, h).norm());
        let r1 = (helmholtz + compose(KernelSign::Plus)).norm() / scale;
        let r2 = (helmholtz + compose(KernelSign::Minus)).norm() / scale;
        worst.max(r1).max(r2)
    })
}

/// Worst relative residual of `(D ± α) f` over the configured points.
pub fn check_annihilation<T, F>(alpha: WaveNumber<T>, sign: KernelSign, f: &F, cfg: &FdCheckConfig<T>) -> T
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T>,
{
    cfg.points.iter().fold(T::zero(), |worst, &x| {
        let fx = f(x);
        let scale = floor(fx.norm() * alpha.value().norm() + dirac_fd(f, x, cfg.h).norm());
        worst.max(dirac_apply_fd(alpha, sign, f, x, cfg.h).norm() / scale)
    })
}

/// Absolute residuals of `div f⃗ = 0` and `grad f0 + rot f⃗ = 0`, read off
/// the scalar and vector parts of the finite-difference `Df`.
pub fn check_moisil_theodoresco<T, F>(f: &F, cfg: &FdCheckConfig<T>) -> (T, T)
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T>,
{
    cfg.points.iter().fold((T::zero(), T::zero()), |(div, rot), &x| {
        let df = dirac_fd(f, x, cfg.h);
        (div.max(df.sc().norm()), rot.max(df.vec().norm()))
    })
}

/// Minimum sample count accepted by the quadrature routines.
pub const MIN_QUADRATURE_SAMPLES: usize = 16;

/// `−Kα f(x) = ∫Γ K(x − y) n(y) f(y) dΓ` by weighted summation.
pub fn cauchy_integral<T, F>(
    alpha: WaveNumber<T>,
    sign: KernelSign,
    f: &F,
    samples: &[SurfaceSample<T>],
    x: [T; 3],
) -> Result<Biquaternion<T>>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T>,
{
    if samples.len() < MIN_QUADRATURE_SAMPLES {
        return Err(Error::Quadrature { required: MIN_QUADRATURE_SAMPLES, given: samples.len() });
    }
    samples.iter().try_fold(Biquaternion::zero(), |acc, s| {
        let k = kernel(alpha, sign, vec3::sub(x, s.point))?;
        let n = Biquaternion::from_point(s.normal);
        Ok(acc + (k * n * f(s.point)).scale_real(s.weight))
    })
}

/// Outcome of a Cauchy reproduction check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyCheck<T> {
    pub reproduced: Biquaternion<T>,
    pub reference: Biquaternion<T>,
    /// `|reproduced − reference| / |reference|`.
    pub error: T,
}

/// Reproduces the exterior field `f(y) = K(y − source)` at `x` from its
/// boundary trace.
pub fn cauchy_reproduce<T: Real>(
    alpha: WaveNumber<T>,
    sign: KernelSign,
    source: [T; 3],
    samples: &[SurfaceSample<T>],
    x: [T; 3],
) -> Result<CauchyCheck<T>> {
    let f = |y: [T; 3]| kernel(alpha, sign, vec3::sub(y, source)).expect("source off the surface");
    let reproduced = cauchy_integral(alpha, sign, &f, samples, x)?;
    let reference = kernel(alpha, sign, vec3::sub(x, source))?;
    let error = (reproduced - reference).norm() / floor(reference.norm());
    Ok(CauchyCheck { reproduced, reference, error })
}

/// One line of a decay table: `radius · max over directions of |g(x)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow<T> {
    pub radius: T,
    pub value: T,
}

/// `r · max_u g(r u)` over `directions` Fibonacci directions, per radius.
pub fn decay_table<T, G>(radii: &[T], directions: usize, g: G) -> Vec<DecayRow<T>>
where
    T: Real,
    G: Fn([T; 3]) -> T,
{
    let dirs = fibonacci_directions::<T>(directions, 0.0);
    radii
        .iter()
        .map(|&r| {
            let worst = dirs.iter().fold(T::zero(), |m, u| m.max(g(vec3::scale(r, *u))));
            DecayRow { radius: r, value: r * worst }
        })
        .collect()
}

/// True when each successive entry shrinks by at least `factor`.
pub fn decays_by<T: Real>(table: &[DecayRow<T>], factor: T) -> bool {
    table.windows(2).all(|w| w[1].value * factor <= w[0].value)
}

/// `(1 ± i x̂) · f(x)`, the quaternionic radiation expression.
pub fn radiation_expression<T: Real>(sign: KernelSign, f: Biquaternion<T>, x: [T; 3]) -> Biquaternion<T> {
    let u = vec3::normalize(x);
    let s = Complex::new(T::zero(), sign.factor::<T>());
    let factor = Biquaternion::one() + Biquaternion::from_point(u).scale(s);
    factor * f
}

/// Decay table of `r ‖(1 ± i x̂) · f(x)‖`; `Plus` is the condition for
/// `ker Dα`, `Minus` for `ker D−α`.
pub fn radiation_decay<T, F>(f: &F, sign: KernelSign, radii: &[T], directions: usize) -> Vec<DecayRow<T>>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T>,
{
    decay_table(radii, directions, |x| radiation_expression(sign, f(x), x).norm())
}

/// Decay table of `r ‖iα u + x̂ · Du‖` with `Du` by central differences.
pub fn helmholtz_radiation_decay<T, F>(
    alpha: WaveNumber<T>,
    u: &F,
    radii: &[T],
    directions: usize,
    h: T,
) -> Vec<DecayRow<T>>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T>,
{
    let ia = Complex::new(T::zero(), T::one()) * alpha.value();
    decay_table(radii, directions, |x| {
        let xhat = Biquaternion::from_point(vec3::normalize(x));
        (u(x).scale(ia) + xhat * dirac_fd(u, x, h)).norm()
    })
}

/// Decay table of `r ‖E − x̂ × H‖`.
pub fn silver_muller_decay<T, F>(fields: &F, radii: &[T], directions: usize) -> Vec<DecayRow<T>>
where
    T: Real,
    F: Fn([T; 3]) -> (ComplexVector3<T>, ComplexVector3<T>),
{
    decay_table(radii, directions, |x| {
        let (e, h) = fields(x);
        let xh = ComplexVector3::from_real(vec3::normalize(x)).cross(&h);
        (e - xh).norm()
    })
}
