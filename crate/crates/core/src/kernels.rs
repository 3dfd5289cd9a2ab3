//! Closed-form kernels and finite-difference Dirac operators.
//!
//! `θα(x) = −e^{iα|x|} / (4π|x|)` is the outgoing fundamental solution of
//! `Δ + α²`. The quaternionic kernels
//!
//! ```text
//! K±α(x) = (±α + x/|x|² − iα x/|x|) θα(x)
//! ```
//!
//! are fundamental solutions of `D±α = D ± α`, where `D = Σ ik ∂k` acts by
//! left multiplication. `Sc K±α = ±α θα` and `Vec K±α = −grad θα`.

use num_complex::Complex;
use num_traits::Zero;

use crate::biquat::{Biquaternion, ComplexVector3};
use crate::error::{Error, Result};
use crate::scalar::{vec3, Real};

/// Evaluation closer than this to a kernel singularity is rejected.
pub const R_MIN: f64 = 1e-10;

/// Wave number α with `α ≠ 0` and `Im α ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumber<T>(Complex<T>);

impl<T: Real> WaveNumber<T> {
    pub fn new(alpha: Complex<T>) -> Result<Self> {
        if alpha.is_zero() || !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::InvalidWaveNumber(format!("α = {alpha} must be finite and nonzero")));
        }
        if alpha.im < T::zero() {
            return Err(Error::InvalidWaveNumber(format!("α = {alpha} has Im α < 0")));
        }
        Ok(Self(alpha))
    }

    pub fn real(alpha: T) -> Result<Self> {
        Self::new(Complex::new(alpha, T::zero()))
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        self.0
    }
}

/// Selects the `D+α` or `D−α` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelSign {
    Plus,
    Minus,
}

impl KernelSign {
    #[inline]
    pub fn factor<T: Real>(self) -> T {
        match self {
            KernelSign::Plus => T::one(),
            KernelSign::Minus => -T::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            KernelSign::Plus => KernelSign::Minus,
            KernelSign::Minus => KernelSign::Plus,
        }
    }
}

fn checked_radius<T: Real>(x: [T; 3]) -> Result<T> {
    let r = vec3::norm(x);
    if !(r > T::lit(R_MIN)) {
        return Err(Error::SingularPoint {
            distance: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(r)
}

/// Radial profile: `θ`, `θ'` and `θ''` as functions of `r`.
fn radial<T: Real>(alpha: Complex<T>, r: T) -> (Complex<T>, Complex<T>, Complex<T>) {
    let i = Complex::<T>::i();
    let four_pi = T::lit(4.0) * T::PI();
    let theta = -(i * alpha * r).exp() / (four_pi * r);
    let g = i * alpha - r.recip();
    let d1 = theta * g;
    let d2 = theta * (g * g + (r * r).recip());
    (theta, d1, d2)
}

/// Helmholtz fundamental solution `θα(x)`.
pub fn theta<T: Real>(alpha: WaveNumber<T>, x: [T; 3]) -> Result<Complex<T>> {
    let r = checked_radius(x)?;
    Ok(radial(alpha.value(), r).0)
}

/// `grad θα(x) = (iα x/|x| − x/|x|²) θα(x)`.
pub fn grad_theta<T: Real>(alpha: WaveNumber<T>, x: [T; 3]) -> Result<ComplexVector3<T>> {
    let r = checked_radius(x)?;
    let (_, d1, _) = radial(alpha.value(), r);
    Ok(ComplexVector3::from_real(vec3::scale(r.recip(), x)).scale(d1))
}

/// Hessian `∂j ∂k θα(x)`.
pub fn hessian_theta<T: Real>(alpha: WaveNumber<T>, x: [T; 3]) -> Result<[[Complex<T>; 3]; 3]> {
    let r = checked_radius(x)?;
    let (_, d1, d2) = radial(alpha.value(), r);
    let u = vec3::scale(r.recip(), x);
    let tangential = d1 / r;
    let mut h = [[Complex::zero(); 3]; 3];
    for j in 0..3 {
        for k in 0..3 {
            let delta = if j == k { T::one() } else { T::zero() };
            h[j][k] = d2 * (u[j] * u[k]) + tangential * (delta - u[j] * u[k]);
        }
    }
    Ok(h)
}

/// Quaternionic fundamental solution `K±α(x)`.
pub fn kernel<T: Real>(alpha: WaveNumber<T>, sign: KernelSign, x: [T; 3]) -> Result<Biquaternion<T>> {
    let r = checked_radius(x)?;
    let a = alpha.value();
    let (theta, d1, _) = radial(a, r);
    let scalar = a * theta * sign.factor::<T>();
    let vector = ComplexVector3::from_real(vec3::scale(r.recip(), x)).scale(-d1);
    Ok(Biquaternion::from_parts(scalar, vector))
}

/// Default central-difference step `1e-4 · max(1, |x|)`.
pub fn default_fd_step<T: Real>(x: [T; 3]) -> T {
    T::lit(1e-4) * vec3::norm(x).max(T::one())
}

fn shifted<T: Real>(x: [T; 3], k: usize, h: T) -> [T; 3] {
    let mut y = x;
    y[k] = y[k] + h;
    y
}

/// Central-difference partial derivative `∂k f(x)`.
pub fn partial_fd<T, F>(f: &F, x: [T; 3], k: usize, h: T) -> Biquaternion<T>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T> + ?Sized,
{
    (f(shifted(x, k, h)) - f(shifted(x, k, -h))).scale_real((h + h).recip())
}

/// Central-difference approximation of `Df = Σ ik ∂k f`.
pub fn dirac_fd<T, F>(f: &F, x: [T; 3], h: T) -> Biquaternion<T>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T> + ?Sized,
{
    (0..3).fold(Biquaternion::zero(), |acc, k| {
        acc + Biquaternion::unit(k + 1) * partial_fd(f, x, k, h)
    })
}

/// Central-difference approximation of `(D ± α) f` at `x`.
pub fn dirac_apply_fd<T, F>(alpha: WaveNumber<T>, sign: KernelSign, f: &F, x: [T; 3], h: T) -> Biquaternion<T>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T> + ?Sized,
{
    dirac_fd(f, x, h) + f(x).scale(alpha.value() * sign.factor::<T>())
}

/// Seven-point Laplacian.
pub fn laplacian_fd<T, F>(f: &F, x: [T; 3], h: T) -> Biquaternion<T>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T> + ?Sized,
{
    let centre = f(x).scale_real(T::lit(6.0));
    let sum = (0..3).fold(Biquaternion::zero(), |acc, k| {
        acc + f(shifted(x, k, h)) + f(shifted(x, k, -h))
    });
    (sum - centre).scale_real((h * h).recip())
}

/// `Π±α f = ∓ (1/2α) D∓α f`, the projection of a Helmholtz solution onto
/// `ker D±α`.
pub fn projection_fd<T, F>(alpha: WaveNumber<T>, sign: KernelSign, f: &F, x: [T; 3], h: T) -> Biquaternion<T>
where
    T: Real,
    F: Fn([T; 3]) -> Biquaternion<T> + ?Sized,
{
    let two_alpha = alpha.value() * T::lit(2.0);
    let factor = -two_alpha.inv() * sign.factor::<T>();
    dirac_apply_fd(alpha, sign.flip(), f, x, h).scale(factor)
}

/// Field of a magnetic dipole with moment `c` at the origin:
/// `E = rot(c θα)` and `H = −(1/iα) rot E`.
///
/// `rot E = grad(c · grad θα) + α² θα c` off the origin, so `H` is exact.
pub fn dipole_field<T: Real>(
    alpha: WaveNumber<T>,
    c: [T; 3],
    x: [T; 3],
) -> Result<(ComplexVector3<T>, ComplexVector3<T>)> {
    let a = alpha.value();
    let grad = grad_theta(alpha, x)?;
    let e = grad.cross_real(c);
    let rot_e = rot_rot_moment(alpha, c, x)?;
    let h = rot_e.scale(Complex::<T>::i() / a);
    Ok((e, h))
}

/// `rot rot (c θα)(x) = Hess θα · c + α² θα c`.
pub fn rot_rot_moment<T: Real>(alpha: WaveNumber<T>, c: [T; 3], x: [T; 3]) -> Result<ComplexVector3<T>> {
    let a = alpha.value();
    let hess = hessian_theta(alpha, x)?;
    let th = theta(alpha, x)?;
    let mut out = ComplexVector3::zero();
    for j in 0..3 {
        let hc = hess[j][0].scale(c[0]) + hess[j][1].scale(c[1]) + hess[j][2].scale(c[2]);
        out[j] = hc + a * a * th * c[j];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;
    type Q = Biquaternion<f64>;

    fn wn(re: f64, im: f64) -> WaveNumber<f64> {
        WaveNumber::new(C::new(re, im)).unwrap()
    }

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn wave_number_validation() {
        assert!(WaveNumber::new(C::new(0.0, 0.0)).is_err());
        assert!(WaveNumber::new(C::new(1.0, -0.1)).is_err());
        assert!(WaveNumber::new(C::new(-1.0, 0.0)).is_ok());
    }

    #[test]
    fn theta_values() {
        let t0 = theta(wn(1e-12, 0.0), [1.0, 0.0, 0.0]).unwrap();
        assert!((t0.re + 1.0 / (4.0 * PI)).abs() < 1e-12 && t0.im.abs() < 1e-12);
        let t1 = theta(wn(1.0, 0.0), [1.0, 0.0, 0.0]).unwrap();
        let expected = -C::new(1f64.cos(), 1f64.sin()) / (4.0 * PI);
        assert!(rel(t1, expected) < 1e-15);
        let a = theta(wn(1.0, 0.0), [0.0, 0.0, 2.0]).unwrap();
        let b = theta(wn(1.0, 0.0), [0.0, 2.0, 0.0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singular_point_rejected() {
        let err = theta(wn(1.0, 0.0), [0.0, 0.0, 1e-11]).unwrap_err();
        assert_eq!(err.name(), "SingularPointError");
        assert!(kernel(wn(1.0, 0.0), KernelSign::Plus, [0.0; 3]).is_err());
        assert!(dipole_field(wn(1.0, 0.0), [0.0, 0.0, 1.0], [0.0; 3]).is_err());
    }

    #[test]
    fn gradient_on_axis() {
        let alpha = wn(1.0, 0.0);
        let g = grad_theta(alpha, [1.0, 0.0, 0.0]).unwrap();
        let expected = (C::i() - 1.0) * theta(alpha, [1.0, 0.0, 0.0]).unwrap();
        assert!(rel(g[0], expected) < 1e-15);
        assert_eq!(g[1], C::zero());
        assert_eq!(g[2], C::zero());
        let g = grad_theta(wn(3.0, 0.2), [2.5, 0.0, 0.0]).unwrap();
        assert_eq!((g[1], g[2]), (C::zero(), C::zero()));
    }

    #[test]
    fn gradient_sign_matches_kernel_vector_part() {
        // Vec K = −grad θ; in the static limit θ < 0 so Vec K points inward.
        let x = [0.7, -0.3, 1.1];
        let alpha = wn(2.0, 0.0);
        let g = grad_theta(alpha, x).unwrap();
        let k = kernel(alpha, KernelSign::Plus, x).unwrap();
        assert_eq!(k.vec(), -g);
        let k0 = kernel(wn(1e-12, 0.0), KernelSign::Plus, [1.0, 0.0, 0.0]).unwrap();
        assert!(k0.a1.re < 0.0);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let alpha = wn(2.0, 0.0);
        let x = [0.7, -0.3, 1.1];
        let h = 1e-5;
        let g = grad_theta(alpha, x).unwrap();
        for k in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let fd = (theta(alpha, xp).unwrap() - theta(alpha, xm).unwrap()) / (2.0 * h);
            assert!(rel(fd, g[k]) < 1e-7, "component {k}");
        }
    }

    #[test]
    fn hessian_matches_finite_differences() {
        let alpha = wn(1.5, 0.3);
        let x = [0.4, 0.9, -0.6];
        let h = 1e-5;
        let hess = hessian_theta(alpha, x).unwrap();
        for k in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let gp = grad_theta(alpha, xp).unwrap();
            let gm = grad_theta(alpha, xm).unwrap();
            for j in 0..3 {
                let fd = (gp[j] - gm[j]) / (2.0 * h);
                assert!((fd - hess[j][k]).norm() < 1e-7 * (1.0 + hess[j][k].norm()));
            }
        }
    }

    #[test]
    fn kernel_explicit_form() {
        let alpha = wn(1.0, 0.0);
        let x = [1.0, 0.0, 0.0];
        let th = theta(alpha, x).unwrap();
        let k = kernel(alpha, KernelSign::Plus, x).unwrap();
        assert!(rel(k.a1, (1.0 - C::i()) * th) < 1e-15);
        assert_eq!((k.a2, k.a3), (C::zero(), C::zero()));
        assert!(rel(k.a0, th) < 1e-15);

        for x in [[0.3, 0.2, -1.0], [2.0, 1.0, 0.5]] {
            let p = kernel(wn(2.0, 0.5), KernelSign::Plus, x).unwrap();
            let m = kernel(wn(2.0, 0.5), KernelSign::Minus, x).unwrap();
            assert_eq!(p.sc(), -m.sc());
            assert_eq!(p.vec(), m.vec());
        }
    }

    #[test]
    fn kernel_static_limit() {
        // α → 0: Sc → 0 and Vec → (x/|x|²) θ0 = −x / (4π|x|³).
        let x = [0.6, -0.8, 1.2];
        let r = vec3::norm(x);
        let k = kernel(wn(1e-12, 0.0), KernelSign::Plus, x).unwrap();
        assert!(k.a0.norm() < 1e-12);
        for (j, comp) in k.vec().0.iter().enumerate() {
            let expected = -x[j] / (4.0 * PI * r * r * r);
            assert!((comp.re - expected).abs() < 1e-12 && comp.im.abs() < 1e-12);
        }
    }

    #[test]
    fn dirac_of_constant_and_linear_fields() {
        let c = Q::new(C::new(1.0, 2.0), C::new(-0.5, 0.0), C::new(0.0, 3.0), C::new(2.0, -1.0));
        let alpha = wn(1.3, 0.2);
        let out = dirac_apply_fd(alpha, KernelSign::Plus, &|_| c, [0.3, 0.4, 0.5], 1e-4);
        assert_eq!(out, c.scale(alpha.value()));
        // f = x1 i1: Df = −div f = −1
        let f = |x: [f64; 3]| Q::unit(1).scale_real(x[0]);
        let d = dirac_fd(&f, [0.2, -0.1, 0.7], 1e-3);
        assert!((d - Q::from_real([-1.0, 0.0, 0.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn dirac_vector_form() {
        // Df = −div f⃗ + grad f0 + rot f⃗ for a polynomial field.
        let f = |x: [f64; 3]| {
            Q::from_real([x[0] * x[1], x[1] * x[2], x[0] * x[0], x[2] - x[1]])
        };
        let x = [0.5, -1.0, 2.0];
        let d = dirac_fd(&f, x, 1e-3);
        let div = 1.0;
        let grad0 = [x[1], x[0], 0.0];
        let rot = [-1.0, x[1], 2.0 * x[0] - x[2]];
        let expected = Q::from_real([-div, grad0[0] + rot[0], grad0[1] + rot[1], grad0[2] + rot[2]]);
        assert!((d - expected).norm() < 1e-9);
    }

    #[test]
    fn kernel_annihilation() {
        for alpha in [wn(1.0, 0.0), wn(2.0, 0.5)] {
            for sign in [KernelSign::Plus, KernelSign::Minus] {
                let f = |y: [f64; 3]| kernel(alpha, sign, y).unwrap();
                for x in [[0.5, 0.0, 0.0], [0.3, -1.2, 0.8], [2.0, 1.5, -1.0]] {
                    let res = dirac_apply_fd(alpha, sign, &f, x, 1e-4);
                    assert!(res.norm() < 1e-6 * f(x).norm());
                }
            }
        }
    }

    #[test]
    fn projections_resolve_identity() {
        let alpha = wn(1.2, 0.0);
        // u = cos(α x3) i0 + e^{iα x1} i2 solves the Helmholtz equation.
        let u = move |x: [f64; 3]| {
            let a = alpha.value();
            Q::new((a * x[2]).cos(), C::zero(), (C::i() * a * x[0]).exp(), C::zero())
        };
        let x = [0.3, -0.2, 0.9];
        let plus = projection_fd(alpha, KernelSign::Plus, &u, x, 1e-4);
        let minus = projection_fd(alpha, KernelSign::Minus, &u, x, 1e-4);
        assert!((plus + minus - u(x)).norm() < 1e-8);

        let pp = |y| projection_fd(alpha, KernelSign::Plus, &u, y, 1e-3);
        let twice = projection_fd(alpha, KernelSign::Plus, &pp, x, 1e-3);
        assert!((twice - plus).norm() < 1e-3 * u(x).norm());
        let cross = projection_fd(alpha, KernelSign::Minus, &pp, x, 1e-3);
        assert!(cross.norm() < 1e-3 * u(x).norm());
    }

    #[test]
    fn dipole_component_pattern() {
        let alpha = wn(1.0, 0.0);
        let (e, _) = dipole_field(alpha, [0.0, 0.0, 1.0], [1.7, 0.0, 0.0]).unwrap();
        assert_eq!(e[0], C::zero());
        assert_eq!(e[2], C::zero());
        assert!(e[1].norm() > 0.0);
    }

    #[test]
    fn dipole_scales_linearly() {
        let alpha = wn(1.0, 0.0);
        let x = [0.4, 1.1, -0.3];
        let (e1, h1) = dipole_field(alpha, [0.2, -0.5, 1.0], x).unwrap();
        let (e2, h2) = dipole_field(alpha, [0.4, -1.0, 2.0], x).unwrap();
        assert!((e2 - e1.scale_real(2.0)).norm() < 1e-15 * e2.norm());
        assert!((h2 - h1.scale_real(2.0)).norm() < 1e-15 * h2.norm());
    }

    #[test]
    fn dipole_satisfies_maxwell() {
        let alpha = wn(1.0, 0.0);
        let c = [0.3, -0.2, 1.0];
        let x = [2.0, 1.0, -1.0];
        let ef = |y: [f64; 3]| dipole_field(alpha, c, y).unwrap().0.to_biquaternion();
        let hf = |y: [f64; 3]| dipole_field(alpha, c, y).unwrap().1.to_biquaternion();
        let (e, h) = dipole_field(alpha, c, x).unwrap();
        let h_step = 1e-4 * 6f64.sqrt();
        // Sc(D v) = −div v, Vec(D v) = rot v
        let de = dirac_fd(&ef, x, h_step);
        let dh = dirac_fd(&hf, x, h_step);
        assert!(de.sc().norm() < 1e-5 * e.norm());
        assert!(dh.sc().norm() < 1e-5 * h.norm());
        let rot_h = dh.vec();
        let expected = e.scale(C::i() * alpha.value());
        assert!((rot_h - expected).norm() < 1e-6 * expected.norm());
        let rot_e = de.vec();
        let expected = h.scale(-C::i() * alpha.value());
        assert!((rot_e - expected).norm() < 1e-6 * expected.norm());
    }
}
