//! Chiral media and the diagonalizing field transform.
//!
//! In a homogeneous isotropic chiral medium the scaled fields satisfy
//! `rot E = −iα(H + β rot H)` and `rot H = iα(E + β rot E)`. The purely
//! vectorial quaternions `φ = E + iH` and `ψ = E − iH` decouple into
//! `(D + α1)φ = 0` and `(D − α2)ψ = 0` with `α1 = α/(1+αβ)` and
//! `α2 = α/(1−αβ)`.

use num_complex::Complex;
use num_traits::Zero;

use crate::biquat::{Biquaternion, ComplexVector3};
use crate::error::{Error, Result};
use crate::kernels::{self, WaveNumber};
use crate::scalar::Real;

/// Minimum admissible `|1 ± αβ|`.
const CHIRAL_GUARD: f64 = 1e-12;

/// Frequency, permittivity, permeability and (real) chirality measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams<T> {
    pub omega: T,
    pub epsilon: Complex<T>,
    pub mu: Complex<T>,
    pub beta: T,
}

/// The two wave numbers of opposite circular polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumberPair<T> {
    pub alpha1: WaveNumber<T>,
    pub alpha2: WaveNumber<T>,
}

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Principal square root.
fn principal_sqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    z.sqrt()
}

impl<T: Real> MediumParams<T> {
    pub fn new(omega: T, epsilon: Complex<T>, mu: Complex<T>, beta: T) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::Branch(format!("frequency ω = {omega} must be positive")));
        }
        if !beta.is_finite() {
            return Err(Error::ChiralSingularity { sign: '±', magnitude: f64::NAN });
        }
        let medium = Self { omega, epsilon, mu, beta };
        medium.derive_wave_numbers()?;
        Ok(medium)
    }

    /// Vacuum-like medium `ε = μ = 1` with the given `ω` and `β`.
    pub fn unit(omega: T, beta: T) -> Result<Self> {
        Self::new(omega, Complex::new(T::one(), T::zero()), Complex::new(T::one(), T::zero()), beta)
    }

    /// `α = ω √(εμ)` on the branch with `Im α ≥ 0`.
    pub fn alpha(&self) -> Result<WaveNumber<T>> {
        let mut alpha = principal_sqrt(self.epsilon * self.mu) * self.omega;
        if alpha.im < T::zero() {
            alpha = -alpha;
        }
        if alpha.is_zero() {
            return Err(Error::Branch("εμ = 0 gives α = 0".into()));
        }
        WaveNumber::new(alpha).map_err(|e| Error::Branch(e.to_string()))
    }

    /// `α`, `α1 = α/(1+αβ)` and `α2 = α/(1−αβ)`.
    pub fn derive_wave_numbers(&self) -> Result<(WaveNumber<T>, WaveNumberPair<T>)> {
        let alpha = self.alpha()?;
        if self.beta == T::zero() {
            return Ok((alpha, WaveNumberPair { alpha1: alpha, alpha2: alpha }));
        }
        let a = alpha.value();
        let ab = a * self.beta;
        let one = Complex::new(T::one(), T::zero());
        let plus = one + ab;
        let minus = one - ab;
        let guard = T::lit(CHIRAL_GUARD);
        if plus.norm() < guard {
            return Err(Error::ChiralSingularity { sign: '+', magnitude: f64_of(plus.norm()) });
        }
        if minus.norm() < guard {
            return Err(Error::ChiralSingularity { sign: '−', magnitude: f64_of(minus.norm()) });
        }
        let derived = |v: Complex<T>, name: &str| {
            WaveNumber::new(v).map_err(|e| Error::Branch(format!("{name}: {e}")))
        };
        let pair = WaveNumberPair {
            alpha1: derived(a / plus, "α1")?,
            alpha2: derived(a / minus, "α2")?,
        };
        Ok((alpha, pair))
    }
}

/// `φ = E + iH`, `ψ = E − iH` as purely vectorial quaternions.
pub fn fields_to_phi_psi<T: Real>(
    e: &ComplexVector3<T>,
    h: &ComplexVector3<T>,
) -> (Biquaternion<T>, Biquaternion<T>) {
    let ih = h.scale(Complex::i());
    ((*e + ih).to_biquaternion(), (*e - ih).to_biquaternion())
}

/// Tolerance on scalar parts accepted by [`recover_eh`].
pub fn scalar_tolerance<T: Real>(magnitude: T) -> T {
    T::lit(1e-8) * (T::one() + magnitude)
}

/// `E = ½(φ⃗ + ψ⃗)`, `H = (1/2i)(φ⃗ − ψ⃗)`; both inputs must be vectorial.
pub fn recover_eh<T: Real>(
    phi: &Biquaternion<T>,
    psi: &Biquaternion<T>,
) -> Result<(ComplexVector3<T>, ComplexVector3<T>)> {
    let tol = scalar_tolerance(phi.norm().max(psi.norm()));
    for q in [phi, psi] {
        let s = q.sc().norm();
        if s > tol {
            return Err(Error::NonVectorial { scalar: f64_of(s), tolerance: f64_of(tol) });
        }
    }
    Ok(recover_eh_unchecked(&phi.vec(), &psi.vec()))
}

/// [`recover_eh`] on vector parts, without the scalar guard.
pub fn recover_eh_unchecked<T: Real>(
    phi: &ComplexVector3<T>,
    psi: &ComplexVector3<T>,
) -> (ComplexVector3<T>, ComplexVector3<T>) {
    let half = T::lit(0.5);
    let e = (*phi + *psi).scale_real(half);
    let h = (*phi - *psi).scale(Complex::new(T::zero(), -half));
    (e, h)
}

fn checked_sqrt<T: Real>(z: Complex<T>, name: &str) -> Result<Complex<T>> {
    if z.is_zero() {
        return Err(Error::Branch(format!("{name} = 0 has no usable square root")));
    }
    Ok(principal_sqrt(z))
}

/// Physical fields from the scaled ones: `E = −Ẽ/√μ`, `H = H̃/√ε`.
pub fn scale_physical_fields<T: Real>(
    e_tilde: &ComplexVector3<T>,
    h_tilde: &ComplexVector3<T>,
    medium: &MediumParams<T>,
) -> Result<(ComplexVector3<T>, ComplexVector3<T>)> {
    let sqrt_mu = checked_sqrt(medium.mu, "μ")?;
    let sqrt_eps = checked_sqrt(medium.epsilon, "ε")?;
    Ok((e_tilde.scale(-sqrt_mu.inv()), h_tilde.scale(sqrt_eps.inv())))
}

/// Inverse of [`scale_physical_fields`]: `Ẽ = −√μ E`, `H̃ = √ε H`.
pub fn unscale_physical_fields<T: Real>(
    e: &ComplexVector3<T>,
    h: &ComplexVector3<T>,
    medium: &MediumParams<T>,
) -> Result<(ComplexVector3<T>, ComplexVector3<T>)> {
    let sqrt_mu = checked_sqrt(medium.mu, "μ")?;
    let sqrt_eps = checked_sqrt(medium.epsilon, "ε")?;
    Ok((e.scale(-sqrt_mu), h.scale(sqrt_eps)))
}

/// Exact field of a point source with moment `c` at the origin in a chiral
/// medium:
///
/// ```text
/// φ = −(1/α1)(rot u1 − α1 u1),  u1 = rot(c θα1)
/// ψ =  (1/α2)(rot u2 + α2 u2),  u2 = rot(c θα2)
/// ```
///
/// For `β = 0` this is the magnetic dipole of [`kernels::dipole_field`].
pub fn chiral_dipole_field<T: Real>(
    pair: &WaveNumberPair<T>,
    c: [T; 3],
    x: [T; 3],
) -> Result<(ComplexVector3<T>, ComplexVector3<T>)> {
    let (a1, a2) = (pair.alpha1, pair.alpha2);
    let u1 = kernels::grad_theta(a1, x)?.cross_real(c);
    let u2 = kernels::grad_theta(a2, x)?.cross_real(c);
    let rot_u1 = kernels::rot_rot_moment(a1, c, x)?;
    let rot_u2 = kernels::rot_rot_moment(a2, c, x)?;
    let phi = (rot_u1 - u1.scale(a1.value())).scale(-a1.value().inv());
    let psi = (rot_u2 + u2.scale(a2.value())).scale(a2.value().inv());
    Ok(recover_eh_unchecked(&phi, &psi))
}
