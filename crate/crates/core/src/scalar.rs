//! Scalar abstractions shared by every module.
//!
//! Algebraic code (biquaternion products, conjugation) only needs a
//! commutative ring with negation, so it is written against [`Ring`] and
//! works for exact integer or rational coefficients as well as floats.
//! Everything that takes square roots, exponentials or tolerances is
//! written against [`Real`].

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Coefficient type for exact quaternion algebra.
pub trait Ring: Num + Copy + Neg<Output = Self> {}

impl<T: Num + Copy + Neg<Output = T>> Ring for T {}

/// Floating point: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count into this type.
    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Real 3-vector helpers on plain arrays.
pub mod vec3 {
    use super::Real;

    pub type Vec3<T> = [T; 3];

    #[inline]
    pub fn add<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    #[inline]
    pub fn sub<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    #[inline]
    pub fn scale<T: Real>(s: T, a: Vec3<T>) -> Vec3<T> {
        [s * a[0], s * a[1], s * a[2]]
    }

    #[inline]
    pub fn dot<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    #[inline]
    pub fn cross<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    #[inline]
    pub fn norm<T: Real>(a: Vec3<T>) -> T {
        dot(a, a).sqrt()
    }

    /// Unit vector along `a`; `a` must be nonzero.
    #[inline]
    pub fn normalize<T: Real>(a: Vec3<T>) -> Vec3<T> {
        scale(T::one() / norm(a), a)
    }

    #[inline]
    pub fn distance<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
        norm(sub(a, b))
    }
}
