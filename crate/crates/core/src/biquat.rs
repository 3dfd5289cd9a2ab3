//! Complex quaternions ℍ(ℂ).
//!
//! An element is `a = a0 i0 + a1 i1 + a2 i2 + a3 i3` with complex
//! coefficients. The imaginary unit `i` of ℂ commutes with the quaternionic
//! units, which satisfy `i0 = 1`, `ik² = −1` and `i1 i2 = −i2 i1 = i3`
//! (cyclically). Vector parts use the bilinear form
//! `⟨a, b⟩ = Σ ak bk`, never a Hermitian product.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Ring};

/// Purely vectorial complex quaternion, i.e. an element of ℂ³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexVector3<T>(pub [Complex<T>; 3]);

/// Complex quaternion stored as four complex coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Biquaternion<T> {
    pub a0: Complex<T>,
    pub a1: Complex<T>,
    pub a2: Complex<T>,
    pub a3: Complex<T>,
}

impl<T: Ring> ComplexVector3<T> {
    pub fn new(v1: Complex<T>, v2: Complex<T>, v3: Complex<T>) -> Self {
        Self([v1, v2, v3])
    }

    pub fn zero() -> Self {
        Self([Complex::zero(); 3])
    }

    /// Embeds a real vector.
    pub fn from_real(v: [T; 3]) -> Self {
        Self(v.map(|x| Complex::new(x, T::zero())))
    }

    /// Bilinear sum `Σ uk vk` (no complex conjugation).
    pub fn dot(&self, other: &Self) -> Complex<T> {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    /// Bilinear pairing with a real vector.
    pub fn dot_real(&self, v: [T; 3]) -> Complex<T> {
        self.0[0].scale(v[0]) + self.0[1].scale(v[1]) + self.0[2].scale(v[2])
    }

    pub fn cross(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        Self([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }

    /// Cross product with a real vector on the right.
    pub fn cross_real(&self, v: [T; 3]) -> Self {
        self.cross(&Self::from_real(v))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self(self.0.map(|x| x * s))
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self(self.0.map(|x| x.scale(s)))
    }

    /// Purely vectorial quaternion with this vector part.
    pub fn to_biquaternion(&self) -> Biquaternion<T> {
        Biquaternion::from_parts(Complex::zero(), *self)
    }
}

impl<T: Real> ComplexVector3<T> {
    /// Euclidean length `sqrt(Σ |vk|²)`.
    pub fn norm(&self) -> T {
        self.0
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest modulus among the three components.
    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }
}

impl<T> Index<usize> for ComplexVector3<T> {
    type Output = Complex<T>;
    fn index(&self, k: usize) -> &Complex<T> {
        &self.0[k]
    }
}

impl<T> IndexMut<usize> for ComplexVector3<T> {
    fn index_mut(&mut self, k: usize) -> &mut Complex<T> {
        &mut self.0[k]
    }
}

impl<T: Ring> Add for ComplexVector3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl<T: Ring> Sub for ComplexVector3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl<T: Ring> Neg for ComplexVector3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|x| -x))
    }
}

impl<T: Ring> AddAssign for ComplexVector3<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Ring> Biquaternion<T> {
    pub fn new(a0: Complex<T>, a1: Complex<T>, a2: Complex<T>, a3: Complex<T>) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn from_parts(scalar: Complex<T>, vector: ComplexVector3<T>) -> Self {
        let [a1, a2, a3] = vector.0;
        Self { a0: scalar, a1, a2, a3 }
    }

    /// Quaternion with real coefficients.
    pub fn from_real(a: [T; 4]) -> Self {
        let c = |x| Complex::new(x, T::zero());
        Self::new(c(a[0]), c(a[1]), c(a[2]), c(a[3]))
    }

    pub fn from_scalar(s: Complex<T>) -> Self {
        Self::from_parts(s, ComplexVector3::zero())
    }

    pub fn zero() -> Self {
        Self::from_scalar(Complex::zero())
    }

    /// The unit `i0 = 1`.
    pub fn one() -> Self {
        Self::from_scalar(Complex::one())
    }

    /// Quaternionic unit `ik`, `k ∈ 0..4`.
    pub fn unit(k: usize) -> Self {
        let mut c = [Complex::zero(); 4];
        c[k] = Complex::one();
        Self::from_array(c)
    }

    pub fn from_array(c: [Complex<T>; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(&self) -> [Complex<T>; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    /// Scalar part Sc(a).
    pub fn sc(&self) -> Complex<T> {
        self.a0
    }

    /// Vector part Vec(a).
    pub fn vec(&self) -> ComplexVector3<T> {
        ComplexVector3([self.a1, self.a2, self.a3])
    }

    /// Quaternionic conjugate `a0 − a⃗`.
    pub fn conj(&self) -> Self {
        Self::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// Quaternionic product
    /// `a0 b0 − ⟨a⃗, b⃗⟩ + [a⃗ × b⃗] + a0 b⃗ + b0 a⃗`.
    pub fn qmul(&self, rhs: &Self) -> Self {
        let (av, bv) = (self.vec(), rhs.vec());
        let scalar = self.a0 * rhs.a0 - av.dot(&bv);
        let vector = av.cross(&bv) + bv.scale(self.a0) + av.scale(rhs.a0);
        Self::from_parts(scalar, vector)
    }

    /// Multiplication by a complex scalar (commutes with everything).
    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_array(self.to_array().map(|x| x * s))
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::from_array(self.to_array().map(|x| x.scale(s)))
    }

    /// `a·ā = a0² + a1² + a2² + a3²`, always a scalar.
    pub fn norm_form(&self) -> Complex<T> {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Real 3-vector `x` as the quaternion `Σ xk ik`.
    pub fn from_point(x: [T; 3]) -> Self {
        ComplexVector3::from_real(x).to_biquaternion()
    }

    /// The 4×4 complex matrix of `b ↦ self·b` in the basis `i0..i3`;
    /// column `m` holds the components of `self·im`.
    pub fn left_mul_matrix(&self) -> [[Complex<T>; 4]; 4] {
        let mut out = [[Complex::zero(); 4]; 4];
        for m in 0..4 {
            let col = self.qmul(&Self::unit(m)).to_array();
            for (row, value) in col.into_iter().enumerate() {
                out[row][m] = value;
            }
        }
        out
    }
}

impl<T: Real> Biquaternion<T> {
    /// Euclidean norm of the eight real coordinates.
    pub fn norm(&self) -> T {
        self.to_array()
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.to_array()
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|z| z.is_zero())
    }

    /// Scale-aware threshold `1e-12 · (1 + max|ak|²)` below which `|a·ā|`
    /// counts as zero.
    pub fn zero_divisor_tolerance(&self) -> T {
        let m = self.max_abs();
        T::lit(1e-12) * (T::one() + m * m)
    }

    /// Whether `a` is a nonzero element with `a·ā = 0`. Zero itself is
    /// neither a zero divisor nor invertible.
    pub fn is_zero_divisor(&self) -> bool {
        !self.is_zero() && self.norm_form().norm() <= self.zero_divisor_tolerance()
    }

    /// Inverse `ā / (a·ā)`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_form();
        if n.norm() <= self.zero_divisor_tolerance() {
            return Err(Error::ZeroDivisor {
                magnitude: n.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.conj().scale(n.inv()))
    }
}

impl<T: Ring> Add for Biquaternion<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a0 + rhs.a0, self.a1 + rhs.a1, self.a2 + rhs.a2, self.a3 + rhs.a3)
    }
}

impl<T: Ring> Sub for Biquaternion<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a0 - rhs.a0, self.a1 - rhs.a1, self.a2 - rhs.a2, self.a3 - rhs.a3)
    }
}

impl<T: Ring> Neg for Biquaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl<T: Ring> AddAssign for Biquaternion<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Ring> Mul for Biquaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.qmul(&rhs)
    }
}

impl<T: Ring> Mul<Complex<T>> for Biquaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Complex<T>) -> Self {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;
    type Q = Biquaternion<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    /// Structure constants of ℍ: `ia ib = sign · i_idx`.
    fn unit_product(a: usize, b: usize) -> (i64, usize) {
        const TABLE: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        TABLE[a][b]
    }

    fn structure_mul(a: &Q, b: &Q) -> Q {
        let (x, y) = (a.to_array(), b.to_array());
        let mut out = [C::zero(); 4];
        for p in 0..4 {
            for q in 0..4 {
                let (s, k) = unit_product(p, q);
                out[k] += x[p] * y[q] * s as f64;
            }
        }
        Q::from_array(out)
    }

    fn rel_err(a: &Q, b: &Q) -> f64 {
        (*a - *b).norm() / (1.0 + a.norm().max(b.norm()))
    }

    fn arb_complex() -> impl Strategy<Value = C> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(re, im)| c(re, im))
    }

    fn arb_quat() -> impl Strategy<Value = Q> {
        prop::array::uniform4(arb_complex()).prop_map(Q::from_array)
    }

    #[test]
    fn unit_table_exact_over_integers() {
        type Qi = Biquaternion<i64>;
        for a in 0..4 {
            for b in 0..4 {
                let (s, k) = unit_product(a, b);
                let expected = Qi::unit(k).scale(Complex::new(s, 0));
                assert_eq!(Qi::unit(a) * Qi::unit(b), expected, "i{a} i{b}");
            }
        }
        assert_eq!(Qi::unit(1) * Qi::unit(2), Qi::unit(3));
        assert_eq!(Qi::unit(2) * Qi::unit(1), -Qi::unit(3));
    }

    #[test]
    fn product_examples() {
        let a = Q::from_real([1.0, 3.0, -2.0, 0.5]).scale(c(0.0, 1.0)) + Q::unit(2);
        assert_eq!(a * Q::one(), a);
        assert_eq!(Q::one() * a, a);
        // (1 + i1)(1 + i2) = 1 + i1 + i2 + i1 i2
        let lhs = (Q::one() + Q::unit(1)) * (Q::one() + Q::unit(2));
        assert_eq!(lhs, Q::from_real([1.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(Q::unit(1).conj(), -Q::unit(1));
        let a = Q::from_real([3.0, 0.0, 2.0, 0.0]);
        assert_eq!(a.conj(), Q::from_real([3.0, 0.0, -2.0, 0.0]));
        // a = 1 + i·i1 is a zero divisor
        let z = Q::new(c(1.0, 0.0), c(0.0, 1.0), C::zero(), C::zero());
        assert_eq!(z * z.conj(), Q::zero());
    }

    #[test]
    fn zero_divisor_classification() {
        let z = Q::new(c(1.0, 0.0), c(0.0, 1.0), C::zero(), C::zero());
        assert!(z.is_zero_divisor());
        assert!(!Q::unit(1).is_zero_divisor());
        assert!(!Q::zero().is_zero_divisor());
        assert!(matches!(z.inv(), Err(Error::ZeroDivisor { .. })));
        assert!(matches!(Q::zero().inv(), Err(Error::ZeroDivisor { .. })));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Q::unit(1).inv().unwrap(), -Q::unit(1));
        assert_eq!(Q::from_real([2.0, 0.0, 0.0, 0.0]).inv().unwrap(), Q::from_real([0.5, 0.0, 0.0, 0.0]));
        let inv = (Q::one() + Q::unit(1)).inv().unwrap();
        assert!(rel_err(&inv, &Q::from_real([0.5, -0.5, 0.0, 0.0])) < 1e-15);
        assert!(rel_err(&((Q::one() + Q::unit(1)) * inv), &Q::one()) < 1e-15);
    }

    #[test]
    fn bilinear_forms() {
        let e1 = ComplexVector3::<f64>::from_real([1.0, 0.0, 0.0]);
        let e2 = ComplexVector3::<f64>::from_real([0.0, 1.0, 0.0]);
        assert_eq!(e1.dot(&e2), C::zero());
        assert_eq!(e1.cross(&e2), ComplexVector3::from_real([0.0, 0.0, 1.0]));
        let iv = ComplexVector3::new(c(0.0, 1.0), C::zero(), C::zero());
        assert_eq!(iv.dot(&iv), c(-1.0, 0.0));
    }

    #[test]
    fn vector_embedding_roundtrip() {
        let v = ComplexVector3::new(c(1.0, 2.0), c(-3.0, 0.5), c(0.0, -1.0));
        let q = v.to_biquaternion();
        assert_eq!(q.sc(), C::zero());
        assert_eq!(q.vec(), v);
        let a = Q::new(c(1.0, 1.0), c(2.0, 0.0), c(0.0, 3.0), c(4.0, -4.0));
        assert_eq!(Q::from_parts(a.sc(), a.vec()), a);
    }

    #[test]
    fn left_mul_matrix_columns() {
        let k = Q::new(c(0.3, -1.0), c(2.0, 0.1), c(-0.7, 0.0), c(0.0, 1.5));
        let b = Q::new(c(1.0, 2.0), c(-1.0, 0.5), c(0.25, 0.0), c(3.0, -2.0));
        let m = k.left_mul_matrix();
        let bb = b.to_array();
        let mut out = [C::zero(); 4];
        for (r, row) in m.iter().enumerate() {
            for (col, entry) in row.iter().enumerate() {
                out[r] += entry * bb[col];
            }
        }
        assert!(rel_err(&Q::from_array(out), &(k * b)) < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        type Q32 = Biquaternion<f32>;
        let p = Q32::unit(3) * Q32::unit(1);
        assert_eq!(p, Q32::unit(2));
        assert!((Q32::from_real([0.0, 0.0, 4.0, 0.0]).inv().unwrap().a2.im - 0.0).abs() < 1e-7);
    }

    proptest! {
        #[test]
        fn vector_formula_matches_structure_constants(a in arb_quat(), b in arb_quat()) {
            prop_assert!(rel_err(&(a * b), &structure_mul(&a, &b)) < 1e-14);
        }

        #[test]
        fn associativity(a in arb_quat(), b in arb_quat(), d in arb_quat()) {
            let lhs = (a * b) * d;
            let rhs = a * (b * d);
            prop_assert!((lhs - rhs).norm() / lhs.norm().max(1.0) < 1e-12);
        }

        #[test]
        fn conjugation_reverses_products(a in arb_quat(), b in arb_quat()) {
            prop_assert!(rel_err(&(a * b).conj(), &(b.conj() * a.conj())) < 1e-12);
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn norm_form_is_scalar(a in arb_quat()) {
            let p = a * a.conj();
            prop_assert!(p.vec().norm() <= 1e-13 * a.norm() * a.norm());
            prop_assert!((p.sc() - a.norm_form()).norm() <= 1e-13 * a.norm() * a.norm());
        }

        #[test]
        fn inverse_is_two_sided(a in arb_quat()) {
            prop_assume!(!a.is_zero_divisor() && a.norm_form().norm() > 1e-3);
            let inv = a.inv().unwrap();
            let scale = a.norm() * inv.norm();
            prop_assert!((a * inv - Q::one()).norm() < 1e-12 * scale);
            prop_assert!((inv * a - Q::one()).norm() < 1e-12 * scale);
        }
    }
}
