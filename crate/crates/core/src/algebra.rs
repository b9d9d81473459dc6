//! Pauli algebra, two-component spinors and the polar moving frame.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::scalar::Real;

/// A point or direction in the plane.
pub type Vec2<T> = [T; 2];

/// Complex two-component spinor `(u₁, u₂)ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Spinor<T>(pub [Complex<T>; 2]);

impl<T: Real> Spinor<T> {
    pub fn new(u1: Complex<T>, u2: Complex<T>) -> Self {
        Spinor([u1, u2])
    }

    pub fn zero() -> Self {
        Spinor([Complex::zero(), Complex::zero()])
    }

    pub fn upper(&self) -> Complex<T> {
        self.0[0]
    }

    pub fn lower(&self) -> Complex<T> {
        self.0[1]
    }

    /// `u · conj(v)`; linear in `self`, conjugate-linear in `other`.
    pub fn dot(&self, other: &Self) -> Complex<T> {
        self.0[0] * other.0[0].conj() + self.0[1] * other.0[1].conj()
    }

    pub fn norm_sqr(&self) -> T {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Spinor([self.0[0].conj(), self.0[1].conj()])
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Spinor([self.0[0] * c, self.0[1] * c])
    }

    pub fn scale_real(&self, c: T) -> Self {
        Spinor([self.0[0] * c, self.0[1] * c])
    }

    /// Largest componentwise modulus, the sup-norm used by residual checks.
    pub fn max_abs(&self) -> T {
        self.0[0].norm().max(self.0[1].norm())
    }
}

impl<T: Real> Index<usize> for Spinor<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.0[i]
    }
}

impl<T: Real> Add for Spinor<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Spinor([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1]])
    }
}

impl<T: Real> AddAssign for Spinor<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Sub for Spinor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Spinor([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1]])
    }
}

impl<T: Real> Neg for Spinor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Spinor([-self.0[0], -self.0[1]])
    }
}

impl<T: Real> Mul<Complex<T>> for Spinor<T> {
    type Output = Self;
    fn mul(self, c: Complex<T>) -> Self {
        self.scale(c)
    }
}

impl<T: Real> Mul<T> for Spinor<T> {
    type Output = Self;
    fn mul(self, c: T) -> Self {
        self.scale_real(c)
    }
}

/// Dense complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Real> ComplexMatrix2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        ComplexMatrix2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex::one(), Complex::zero());
        Self::new(o, z, z, o)
    }

    pub fn zero() -> Self {
        let z = Complex::zero();
        Self::new(z, z, z, z)
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.0[row][col]
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let m = &self.0;
        Self::new(m[0][0] * c, m[0][1] * c, m[1][0] * c, m[1][1] * c)
    }

    pub fn apply(&self, v: &Spinor<T>) -> Spinor<T> {
        let m = &self.0;
        Spinor([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    }

    pub fn determinant(&self) -> Complex<T> {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }
}

impl<T: Real> Add for ComplexMatrix2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Self::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl<T: Real> Mul for ComplexMatrix2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<T: Real> Mul<Spinor<T>> for ComplexMatrix2<T> {
    type Output = Spinor<T>;
    fn mul(self, v: Spinor<T>) -> Spinor<T> {
        self.apply(&v)
    }
}

/// Pauli matrix `σ_j`, `j ∈ {1, 2, 3}`.
pub fn pauli<T: Real>(j: usize) -> Result<ComplexMatrix2<T>> {
    let (o, z, i) = (Complex::one(), Complex::zero(), Complex::i());
    match j {
        1 => Ok(ComplexMatrix2::new(z, o, o, z)),
        2 => Ok(ComplexMatrix2::new(z, -i, i, z)),
        3 => Ok(ComplexMatrix2::new(o, z, z, -o)),
        _ => input(format!("Pauli index must be 1, 2 or 3, got {j}")),
    }
}

/// `σ₃`, used on its own by the spin-orbit operator and valley conjugation.
pub fn sigma3<T: Real>() -> ComplexMatrix2<T> {
    pauli(3).expect("index 3 is valid")
}

/// `σ·x = x₁σ₁ + x₂σ₂ = ((0, x₁ − i x₂), (x₁ + i x₂, 0))`.
pub fn sigma_dot<T: Real>(x: Vec2<T>) -> ComplexMatrix2<T> {
    let z = Complex::zero();
    ComplexMatrix2::new(z, Complex::new(x[0], -x[1]), Complex::new(x[0], x[1]), z)
}

/// Radial unit vector `(cos θ, sin θ)`.
pub fn e_rad<T: Real>(theta: T) -> Vec2<T> {
    [theta.cos(), theta.sin()]
}

/// Angular unit vector `(−sin θ, cos θ)`.
pub fn e_ang<T: Real>(theta: T) -> Vec2<T> {
    [-theta.sin(), theta.cos()]
}

/// `e^{iθ}`.
#[inline]
pub fn phase<T: Real>(theta: T) -> Complex<T> {
    Complex::from_polar(T::one(), theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pauli_matrices_match_their_definitions() {
        let s1 = pauli::<f64>(1).unwrap();
        assert_eq!(s1, ComplexMatrix2::new(c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)));
        let s3 = pauli::<f64>(3).unwrap();
        assert_eq!(s3, ComplexMatrix2::new(c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)));
        let s2 = pauli::<f64>(2).unwrap();
        assert_eq!(s2 * s2, ComplexMatrix2::identity());
    }

    #[test]
    fn pauli_rejects_bad_index() {
        assert!(pauli::<f64>(0).is_err());
        assert!(pauli::<f64>(4).is_err());
    }

    #[test]
    fn anticommutation_is_exact() {
        for i in 1..=3 {
            for j in 1..=3 {
                let (si, sj) = (pauli::<f64>(i).unwrap(), pauli::<f64>(j).unwrap());
                let lhs = sj * si + si * sj;
                let rhs = if i == j {
                    ComplexMatrix2::identity().scale(c(2., 0.))
                } else {
                    ComplexMatrix2::zero()
                };
                assert_eq!(lhs, rhs, "i = {i}, j = {j}");
            }
        }
    }

    #[test]
    fn sigma_dot_reduces_to_pauli_on_axes() {
        assert_eq!(sigma_dot([1.0, 0.0]), pauli(1).unwrap());
        assert_eq!(sigma_dot([0.0, 1.0]), pauli(2).unwrap());
    }

    #[test]
    fn sigma_dot_radial_has_phase_form() {
        for &theta in &[-2.5, -0.3, 0.0, 0.7, 1.9, 3.0] {
            let m = sigma_dot(e_rad(theta));
            let expected =
                ComplexMatrix2::new(c(0., 0.), phase(-theta), phase(theta), c(0., 0.));
            assert!(m.max_abs_diff(&expected) < 1e-15);
            assert!((m * m).max_abs_diff(&ComplexMatrix2::identity()) < 1e-15);
        }
    }

    #[test]
    fn moving_frame() {
        assert_eq!(e_rad(0.0), [1.0, 0.0]);
        assert_eq!(e_ang(0.0), [0.0, 1.0]);
        let r = e_rad(FRAC_PI_2);
        assert!(r[0].abs() < 1e-16 && (r[1] - 1.0).abs() < 1e-16);
    }

    #[test]
    fn f32_algebra_works() {
        let s1 = pauli::<f32>(1).unwrap();
        assert_eq!(s1 * s1, ComplexMatrix2::identity());
    }
}
