//! Closed-form radial profiles with exact derivatives.
//!
//! Test fields are built as `f(r)/√r · φ_k(θ)`; having `f′` in closed form
//! keeps finite-difference error out of identity checks.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{input, Result};
use crate::scalar::Real;

/// A complex radial function on `(0, ∞)` with an exact first derivative.
pub trait RadialProfile<T: Real>: Send + Sync {
    fn value(&self, r: T) -> Complex<T>;
    fn derivative(&self, r: T) -> Complex<T>;
}

/// `A · r^m · e^{−c r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerExp<T> {
    pub amplitude: Complex<T>,
    pub power: T,
    pub decay: T,
}

impl<T: Real> PowerExp<T> {
    pub fn new(amplitude: Complex<T>, power: T, decay: T) -> Self {
        Self { amplitude, power, decay }
    }

    /// `e^{−r}`.
    pub fn exp_decay() -> Self {
        Self::new(Complex::new(T::one(), T::zero()), T::zero(), T::one())
    }
}

impl<T: Real> RadialProfile<T> for PowerExp<T> {
    fn value(&self, r: T) -> Complex<T> {
        self.amplitude * (r.powf(self.power) * (-self.decay * r).exp())
    }

    fn derivative(&self, r: T) -> Complex<T> {
        self.value(r) * (self.power / r - self.decay)
    }
}

/// `A · w(r) · r^m · e^{−r}` with the polynomial window
/// `w(r) = ((r − a)(b − r) / ((b − a)/2)²)^p` on `[a, b]`, zero elsewhere.
///
/// The window has `p − 1` continuous derivatives at the support edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Windowed<T> {
    pub a: T,
    pub b: T,
    pub smoothness: i32,
    pub power: T,
    pub amplitude: Complex<T>,
}

impl<T: Real> Windowed<T> {
    pub const DEFAULT_SMOOTHNESS: i32 = 3;

    pub fn new(a: T, b: T, power: T, amplitude: Complex<T>) -> Result<Self> {
        if !(a > T::zero() && a < b && b.is_finite()) {
            return input(format!("window support must satisfy 0 < a < b, got [{a}, {b}]"));
        }
        Ok(Self { a, b, smoothness: Self::DEFAULT_SMOOTHNESS, power, amplitude })
    }

    pub fn support(&self) -> (T, T) {
        (self.a, self.b)
    }

    fn inside(&self, r: T) -> bool {
        r > self.a && r < self.b
    }

    fn window(&self, r: T) -> T {
        let half = (self.b - self.a) * T::half();
        ((r - self.a) * (self.b - r) / (half * half)).powi(self.smoothness)
    }
}

impl<T: Real> RadialProfile<T> for Windowed<T> {
    fn value(&self, r: T) -> Complex<T> {
        if !self.inside(r) {
            return Complex::zero();
        }
        self.amplitude * (self.window(r) * r.powf(self.power) * (-r).exp())
    }

    fn derivative(&self, r: T) -> Complex<T> {
        if !self.inside(r) {
            return Complex::zero();
        }
        let p = T::count(self.smoothness as i64);
        let log_deriv =
            p * (T::one() / (r - self.a) - T::one() / (self.b - r)) + self.power / r - T::one();
        self.value(r) * log_deriv
    }
}

/// Identically zero profile.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZeroProfile;

impl<T: Real> RadialProfile<T> for ZeroProfile {
    fn value(&self, _r: T) -> Complex<T> {
        Complex::zero()
    }

    fn derivative(&self, _r: T) -> Complex<T> {
        Complex::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd<P: RadialProfile<f64>>(p: &P, r: f64) -> Complex<f64> {
        let h = 1e-5;
        (p.value(r + h) - p.value(r - h)) / (2.0 * h)
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let pe = PowerExp::new(Complex::new(0.3, -1.2), 1.5, 0.7);
        let w = Windowed::new(0.4, 3.1, 1.0, Complex::new(2.0, 0.5)).unwrap();
        for &r in &[0.5, 1.0, 1.7, 2.9] {
            assert!((pe.derivative(r) - fd(&pe, r)).norm() < 1e-8);
            assert!((w.derivative(r) - fd(&w, r)).norm() < 1e-7);
        }
        assert_eq!(w.value(0.3), Complex::zero());
        assert_eq!(w.derivative(3.2), Complex::zero());
    }

    #[test]
    fn window_peaks_at_one() {
        let w = Windowed::new(1.0f64, 3.0, 0.0, Complex::new(1.0, 0.0)).unwrap();
        assert!((w.window(2.0) - 1.0).abs() < 1e-15);
        assert!(Windowed::new(2.0, 1.0, 0.0, Complex::new(1.0, 0.0)).is_err());
    }
}
