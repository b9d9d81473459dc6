//! The spin-orbit operator `J_ω φ = −iσ₃φ′ + φ/2` on `(−ω, ω)` with the
//! boundary conditions `φ₂(±ω) = −e^{±iω} φ₁(±ω)`.
//!
//! Eigenpairs are available in closed form; an independent route integrates
//! the eigenvalue ODE numerically and locates the zeros of the boundary
//! determinant by bracketing and bisection.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{e_rad, phase, sigma_dot, ComplexMatrix2, Spinor};
use crate::error::{input, numeric, Result};
use crate::geometry::{Side, WedgeGeometry};
use crate::ode::rk4;
use crate::quadrature::GaussLegendre;
use crate::scalar::Real;

/// `λ_k = πk/(2ω)`.
pub fn eigenvalue<T: Real>(geom: &WedgeGeometry<T>, k: i64) -> T {
    T::PI() * T::count(k) / (T::lit(2.0) * geom.omega())
}

/// `(−1)^{k+1}`.
pub fn mode_sign<T: Real>(k: i64) -> T {
    if k.rem_euclid(2) == 0 {
        -T::one()
    } else {
        T::one()
    }
}

/// Normalised eigenfunction `φ_k` of `J_ω` together with its eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularMode<T> {
    pub k: i64,
    pub lambda: T,
    pub geometry: WedgeGeometry<T>,
}

impl<T: Real> AngularMode<T> {
    pub fn new(geometry: WedgeGeometry<T>, k: i64) -> Self {
        Self { k, lambda: eigenvalue(&geometry, k), geometry }
    }

    fn amplitude(&self) -> T {
        T::one() / (T::lit(2.0) * self.geometry.omega().sqrt())
    }

    /// `φ_k(θ)` without the domain check; the closed form extends smoothly.
    pub fn eval(&self, theta: T) -> Spinor<T> {
        let a = self.amplitude();
        let arg = (self.lambda - T::half()) * theta;
        Spinor::new(phase(arg) * a, phase(-arg) * (a * mode_sign::<T>(self.k)))
    }

    /// `φ_k′(θ)`.
    pub fn derivative(&self, theta: T) -> Spinor<T> {
        let m = self.lambda - T::half();
        let v = self.eval(theta);
        Spinor::new(v[0] * Complex::new(T::zero(), m), v[1] * Complex::new(T::zero(), -m))
    }

    /// `|φ₂(±ω) + e^{±iω} φ₁(±ω)|` on the requested endpoint.
    pub fn boundary_residual(&self, side: Side) -> T {
        let t = self.geometry.boundary_angle(side);
        let v = self.eval(t);
        (v[1] + phase(t) * v[0]).norm()
    }
}

/// `φ_k(θ)` for `θ ∈ [−ω, ω]`.
pub fn phi<T: Real>(geom: &WedgeGeometry<T>, k: i64, theta: T) -> Result<Spinor<T>> {
    check_angle(geom, theta)?;
    Ok(AngularMode::new(*geom, k).eval(theta))
}

fn check_angle<T: Real>(geom: &WedgeGeometry<T>, theta: T) -> Result<()> {
    if !(theta.abs() <= geom.omega()) {
        return input(format!("angle {theta} outside [−ω, ω] with ω = {}", geom.omega()));
    }
    Ok(())
}

/// Closed-form boundary determinant `Δ(λ) = 2i sin(2λω)`.
pub fn secular_closed<T: Real>(geom: &WedgeGeometry<T>, lambda: T) -> Complex<T> {
    Complex::new(T::zero(), T::lit(2.0) * (T::lit(2.0) * lambda * geom.omega()).sin())
}

/// RK4 step count for the angular ODE at spectral parameter `λ`.
///
/// Starts from `1024` steps across `(−ω, ω)` and doubles until the RK4 phase
/// error estimate `x⁵/(120 n⁴)`, `x = 2ω|λ − ½|`, is below `1e-11`.
fn secular_steps<T: Real>(geom: &WedgeGeometry<T>, lambda: T) -> usize {
    let x = (T::lit(2.0) * geom.omega() * (lambda - T::half()).abs()).to_f64().unwrap_or(0.0);
    let mut n = 1024usize;
    while n < (1 << 20) && x.powi(5) / (120.0 * (n as f64).powi(4)) > 1e-11 {
        n *= 2;
    }
    n
}

/// Boundary determinant from a numerically integrated fundamental system.
///
/// Solves `φ′ = iσ₃(λ − ½)φ` from `θ = −ω` with `Φ(−ω) = I` and evaluates
/// `det [[(e^{iω}, 1)·Φ(ω)], [(e^{−iω}, 1)]]`, the matrix of the two boundary
/// conditions acting on the initial vector. Its zeros are the eigenvalues;
/// it agrees with [`secular_closed`] up to a λ-independent factor.
pub fn secular_determinant<T: Real>(geom: &WedgeGeometry<T>, lambda: T) -> Complex<T> {
    let omega = geom.omega();
    let m = lambda - T::half();
    let rhs = |_t: T, y: &[Complex<T>; 2]| {
        [y[0] * Complex::new(T::zero(), m), y[1] * Complex::new(T::zero(), -m)]
    };
    let steps = secular_steps(geom, lambda);
    let (o, z) = (Complex::one(), Complex::zero());
    let col1 = rk4(rhs, -omega, omega, steps, [o, z]);
    let col2 = rk4(rhs, -omega, omega, steps, [z, o]);
    let plus = phase(omega);
    let minus = phase(-omega);
    let row_plus = [plus * col1[0] + col1[1], plus * col2[0] + col2[1]];
    let row_minus = [minus, o];
    ComplexMatrix2::new(row_plus[0], row_plus[1], row_minus[0], row_minus[1]).determinant()
}

/// Reference parameter `λ = 1/(4ω)` where `Δ(λ) = 2i sin(½) ≠ 0`.
fn normalisation_point<T: Real>(geom: &WedgeGeometry<T>) -> T {
    T::one() / (T::lit(4.0) * geom.omega())
}

/// [`secular_determinant`] rescaled to agree with [`secular_closed`] at
/// `λ = 1/(4ω)`.
pub fn secular_numeric<T: Real>(geom: &WedgeGeometry<T>, lambda: T) -> Result<Complex<T>> {
    let l0 = normalisation_point(geom);
    let reference = secular_determinant(geom, l0);
    if !(reference.norm() > T::zero()) || !reference.norm().is_finite() {
        return numeric("secular determinant vanished at the normalisation point");
    }
    let factor = secular_closed(geom, l0) / reference;
    let value = secular_determinant(geom, lambda) * factor;
    if !value.re.is_finite() || !value.im.is_finite() {
        return numeric(format!("secular determinant not finite at λ = {lambda}"));
    }
    Ok(value)
}

/// Real secular function for bracketing: the component of `Δ(λ)` along the
/// fixed complex direction `Δ(1/(4ω))`. `Δ(λ)` is a constant multiple of a
/// real function, so this loses no zeros.
struct RealSecular<'a, T: Real> {
    geom: &'a WedgeGeometry<T>,
    direction: Complex<T>,
}

impl<'a, T: Real> RealSecular<'a, T> {
    fn new(geom: &'a WedgeGeometry<T>) -> Result<Self> {
        let d0 = secular_determinant(geom, normalisation_point(geom));
        let n = d0.norm();
        if !(n > T::zero() && n.is_finite()) {
            return numeric("secular determinant vanished at the normalisation point");
        }
        Ok(Self { geom, direction: d0.conj() / n })
    }

    fn eval(&self, lambda: T) -> T {
        (secular_determinant(self.geom, lambda) * self.direction).re
    }
}

const MAX_REFINE_DEPTH: u32 = 6;

/// All eigenvalues of `J_ω` in `[−λ_max, λ_max]`, found without the closed
/// form: the interval is scanned with step `π/(8ω)` (a quarter of the
/// eigenvalue gap) and each sign change is refined to rounding level by regula falsi.
pub fn solve_modes_numeric<T: Real>(geom: &WedgeGeometry<T>, lambda_max: T) -> Result<Vec<T>> {
    if !(lambda_max > T::zero() && lambda_max.is_finite()) {
        return input(format!("lambda_max must be positive, got {lambda_max}"));
    }
    let g = RealSecular::new(geom)?;
    let nominal = T::PI() / (T::lit(8.0) * geom.omega());
    let n = (T::lit(2.0) * lambda_max / nominal).ceil().to_usize().unwrap_or(1).max(1);
    let h = T::lit(2.0) * lambda_max / T::count(n as i64);
    let xs: Vec<T> = (0..=n).map(|i| -lambda_max + h * T::count(i as i64)).collect();
    let gs: Vec<T> = xs.iter().map(|&x| g.eval(x)).collect();
    let scale = gs.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() {
        return numeric("secular function vanishes on the whole scan");
    }
    let mut roots = Vec::new();
    for i in 0..n {
        if gs[i] == T::zero() {
            roots.push(xs[i]);
            continue;
        }
        find_in_bracket(&g, xs[i], xs[i + 1], gs[i], gs[i + 1], scale, 0, &mut roots)?;
    }
    // endpoint roots are kept when the scan lands on them up to rounding
    let endpoint_tol = T::lit(1e-9) * scale;
    if gs[0] != T::zero() && gs[0].abs() <= endpoint_tol && (gs[0] < T::zero()) == (gs[1] < T::zero()) {
        roots.push(xs[0]);
    }
    if gs[n] == T::zero() || (gs[n].abs() <= endpoint_tol && (gs[n] < T::zero()) == (gs[n - 1] < T::zero())) {
        roots.push(xs[n]);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    Ok(roots)
}

#[allow(clippy::too_many_arguments)]
fn find_in_bracket<T: Real>(
    g: &RealSecular<'_, T>,
    a: T,
    b: T,
    ga: T,
    gb: T,
    scale: T,
    depth: u32,
    roots: &mut Vec<T>,
) -> Result<()> {
    if gb == T::zero() {
        // picked up as the left end of the next bracket
        return Ok(());
    }
    if (ga < T::zero()) != (gb < T::zero()) {
        roots.push(bisect(g, a, b, ga)?);
        return Ok(());
    }
    let m = (a + b) * T::half();
    let gm = g.eval(m);
    let dip = gm.abs() < ga.abs().min(gb.abs());
    if (gm < T::zero()) != (ga < T::zero()) || gm == T::zero() {
        if depth >= MAX_REFINE_DEPTH {
            return numeric(format!("unresolved root pair in [{a}, {b}]"));
        }
        if gm == T::zero() {
            roots.push(m);
            return Ok(());
        }
        find_in_bracket(g, a, m, ga, gm, scale, depth + 1, roots)?;
        return find_in_bracket(g, m, b, gm, gb, scale, depth + 1, roots);
    }
    if dip {
        if depth >= MAX_REFINE_DEPTH {
            if gm.abs() < T::lit(1e-6) * scale {
                return numeric(format!("sign-preserving touch point near λ = {m}"));
            }
            return Ok(());
        }
        find_in_bracket(g, a, m, ga, gm, scale, depth + 1, roots)?;
        return find_in_bracket(g, m, b, gm, gb, scale, depth + 1, roots);
    }
    Ok(())
}

/// Root of `g` in a sign-changing bracket by the Illinois variant of
/// regula falsi, refined until the bracket or the last step reaches
/// rounding level.
fn bisect<T: Real>(g: &RealSecular<'_, T>, mut a: T, mut b: T, mut ga: T) -> Result<T> {
    let mut gb = g.eval(b);
    let mut side = 0i8;
    let mut x = a;
    for _ in 0..200 {
        let tol = T::lit(4.0) * T::epsilon() * a.abs().max(b.abs()).max(T::one());
        let prev = x;
        x = b - gb * (b - a) / (gb - ga);
        if !(x > a && x < b) {
            x = (a + b) * T::half();
        }
        let gx = g.eval(x);
        if gx == T::zero() || (b - a) <= tol || (x - prev).abs() <= tol {
            return Ok(x);
        }
        if (gx < T::zero()) == (ga < T::zero()) {
            a = x;
            ga = gx;
            if side == -1 {
                gb = gb * T::half();
            }
            side = -1;
        } else {
            b = x;
            gb = gx;
            if side == 1 {
                ga = ga * T::half();
            }
            side = 1;
        }
    }
    numeric("root refinement did not converge")
}

/// Uniform samples of a `ℂ²`-valued function on `[−ω, ω]`.
#[derive(Debug, Clone)]
pub struct AngularSamples<T> {
    pub start: T,
    pub step: T,
    pub values: Vec<Spinor<T>>,
}

impl<T: Real> AngularSamples<T> {
    /// `n` equispaced samples including both endpoints.
    pub fn from_fn<F: FnMut(T) -> Spinor<T>>(geom: &WedgeGeometry<T>, n: usize, mut f: F) -> Self {
        let omega = geom.omega();
        let step = if n > 1 { T::lit(2.0) * omega / T::count(n as i64 - 1) } else { T::zero() };
        let values = (0..n).map(|i| f(-omega + step * T::count(i as i64))).collect();
        Self { start: -omega, step, values }
    }

    pub fn theta(&self, i: usize) -> T {
        self.start + self.step * T::count(i as i64)
    }
}

/// `J_ω φ = −iσ₃φ′ + φ/2` by second-order finite differences (central in
/// the interior, one-sided three-point at the ends).
pub fn apply_j<T: Real>(samples: &AngularSamples<T>) -> Result<Vec<Spinor<T>>> {
    let v = &samples.values;
    let n = v.len();
    if n < 3 {
        return input(format!("need at least 3 angular samples, got {n}"));
    }
    if !(samples.step > T::zero()) {
        return input("angular sample spacing must be positive");
    }
    let h = samples.step;
    let two_h = T::lit(2.0) * h;
    let deriv = |i: usize| -> Spinor<T> {
        if i == 0 {
            (v[0] * T::lit(-3.0) + v[1] * T::lit(4.0) - v[2]) * (T::one() / two_h)
        } else if i == n - 1 {
            (v[n - 1] * T::lit(3.0) - v[n - 2] * T::lit(4.0) + v[n - 3]) * (T::one() / two_h)
        } else {
            (v[i + 1] - v[i - 1]) * (T::one() / two_h)
        }
    };
    let minus_i = Complex::new(T::zero(), -T::one());
    Ok((0..n)
        .map(|i| {
            let d = deriv(i);
            // −iσ₃ d = (−i d₁, +i d₂)
            Spinor::new(d[0] * minus_i, -(d[1] * minus_i)) + v[i] * T::half()
        })
        .collect())
}

/// Result of comparing `(σ·e_rad(θ))φ_k` with `(−1)^{k+1}φ_{−k}(θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialConjugation<T> {
    pub value: Spinor<T>,
    pub expected: Spinor<T>,
    pub residual: T,
}

pub fn sigma_rad_conjugate<T: Real>(
    geom: &WedgeGeometry<T>,
    k: i64,
    theta: T,
) -> Result<RadialConjugation<T>> {
    check_angle(geom, theta)?;
    let value = sigma_dot(e_rad(theta)) * AngularMode::new(*geom, k).eval(theta);
    let expected = AngularMode::new(*geom, -k).eval(theta) * mode_sign::<T>(k);
    Ok(RadialConjugation { value, expected, residual: (value - expected).max_abs() })
}

/// Gram matrix `G[a][b] = (φ_{k_a}, φ_{k_b})` for `k_a, k_b ∈ {−k_max, …, k_max}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    pub kmax: i64,
    pub entries: Vec<Vec<Complex<T>>>,
}

impl<T: Real> GramMatrix<T> {
    pub fn get(&self, k: i64, j: i64) -> Complex<T> {
        self.entries[(k + self.kmax) as usize][(j + self.kmax) as usize]
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Largest entry of `|G − I|`.
    pub fn max_deviation_from_identity(&self) -> T {
        let mut worst = T::zero();
        for (a, row) in self.entries.iter().enumerate() {
            for (b, &g) in row.iter().enumerate() {
                let target = if a == b { Complex::one() } else { Complex::zero() };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

/// Default angular rule size for Gram matrices.
pub const GRAM_NODES: usize = 64;

pub fn gram_matrix<T: Real>(geom: &WedgeGeometry<T>, kmax: u32) -> GramMatrix<T> {
    gram_matrix_with_nodes(geom, kmax, GRAM_NODES).expect("positive node count")
}

pub fn gram_matrix_with_nodes<T: Real>(
    geom: &WedgeGeometry<T>,
    kmax: u32,
    nodes: usize,
) -> Result<GramMatrix<T>> {
    let rule = GaussLegendre::new(nodes)?;
    let omega = geom.omega();
    let kmax = kmax as i64;
    let pts: Vec<(T, T)> = rule.mapped(-omega, omega).collect();
    let samples: Vec<Vec<Spinor<T>>> = (-kmax..=kmax)
        .map(|k| {
            let mode = AngularMode::new(*geom, k);
            pts.iter().map(|&(t, _)| mode.eval(t)).collect()
        })
        .collect();
    let entries = samples
        .iter()
        .map(|sa| {
            samples
                .iter()
                .map(|sb| {
                    sa.iter()
                        .zip(sb)
                        .zip(&pts)
                        .fold(Complex::zero(), |acc, ((a, b), &(_, w))| acc + a.dot(b) * w)
                })
                .collect()
        })
        .collect();
    Ok(GramMatrix { kmax, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn geom(omega: f64) -> WedgeGeometry<f64> {
        WedgeGeometry::new(omega).unwrap()
    }

    #[test]
    fn eigenvalue_formula() {
        assert!((eigenvalue(&geom(FRAC_PI_4), 1) - 2.0).abs() < 1e-15);
        assert_eq!(eigenvalue(&geom(1.3), 0), 0.0);
        assert!((eigenvalue(&geom(FRAC_PI_2), 3) - 3.0).abs() < 1e-15);
        assert_eq!(eigenvalue(&geom(1.3), -4), -eigenvalue(&geom(1.3), 4));
    }

    #[test]
    fn phi_values_on_half_plane() {
        let g = geom(FRAC_PI_2);
        let s = 1.0 / (2.0 * PI).sqrt();
        let p0 = phi(&g, 0, 0.0).unwrap();
        assert!((p0[0].re - s).abs() < 1e-15 && (p0[1].re + s).abs() < 1e-15);
        assert!((s - 0.398942).abs() < 1e-6);
        let p1 = phi(&g, 1, 0.0).unwrap();
        assert!((p1[0].re - s).abs() < 1e-15 && (p1[1].re - s).abs() < 1e-15);
    }

    #[test]
    fn phi_rejects_angles_outside_interval() {
        let g = geom(1.0);
        assert!(phi(&g, 0, 1.0 + 1e-12).is_err());
        assert!(phi(&g, 0, -1.0).is_ok());
        assert!(phi(&g, 0, f64::NAN).is_err());
    }

    #[test]
    fn phi_satisfies_boundary_conditions() {
        for &omega in &[PI / 6.0, 1.0, 2.9] {
            for k in -10..=10 {
                let m = AngularMode::new(geom(omega), k);
                for side in Side::BOTH {
                    assert!(m.boundary_residual(side) < 1e-14, "ω={omega} k={k}");
                }
            }
        }
    }

    #[test]
    fn phi_pointwise_norm() {
        let g = geom(0.8);
        for k in -5..=5 {
            for i in 0..11 {
                let t = -0.8 + 0.16 * i as f64;
                let v = phi(&g, k, t).unwrap();
                assert!((v.norm_sqr() - 1.0 / 1.6).abs() < 1e-14);
                assert!((v[0].norm() - v[1].norm()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn secular_closed_values() {
        let v = secular_closed(&geom(FRAC_PI_4), 1.0);
        assert!(v.re.abs() < 1e-15 && (v.im - 2.0).abs() < 1e-15);
        let v = secular_closed(&geom(FRAC_PI_2), 0.5);
        assert!((v.im - 2.0).abs() < 1e-15);
        let g = geom(1.1);
        for k in -5..=5 {
            assert!(secular_closed(&g, eigenvalue(&g, k)).norm() < 1e-13);
        }
    }

    #[test]
    fn secular_numeric_matches_closed_form() {
        let g = geom(FRAC_PI_4);
        let v = secular_numeric(&g, 1.0).unwrap();
        assert!((v - Complex::new(0.0, 2.0)).norm() < 1e-8);
        for &omega in &[0.4, 1.0, 2.2] {
            let g = geom(omega);
            assert!(secular_numeric(&g, 0.0).unwrap().norm() < 1e-10);
            for i in 0..20 {
                let l = -6.0 + 0.61 * i as f64;
                let d = secular_numeric(&g, l).unwrap() - secular_closed(&g, l);
                assert!(d.norm() < 1e-8, "ω={omega} λ={l}: {d}");
            }
        }
    }

    #[test]
    fn numeric_roots_half_plane() {
        let roots = solve_modes_numeric(&geom(FRAC_PI_2), 3.5).unwrap();
        let expected: Vec<f64> = (-3..=3).map(|k| k as f64).collect();
        assert_eq!(roots.len(), expected.len(), "{roots:?}");
        for (r, e) in roots.iter().zip(&expected) {
            assert!((r - e).abs() < 1e-8);
        }
        let roots = solve_modes_numeric(&geom(FRAC_PI_2), 5.0).unwrap();
        assert_eq!(roots.len(), 11);
    }

    #[test]
    fn numeric_roots_narrow_and_wide_wedges() {
        let roots = solve_modes_numeric(&geom(PI / 6.0), 4.0).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([-3.0, 0.0, 3.0]) {
            assert!((r - e).abs() < 1e-8);
        }
        let roots = solve_modes_numeric(&geom(PI - 1e-9), 1.2).unwrap();
        assert_eq!(roots.len(), 5);
        for (r, e) in roots.iter().zip([-1.0, -0.5, 0.0, 0.5, 1.0]) {
            assert!((r - e).abs() < 1e-8, "{r} vs {e}");
        }
    }

    #[test]
    fn solve_rejects_nonpositive_range() {
        assert!(solve_modes_numeric(&geom(1.0), 0.0).is_err());
    }

    #[test]
    fn apply_j_on_constant_and_modes() {
        let g = geom(1.2);
        let c = AngularSamples::from_fn(&g, 50, |_| Spinor::new(Complex::new(1.0, 0.0), Complex::zero()));
        for v in apply_j(&c).unwrap() {
            assert!((v[0] - Complex::new(0.5, 0.0)).norm() < 1e-14 && v[1].norm() < 1e-14);
        }
        let mut errs = Vec::new();
        for n in [201, 401] {
            let mode = AngularMode::new(g, 2);
            let s = AngularSamples::from_fn(&g, n, |t| mode.eval(t));
            let jv = apply_j(&s).unwrap();
            let err = jv
                .iter()
                .zip(&s.values)
                .map(|(a, b)| (*a - *b * mode.lambda).max_abs())
                .fold(0.0, f64::max);
            errs.push(err);
        }
        // second order: halving h quarters the error
        assert!(errs[1] < errs[0] / 3.5, "{errs:?}");
        let mode0 = AngularMode::new(g, 0);
        let s = AngularSamples::from_fn(&g, 401, |t| mode0.eval(t));
        let res = apply_j(&s).unwrap().iter().map(Spinor::max_abs).fold(0.0, f64::max);
        assert!(res < 1e-4);
        let short = AngularSamples { start: 0.0, step: 0.1, values: vec![Spinor::zero(); 2] };
        assert!(apply_j(&short).is_err());
    }

    #[test]
    fn radial_conjugation_examples() {
        let g = geom(FRAC_PI_2);
        let c0 = sigma_rad_conjugate(&g, 0, 0.0).unwrap();
        let s = 1.0 / (2.0 * PI).sqrt();
        assert!((c0.value[0].re + s).abs() < 1e-15 && (c0.value[1].re - s).abs() < 1e-15);
        let p0 = phi(&g, 0, 0.0).unwrap();
        assert!((c0.value + p0).max_abs() < 1e-15);
        for &t in &[-1.2, 0.3, 1.5] {
            let c1 = sigma_rad_conjugate(&g, 1, t).unwrap();
            assert!((c1.value - phi(&g, -1, t).unwrap()).max_abs() < 1e-15);
            let c2 = sigma_rad_conjugate(&g, 2, t).unwrap();
            assert!((c2.value + phi(&g, -2, t).unwrap()).max_abs() < 1e-15);
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        let gm = gram_matrix(&geom(FRAC_PI_2), 5);
        assert_eq!(gm.dim(), 11);
        assert!(gm.max_deviation_from_identity() < 1e-10);
        for k in 1..=5 {
            assert!(gm.get(k, -k).norm() < 1e-10);
        }
    }
}
