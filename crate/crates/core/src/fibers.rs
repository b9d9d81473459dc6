//! Radial fiber operators and their deficiency indices.
//!
//! `d₀ψ = iψ′` on `H¹₀(ℝ₊)`, and for `k ≥ 1`
//!
//! ```text
//! d_k = (−1)^{k+1} [[0, −d/dr − γ/r], [d/dr − γ/r, 0]],   γ = πk/(2ω),
//! ```
//!
//! a radial Dirac operator with Coulomb-type coupling. The deficiency probe
//! decides `dim ker(d_k* ∓ i)` by integrating the defect equation inward
//! from large `r` along the solution that decays at infinity and reading off
//! its power-law exponent at the origin.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::angular::{eigenvalue, mode_sign};
use crate::error::{input, numeric, Result};
use crate::geometry::WedgeGeometry;
use crate::ode::Dopri5;
use crate::profiles::RadialProfile;
use crate::scalar::Real;

/// Samples of a scalar radial function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSamples<T> {
    pub r: Vec<T>,
    pub values: Vec<Complex<T>>,
}

/// Samples of a `ℂ²`-valued radial function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialPairSamples<T> {
    pub r: Vec<T>,
    pub values: Vec<[Complex<T>; 2]>,
}

impl<T: Real> RadialSamples<T> {
    pub fn from_fn<F: FnMut(T) -> Complex<T>>(r: &[T], mut f: F) -> Self {
        Self { r: r.to_vec(), values: r.iter().map(|&x| f(x)).collect() }
    }

    pub fn from_profile<P: RadialProfile<T> + ?Sized>(r: &[T], p: &P) -> Self {
        Self::from_fn(r, |x| p.value(x))
    }
}

impl<T: Real> RadialPairSamples<T> {
    pub fn from_fn<F: FnMut(T) -> [Complex<T>; 2]>(r: &[T], mut f: F) -> Self {
        Self { r: r.to_vec(), values: r.iter().map(|&x| f(x)).collect() }
    }
}

/// `n` equispaced radii on `[a, b]`.
pub fn uniform_radii<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    let h = (b - a) / T::count(n.max(2) as i64 - 1);
    (0..n).map(|i| a + h * T::count(i as i64)).collect()
}

/// Second-order three-point derivative on a (possibly nonuniform) grid.
fn derivative<T: Real>(x: &[T], f: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = x.len();
    if n < 3 || f.len() != n {
        return input(format!("need at least 3 matching radial samples, got {n}"));
    }
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return input("radial samples must be strictly increasing");
    }
    let three_point = |i0: usize, at: usize| -> Complex<T> {
        // Lagrange derivative through x[i0..i0+3], evaluated at x[at]
        let (x0, x1, x2) = (x[i0], x[i0 + 1], x[i0 + 2]);
        let xa = x[at];
        let l0 = ((xa - x1) + (xa - x2)) / ((x0 - x1) * (x0 - x2));
        let l1 = ((xa - x0) + (xa - x2)) / ((x1 - x0) * (x1 - x2));
        let l2 = ((xa - x0) + (xa - x1)) / ((x2 - x0) * (x2 - x1));
        f[i0] * l0 + f[i0 + 1] * l1 + f[i0 + 2] * l2
    };
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                three_point(0, 0)
            } else if i == n - 1 {
                three_point(n - 3, n - 1)
            } else {
                three_point(i - 1, i)
            }
        })
        .collect())
}

/// `d₀ψ = iψ′` by finite differences.
pub fn apply_d0<T: Real>(psi: &RadialSamples<T>) -> Result<RadialSamples<T>> {
    let d = derivative(&psi.r, &psi.values)?;
    let i = Complex::i();
    Ok(RadialSamples { r: psi.r.clone(), values: d.into_iter().map(|v| v * i).collect() })
}

/// The fiber operator `d_k` for a fixed wedge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberOperator<T> {
    pub k: u32,
    pub gamma: T,
    pub sign: T,
    pub geometry: WedgeGeometry<T>,
}

impl<T: Real> FiberOperator<T> {
    pub fn new(geometry: WedgeGeometry<T>, k: u32) -> Self {
        let gamma = eigenvalue(&geometry, k as i64);
        Self { k, gamma, sign: mode_sign(k as i64), geometry }
    }

    /// `d_k` applied to `(Ψ₁, Ψ₂)` given values and derivatives at `r`.
    pub fn action(&self, r: T, psi: [Complex<T>; 2], dpsi: [Complex<T>; 2]) -> [Complex<T>; 2] {
        let g = self.gamma / r;
        let s = self.sign;
        [(-dpsi[1] - psi[1] * g) * s, (dpsi[0] - psi[0] * g) * s]
    }

    /// `d_k` applied to closed-form profiles with exact derivatives; for
    /// `k = 0` only the first profile is used and `d₀ψ = iψ′` is returned in
    /// the first slot.
    pub fn apply_exact(
        &self,
        r: T,
        f: [&dyn RadialProfile<T>; 2],
    ) -> [Complex<T>; 2] {
        if self.k == 0 {
            return [f[0].derivative(r) * Complex::i(), Complex::zero()];
        }
        self.action(r, [f[0].value(r), f[1].value(r)], [f[0].derivative(r), f[1].derivative(r)])
    }

    /// Right-hand side of `(d_k − iε)Ψ = 0` written as `Ψ′ = A(r)Ψ`:
    /// `Ψ₁′ = γΨ₁/r + iεsΨ₂`, `Ψ₂′ = −γΨ₂/r − iεsΨ₁`.
    pub fn defect_rhs(&self, r: T, eps: T, psi: &[Complex<T>; 2]) -> [Complex<T>; 2] {
        let ies = Complex::new(T::zero(), eps * self.sign);
        let g = self.gamma / r;
        [psi[0] * g + psi[1] * ies, -(psi[1] * g) - psi[0] * ies]
    }
}

/// `d_k Ψ` by finite differences, `k ≥ 1`.
pub fn apply_dk<T: Real>(
    k: u32,
    geom: &WedgeGeometry<T>,
    psi: &RadialPairSamples<T>,
) -> Result<RadialPairSamples<T>> {
    if k == 0 {
        return input("k = 0 is the momentum fiber; use apply_d0");
    }
    if psi.r.iter().any(|&r| !(r > T::zero())) {
        return input("d_k needs samples away from r = 0");
    }
    let op = FiberOperator::new(*geom, k);
    let c0: Vec<_> = psi.values.iter().map(|v| v[0]).collect();
    let c1: Vec<_> = psi.values.iter().map(|v| v[1]).collect();
    let (d0, d1) = (derivative(&psi.r, &c0)?, derivative(&psi.r, &c1)?);
    let values = psi
        .r
        .iter()
        .enumerate()
        .map(|(i, &r)| op.action(r, psi.values[i], [d0[i], d1[i]]))
        .collect();
    Ok(RadialPairSamples { r: psi.r.clone(), values })
}

/// The `d₀` defect element `ψ⋆(r) = e^{−r}` spanning `ker(d₀* + i)`.
pub fn defect_d0<T: Real>(r: &[T]) -> RadialSamples<T> {
    RadialSamples::from_fn(r, |x| Complex::new((-x).exp(), T::zero()))
}

/// Decaying eigenvector of the large-`r` limit of `(d_k − iε)Ψ = 0`,
/// normalised so the first component equals `e^{−R}`:
/// `Ψ(R) = e^{−R} (1, iεs)` with `s = (−1)^{k+1}`.
pub fn asymptotic_seed<T: Real>(k: u32, eps: T, big_r: T) -> Result<[Complex<T>; 2]> {
    if k == 0 {
        return input("asymptotic seed is defined for k ≥ 1");
    }
    if !(eps == T::one() || eps == -T::one()) {
        return input("sign must be +1 or -1");
    }
    if !(big_r >= T::lit(10.0)) {
        return input(format!("seed radius must be at least 10, got {big_r}"));
    }
    let e = (-big_r).exp();
    let s: T = mode_sign(k as i64);
    Ok([Complex::new(e, T::zero()), Complex::new(T::zero(), eps * s * e)])
}

/// Parameters of the deficiency probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub rtol: f64,
    /// Number of sample radii in the fit window `[r_min, 2 r_min]`.
    pub fit_points: usize,
    /// Largest admissible RMS residual of the log-log fit.
    pub fit_tolerance: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self { r_min: 1e-6, r_max: 25.0, rtol: 1e-10, fit_points: 9, fit_tolerance: 1e-3 }
    }
}

/// Outcome of probing one sign `ε` of `ker(d_k* − iε)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignProbe<T> {
    /// `+1` probes `n₊`, `−1` probes `n₋`.
    pub eps: i8,
    pub exponent: T,
    pub fit_residual: T,
    pub square_integrable: bool,
}

/// Deficiency indices of a fiber operator with supporting evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeficiencyReport<T> {
    pub k: u32,
    pub gamma: T,
    pub n_plus: u32,
    pub n_minus: u32,
    pub defect_samples: Option<RadialSamples<T>>,
    pub fitted_exponent: Option<T>,
    pub signs: Vec<SignProbe<T>>,
}

/// Solution of `(d_k − iε)Ψ = 0` decaying at infinity, tracked on a log
/// scale: `Ψ(r) = exp(log_scale) · scaled`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayingSolution<T> {
    pub r: Vec<T>,
    pub scaled: Vec<[Complex<T>; 2]>,
    pub log_scale: Vec<T>,
}

impl<T: Real> DecayingSolution<T> {
    /// `ln |Ψ_c(r_i)|`.
    pub fn log_abs(&self, i: usize, component: usize) -> T {
        self.scaled[i][component].norm().ln() + self.log_scale[i]
    }

    /// `ln ‖Ψ(r_i)‖`.
    pub fn log_norm(&self, i: usize) -> T {
        let v = self.scaled[i];
        (v[0].norm_sqr() + v[1].norm_sqr()).sqrt().ln() + self.log_scale[i]
    }
}

/// Integrates `(d_k − iε)Ψ = 0` from `from` to each radius in `radii` (in
/// the order given; all on one side of `from`), starting at the asymptotic
/// seed. The independent variable is `t = ln r`, and the state is
/// renormalised every decade of `r`.
pub fn integrate_defect_equation<T: Real>(
    op: &FiberOperator<T>,
    eps: T,
    from: T,
    radii: &[T],
    rtol: T,
) -> Result<DecayingSolution<T>> {
    let seed = if from >= T::lit(10.0) {
        asymptotic_seed(op.k, eps, from)?
    } else {
        return input("integration must start at r ≥ 10");
    };
    integrate_from_state(op, eps, from, seed, radii, rtol)
}

/// As [`integrate_defect_equation`] but from an arbitrary initial state.
pub fn integrate_from_state<T: Real>(
    op: &FiberOperator<T>,
    eps: T,
    from: T,
    initial: [Complex<T>; 2],
    radii: &[T],
    rtol: T,
) -> Result<DecayingSolution<T>> {
    if radii.is_empty() {
        return Ok(DecayingSolution { r: vec![], scaled: vec![], log_scale: vec![] });
    }
    let t0 = from.ln();
    let stops: Vec<T> = radii.iter().map(|r| r.ln()).collect();
    let t1 = *stops.last().expect("nonempty");
    let decade = T::lit(10.0).ln();
    let mut log_scale = T::zero();
    let norm0 = (initial[0].norm_sqr() + initial[1].norm_sqr()).sqrt();
    if !(norm0 > T::zero()) {
        return input("initial state must be nonzero");
    }
    let mut state = [initial[0] / norm0, initial[1] / norm0];
    log_scale = log_scale + norm0.ln();
    let mut last_decade = (t0 / decade).floor();
    let mut out = DecayingSolution { r: vec![], scaled: vec![], log_scale: vec![] };
    let solver = Dopri5 { rtol, atol: rtol * T::lit(1e-4), max_steps: 1_000_000 };
    let rhs = |t: T, y: &[Complex<T>; 2]| {
        let r = t.exp();
        let d = op.defect_rhs(r, eps, y);
        [d[0] * r, d[1] * r]
    };
    let mut stop_index = 0usize;
    let end = solver.integrate(rhs, t0, t1, state, &stops, |t, y, hit| {
        let n = (y[0].norm_sqr() + y[1].norm_sqr()).sqrt();
        let this_decade = (t / decade).floor();
        if this_decade != last_decade || n > T::lit(1e100) || n < T::lit(1e-100) {
            y[0] = y[0] / n;
            y[1] = y[1] / n;
            log_scale = log_scale + n.ln();
            last_decade = this_decade;
        }
        if hit {
            out.r.push(radii[stop_index]);
            out.scaled.push(*y);
            out.log_scale.push(log_scale);
            stop_index += 1;
        }
    })?;
    state = end;
    if out.r.len() < radii.len() {
        // the final radius coincides with t1 and is reported as the end state
        out.r.push(*radii.last().expect("nonempty"));
        out.scaled.push(state);
        out.log_scale.push(log_scale);
    }
    Ok(out)
}

/// Least-squares slope and RMS residual of `y` against `x`.
pub fn fit_line<T: Real>(x: &[T], y: &[T]) -> (T, T, T) {
    let n = T::count(x.len() as i64);
    let mx = x.iter().fold(T::zero(), |a, &v| a + v) / n;
    let my = y.iter().fold(T::zero(), |a, &v| a + v) / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        sxx = sxx + (a - mx) * (a - mx);
        sxy = sxy + (a - mx) * (b - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = x
        .iter()
        .zip(y)
        .fold(T::zero(), |acc, (&a, &b)| acc + (b - intercept - slope * a).powi(2));
    (slope, intercept, (rss / n).sqrt())
}

fn probe_sign<T: Real>(op: &FiberOperator<T>, eps: T, cfg: &ProbeConfig) -> Result<SignProbe<T>> {
    let r_min = T::lit(cfg.r_min);
    let n = cfg.fit_points.max(3);
    // fit radii in [r_min, 2 r_min], descending since we integrate inward
    let radii: Vec<T> = (0..n)
        .rev()
        .map(|i| r_min * (T::lit(2.0f64.ln()) * T::count(i as i64) / T::count(n as i64 - 1)).exp())
        .collect();
    let sol = integrate_defect_equation(op, eps, T::lit(cfg.r_max), &radii, T::lit(cfg.rtol))?;
    let last = sol.r.len() - 1;
    let component = if sol.scaled[last][0].norm() >= sol.scaled[last][1].norm() { 0 } else { 1 };
    let x: Vec<T> = sol.r.iter().map(|r| r.ln()).collect();
    let y: Vec<T> = (0..sol.r.len()).map(|i| sol.log_abs(i, component)).collect();
    let (slope, _, resid) = fit_line(&x, &y);
    if !slope.is_finite() || resid > T::lit(cfg.fit_tolerance) {
        return numeric(format!(
            "power-law fit for k = {}, sign {eps} has residual {resid}; refine the grid",
            op.k
        ));
    }
    Ok(SignProbe {
        eps: if eps > T::zero() { 1 } else { -1 },
        exponent: slope,
        fit_residual: resid,
        square_integrable: slope > -T::half(),
    })
}

/// `∫₀^R |e^{r}|² dr = (e^{2R} − 1)/2` for each `R`: the `ker(d₀* − i)`
/// candidate is not square-integrable, its truncated norms grow without bound.
pub fn growing_candidate_norms<T: Real>(radii: &[T]) -> Vec<T> {
    radii.iter().map(|&r| ((T::lit(2.0) * r).exp() - T::one()) * T::half()).collect()
}

/// Deficiency indices `(n₊, n₋)` of `d_k` with the convention
/// `n± = dim ker(d_k* ∓ i)`.
pub fn deficiency_probe<T: Real>(
    k: u32,
    geom: &WedgeGeometry<T>,
    cfg: &ProbeConfig,
    defect_radii: &[T],
) -> Result<DeficiencyReport<T>> {
    let op = FiberOperator::new(*geom, k);
    if k == 0 {
        // ker(d₀* − i): ψ′ = ψ, spanned by e^{r}; ker(d₀* + i): ψ′ = −ψ, spanned by e^{−r}
        let norms = growing_candidate_norms(&[T::lit(1.0), T::lit(5.0), T::lit(cfg.r_max)]);
        let grows = norms.windows(2).all(|w| w[1] > w[0]);
        return Ok(DeficiencyReport {
            k,
            gamma: T::zero(),
            n_plus: if grows { 0 } else { 1 },
            n_minus: 1,
            defect_samples: Some(defect_d0(defect_radii)),
            fitted_exponent: None,
            signs: vec![],
        });
    }
    let plus = probe_sign(&op, T::one(), cfg)?;
    let minus = probe_sign(&op, -T::one(), cfg)?;
    Ok(DeficiencyReport {
        k,
        gamma: op.gamma,
        n_plus: plus.square_integrable as u32,
        n_minus: minus.square_integrable as u32,
        defect_samples: None,
        fitted_exponent: Some(minus.exponent),
        signs: vec![plus, minus],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn geom(omega: f64) -> WedgeGeometry<f64> {
        WedgeGeometry::new(omega).unwrap()
    }

    #[test]
    fn d0_on_exponentials() {
        let r = uniform_radii::<f64>(0.5, 5.0, 4501);
        let e = RadialSamples::from_fn(&r, |x| Complex::new((-x).exp(), 0.0));
        let out = apply_d0(&e).unwrap();
        for (i, &x) in r.iter().enumerate() {
            assert!((out.values[i] - Complex::new(0.0, -(-x).exp())).norm() < 1e-6);
        }
        let re = RadialSamples::from_fn(&r, |x| Complex::new(x * (-x).exp(), 0.0));
        let out = apply_d0(&re).unwrap();
        for (i, &x) in r.iter().enumerate() {
            let exact = Complex::new(0.0, (1.0 - x) * (-x).exp());
            assert!((out.values[i] - exact).norm() < 1e-6);
        }
        let c = RadialSamples::from_fn(&r, |_| Complex::new(2.0, 1.0));
        assert!(apply_d0(&c).unwrap().values.iter().all(|v| v.norm() < 1e-9));
        assert!(apply_d0(&RadialSamples { r: vec![1.0, 2.0], values: vec![Complex::zero(); 2] }).is_err());
    }

    #[test]
    fn dk_on_r_exp() {
        let g = geom(FRAC_PI_2);
        let r = uniform_radii::<f64>(0.5, 4.0, 3501);
        let psi = RadialPairSamples::from_fn(&r, |x| [Complex::new(x * (-x).exp(), 0.0), Complex::zero()]);
        let out = apply_dk(1, &g, &psi).unwrap();
        for (i, &x) in r.iter().enumerate() {
            assert!(out.values[i][0].norm() < 1e-12);
            assert!((out.values[i][1] - Complex::new(-x * (-x).exp(), 0.0)).norm() < 1e-6);
        }
        assert!(apply_dk(0, &g, &psi).is_err());
        let zero = RadialPairSamples::from_fn(&r, |_| [Complex::zero(); 2]);
        assert!(apply_dk(3, &g, &zero).unwrap().values.iter().all(|v| v[0].norm() + v[1].norm() == 0.0));
    }

    #[test]
    fn gamma_exceeds_half_for_all_wedges() {
        for &omega in &[0.1, 1.0, 2.0, 3.0, PI - 1e-9] {
            for k in 1..=10 {
                assert!(FiberOperator::new(geom(omega), k).gamma > 0.5);
            }
        }
    }

    #[test]
    fn defect_d0_properties() {
        let r = uniform_radii::<f64>(0.0, 20.0, 20001);
        let s = defect_d0(&r);
        assert_eq!(s.values[0].re, 1.0);
        let resid = apply_d0(&s)
            .unwrap()
            .values
            .iter()
            .zip(&s.values)
            .map(|(d, v)| (*d + *v * Complex::i()).norm())
            .fold(0.0, f64::max);
        assert!(resid <= 1e-6, "{resid}");
    }

    #[test]
    fn seed_properties() {
        let a = asymptotic_seed(3, 1.0, 20.0).unwrap();
        let b = asymptotic_seed(3, -1.0, 20.0).unwrap();
        assert_eq!(a[0].conj(), b[0]);
        assert_eq!(a[1].conj(), b[1]);
        assert!((a[0].re - (-20.0f64).exp()).abs() < 1e-24);
        assert!(asymptotic_seed(0, 1.0, 20.0).is_err());
        assert!(asymptotic_seed(1, 1.0, 5.0).is_err());
        assert!(asymptotic_seed(1, 0.5, 20.0).is_err());
    }

    #[test]
    fn probe_k0() {
        let rep = deficiency_probe(0, &geom(1.0), &ProbeConfig::default(), &[0.0, 1.0]).unwrap();
        assert_eq!((rep.n_plus, rep.n_minus), (0, 1));
        let d = rep.defect_samples.unwrap();
        assert_eq!(d.values[0].re, 1.0);
        assert!((d.values[1].re - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn probe_k1_half_plane() {
        let rep = deficiency_probe(1, &geom(FRAC_PI_2), &ProbeConfig::default(), &[]).unwrap();
        assert_eq!((rep.n_plus, rep.n_minus), (0, 0));
        assert!((rep.fitted_exponent.unwrap() + 1.0).abs() < 0.05);
        for s in &rep.signs {
            assert!((s.exponent + 1.0).abs() < 1e-3, "{s:?}");
        }
    }

    #[test]
    fn probe_k2_wide_wedge() {
        let rep = deficiency_probe(2, &geom(3.0 * PI / 4.0), &ProbeConfig::default(), &[]).unwrap();
        assert_eq!((rep.n_plus, rep.n_minus), (0, 0));
        assert!((rep.fitted_exponent.unwrap() + 4.0 / 3.0).abs() < 0.05);
    }

    #[test]
    fn line_fit() {
        let x: [f64; 4] = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let (s, b, r) = fit_line(&x, &y);
        assert!((s - 2.0).abs() < 1e-15 && (b - 1.0).abs() < 1e-15 && r < 1e-15);
    }
}
