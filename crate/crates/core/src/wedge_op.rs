//! The Dirac expression `𝒟 = −i(σ·∇)` on the wedge in Cartesian and polar
//! form, boundary traces, the defect element `u⋆`, and the fiber transforms.
//!
//! In polar coordinates the expression reads
//!
//! ```text
//! D̃v = −i(σ·e_rad)(∂_r v + iσ₃ ∂_θ v / r),
//! ```
//!
//! and on a field `f(r)/√r · φ_k(θ)` it reduces to the radial operators of
//! [`crate::fibers`].

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{e_rad, phase, sigma3, sigma_dot, Spinor, Vec2};
use crate::angular::AngularMode;
use crate::error::{input, numeric, Result};
use crate::fibers::{FiberOperator, RadialPairSamples, RadialSamples};
use crate::geometry::{Side, WedgeGeometry};
use crate::grid::{PolarGrid, Spinor2Field};
use crate::profiles::{PowerExp, RadialProfile};
use crate::scalar::Real;

/// A spinor field given as a function of Cartesian coordinates.
pub trait CartesianSpinorFn<T: Real>: Send + Sync {
    fn eval(&self, x: Vec2<T>) -> Spinor<T>;

    /// `[∂₁u, ∂₂u]` when known in closed form.
    fn gradient(&self, _x: Vec2<T>) -> Option<[Spinor<T>; 2]> {
        None
    }
}

/// A spinor field given as a function of `(r, θ)`.
pub trait PolarSpinorFn<T: Real>: Send + Sync {
    fn eval(&self, r: T, theta: T) -> Spinor<T>;

    /// `[∂_r v, ∂_θ v]` when known in closed form.
    fn partials(&self, _r: T, _theta: T) -> Option<[Spinor<T>; 2]> {
        None
    }
}

/// Wraps a closure `x ↦ u(x)` without derivative information.
pub struct CartesianClosure<F>(pub F);

impl<T: Real, F: Fn(Vec2<T>) -> Spinor<T> + Send + Sync> CartesianSpinorFn<T> for CartesianClosure<F> {
    fn eval(&self, x: Vec2<T>) -> Spinor<T> {
        (self.0)(x)
    }
}

/// `u_j(x) = A_j exp(−|x − c|²/s²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpinor<T> {
    pub amplitude: [Complex<T>; 2],
    pub center: Vec2<T>,
    pub width: T,
}

impl<T: Real> GaussianSpinor<T> {
    fn bump(&self, x: Vec2<T>) -> (T, Vec2<T>) {
        let d = [x[0] - self.center[0], x[1] - self.center[1]];
        let s2 = self.width * self.width;
        let g = (-(d[0] * d[0] + d[1] * d[1]) / s2).exp();
        let c = -T::lit(2.0) * g / s2;
        (g, [c * d[0], c * d[1]])
    }
}

impl<T: Real> CartesianSpinorFn<T> for GaussianSpinor<T> {
    fn eval(&self, x: Vec2<T>) -> Spinor<T> {
        let (g, _) = self.bump(x);
        Spinor::new(self.amplitude[0] * g, self.amplitude[1] * g)
    }

    fn gradient(&self, x: Vec2<T>) -> Option<[Spinor<T>; 2]> {
        let (_, dg) = self.bump(x);
        let a = self.amplitude;
        Some([Spinor::new(a[0] * dg[0], a[1] * dg[0]), Spinor::new(a[0] * dg[1], a[1] * dg[1])])
    }
}

/// A Cartesian field viewed in polar coordinates, `v(r, θ) = u(r cos θ, r sin θ)`.
pub struct InPolar<'a, T: Real>(pub &'a dyn CartesianSpinorFn<T>);

impl<T: Real> PolarSpinorFn<T> for InPolar<'_, T> {
    fn eval(&self, r: T, theta: T) -> Spinor<T> {
        self.0.eval(polar_point(r, theta))
    }

    fn partials(&self, r: T, theta: T) -> Option<[Spinor<T>; 2]> {
        let [d1, d2] = self.0.gradient(polar_point(r, theta))?;
        let (s, c) = theta.sin_cos();
        Some([d1 * c + d2 * s, (d2 * c - d1 * s) * r])
    }
}

fn polar_point<T: Real>(r: T, theta: T) -> Vec2<T> {
    let (s, c) = theta.sin_cos();
    [r * c, r * s]
}

/// `−i(σ·∇)u` from the two partial derivatives.
pub fn dirac_from_gradient<T: Real>(d1: Spinor<T>, d2: Spinor<T>) -> Spinor<T> {
    let i = Complex::i();
    Spinor::new(
        (d1[1] - d2[1] * i) * (-i),
        (d1[0] + d2[0] * i) * (-i),
    )
}

/// `−i(σ·e_rad)(∂_r v + iσ₃ ∂_θ v / r)` from the polar partials.
pub fn dirac_from_partials<T: Real>(r: T, theta: T, dr: Spinor<T>, dtheta: Spinor<T>) -> Spinor<T> {
    let i = Complex::i();
    let inner = dr + (sigma3::<T>() * dtheta) * (i / r);
    (sigma_dot(e_rad(theta)) * inner) * (-i)
}

/// Central-difference evaluation of `𝒟u` at an interior point.
pub fn apply_cartesian<T: Real>(
    u: &dyn CartesianSpinorFn<T>,
    x: Vec2<T>,
    h: T,
    geom: &WedgeGeometry<T>,
) -> Result<Spinor<T>> {
    if !(h > T::zero()) {
        return input(format!("step must be positive, got {h}"));
    }
    if !geom.contains(x) || geom.distance_to_boundary(x) <= T::lit(2.0) * h {
        return input(format!("stencil of radius 2h = {} around {x:?} leaves the wedge", T::lit(2.0) * h));
    }
    let inv = T::one() / (T::lit(2.0) * h);
    let d1 = (u.eval([x[0] + h, x[1]]) - u.eval([x[0] - h, x[1]])) * inv;
    let d2 = (u.eval([x[0], x[1] + h]) - u.eval([x[0], x[1] - h])) * inv;
    Ok(dirac_from_gradient(d1, d2))
}

/// How derivatives of a polar field are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Derivatives<T> {
    Exact,
    CentralDifference { h: T },
}

/// Evaluates the polar Dirac expression at `(r, θ)`.
pub fn apply_polar<T: Real>(
    v: &dyn PolarSpinorFn<T>,
    geom: &WedgeGeometry<T>,
    r: T,
    theta: T,
    derivatives: Derivatives<T>,
) -> Result<Spinor<T>> {
    if !(r > T::zero()) {
        return input(format!("polar expression needs r > 0, got {r}"));
    }
    if !(theta.abs() <= geom.omega()) {
        return input(format!("angle {theta} outside [−ω, ω]"));
    }
    let [dr, dt] = match derivatives {
        Derivatives::Exact => match v.partials(r, theta) {
            Some(p) => p,
            None => return input("field has no closed-form derivatives"),
        },
        Derivatives::CentralDifference { h } => {
            if !(h > T::zero() && h < r) {
                return input(format!("difference step {h} must lie in (0, r)"));
            }
            let inv = T::one() / (T::lit(2.0) * h);
            [
                (v.eval(r + h, theta) - v.eval(r - h, theta)) * inv,
                (v.eval(r, theta + h) - v.eval(r, theta - h)) * inv,
            ]
        }
    };
    Ok(dirac_from_partials(r, theta, dr, dt))
}

/// One term `c · f(r)/√r · φ_k(θ)` of a mode expansion.
#[derive(Clone)]
pub struct ModeTerm<T: Real> {
    pub k: i64,
    pub coefficient: Complex<T>,
    pub profile: Arc<dyn RadialProfile<T>>,
}

/// A finite sum of separated fields `Σ c_j f_j(r)/√r · φ_{k_j}(θ)`.
///
/// Each term satisfies the boundary conditions exactly, and derivatives are
/// available in closed form.
#[derive(Clone)]
pub struct ModeExpansion<T: Real> {
    pub geometry: WedgeGeometry<T>,
    pub terms: Vec<ModeTerm<T>>,
}

impl<T: Real> ModeExpansion<T> {
    pub fn new(geometry: WedgeGeometry<T>) -> Self {
        Self { geometry, terms: Vec::new() }
    }

    pub fn with_term(
        mut self,
        k: i64,
        coefficient: Complex<T>,
        profile: Arc<dyn RadialProfile<T>>,
    ) -> Self {
        self.terms.push(ModeTerm { k, coefficient, profile });
        self
    }

    /// `ψ₊/√r φ_k − iψ₋/√r φ_{−k}` for `k ≥ 1`, or `ψ/√r φ₀` for `k = 0`.
    pub fn fiber_inverse(
        geometry: WedgeGeometry<T>,
        k: u32,
        f: [Arc<dyn RadialProfile<T>>; 2],
    ) -> Self {
        let one = Complex::new(T::one(), T::zero());
        let [f1, f2] = f;
        let out = Self::new(geometry).with_term(k as i64, one, f1);
        if k == 0 {
            out
        } else {
            out.with_term(-(k as i64), -Complex::i(), f2)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Real> PolarSpinorFn<T> for ModeExpansion<T> {
    fn eval(&self, r: T, theta: T) -> Spinor<T> {
        let s = r.sqrt();
        self.terms.iter().fold(Spinor::zero(), |acc, t| {
            let mode = AngularMode::new(self.geometry, t.k);
            acc + mode.eval(theta) * (t.coefficient * t.profile.value(r) / s)
        })
    }

    fn partials(&self, r: T, theta: T) -> Option<[Spinor<T>; 2]> {
        let s = r.sqrt();
        let mut dr = Spinor::zero();
        let mut dt = Spinor::zero();
        for t in &self.terms {
            let mode = AngularMode::new(self.geometry, t.k);
            let f = t.profile.value(r);
            let df = t.profile.derivative(r);
            dr += mode.eval(theta) * (t.coefficient * (df / s - f / (s * r * T::lit(2.0))));
            dt += mode.derivative(theta) * (t.coefficient * f / s);
        }
        Some([dr, dt])
    }
}

/// Samples of a field along one boundary ray.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTrace<T> {
    pub side: Side,
    pub r: Vec<T>,
    pub values: Vec<Spinor<T>>,
    pub normal: Vec2<T>,
}

impl<T: Real> BoundaryTrace<T> {
    pub fn new(geom: &WedgeGeometry<T>, side: Side, r: Vec<T>, values: Vec<Spinor<T>>) -> Result<Self> {
        if r.len() != values.len() {
            return input("trace radii and values differ in length");
        }
        Ok(Self { side, r, values, normal: geom.outer_normal(side) })
    }

    pub fn of_field(
        v: &dyn PolarSpinorFn<T>,
        geom: &WedgeGeometry<T>,
        side: Side,
        radii: &[T],
    ) -> Self {
        let t = geom.boundary_angle(side);
        let values = radii.iter().map(|&r| v.eval(r, t)).collect();
        Self { side, r: radii.to_vec(), values, normal: geom.outer_normal(side) }
    }
}

/// Both forms of the boundary-condition residual for one trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BcResidual<T> {
    /// `max |u₂ + e^{±iω} u₁|`.
    pub phase_form: T,
    /// `max |u − (∓iσ₃(σ·n))u| / √2`.
    pub matrix_form: T,
}

impl<T: Real> BcResidual<T> {
    pub fn consistent(&self) -> bool {
        (self.phase_form - self.matrix_form).abs() <= T::lit(1e-12) * (T::one() + self.phase_form)
    }
}

/// `∓iσ₃(σ·n)` on the ray `Γ±`.
pub fn bc_matrix<T: Real>(geom: &WedgeGeometry<T>, side: Side) -> crate::algebra::ComplexMatrix2<T> {
    let c = Complex::new(T::zero(), -side.sign::<T>());
    (sigma3::<T>() * sigma_dot(geom.outer_normal(side))).scale(c)
}

/// Boundary-condition residual of a trace in both equivalent forms.
pub fn check_bc<T: Real>(geom: &WedgeGeometry<T>, trace: &BoundaryTrace<T>) -> Result<BcResidual<T>> {
    if trace.values.is_empty() {
        return input("boundary trace has no samples");
    }
    let p = phase(geom.boundary_angle(trace.side));
    let m = bc_matrix(geom, trace.side);
    let mut out = BcResidual { phase_form: T::zero(), matrix_form: T::zero() };
    for u in &trace.values {
        out.phase_form = out.phase_form.max((u[1] + p * u[0]).norm());
        out.matrix_form = out.matrix_form.max((*u - m * *u).norm() / T::lit(2.0).sqrt());
    }
    if !out.consistent() {
        return numeric(format!(
            "boundary residual forms disagree: {} vs {}",
            out.phase_form, out.matrix_form
        ));
    }
    Ok(out)
}

/// `((σ·n)u)·conj(v)` at a point of `Γ±`.
pub fn boundary_integrand<T: Real>(
    geom: &WedgeGeometry<T>,
    side: Side,
    u: Spinor<T>,
    v: Spinor<T>,
) -> Complex<T> {
    (sigma_dot(geom.outer_normal(side)) * u).dot(&v)
}

/// The defect element `u⋆ = (e^{−r}/√r) φ₀`, spanning `ker(D_ω* + i)`.
pub fn defect_element<T: Real>(geom: &WedgeGeometry<T>) -> ModeExpansion<T> {
    ModeExpansion::new(*geom).with_term(
        0,
        Complex::new(T::one(), T::zero()),
        Arc::new(PowerExp::<T>::exp_decay()),
    )
}

/// `u⋆(r, θ) = (1/2√ω)(e^{−r}/√r)(e^{−iθ/2}, −e^{iθ/2})`.
pub fn u_star<T: Real>(geom: &WedgeGeometry<T>, r: T, theta: T) -> Result<Spinor<T>> {
    if !(r > T::zero()) {
        return input(format!("u⋆ is defined for r > 0, got {r}"));
    }
    let a = (-r).exp() / (T::lit(2.0) * (geom.omega() * r).sqrt());
    let h = theta * T::half();
    Ok(Spinor::new(phase(-h) * a, -(phase(h) * a)))
}

/// `max |D̃u⋆ + shift·u⋆|` over the given `(r, θ)` points.
pub fn defect_residual_shifted<T: Real>(
    geom: &WedgeGeometry<T>,
    points: &[(T, T)],
    shift: Complex<T>,
    derivatives: Derivatives<T>,
) -> Result<T> {
    let u = defect_element(geom);
    let mut worst = T::zero();
    for &(r, t) in points {
        let d = apply_polar(&u, geom, r, t, derivatives)?;
        worst = worst.max((d + u.eval(r, t) * shift).norm());
    }
    Ok(worst)
}

/// `max |D̃u⋆ + i u⋆|` over the given points.
pub fn defect_residual<T: Real>(
    geom: &WedgeGeometry<T>,
    points: &[(T, T)],
    derivatives: Derivatives<T>,
) -> Result<T> {
    if points.iter().any(|&(r, _)| r < T::lit(0.05)) {
        return input("defect residual is sampled on r ≥ 0.05");
    }
    defect_residual_shifted(geom, points, Complex::i(), derivatives)
}

/// Samples a polar field on every node of a grid.
pub fn sample_field<T: Real>(v: &dyn PolarSpinorFn<T>, grid: &Arc<PolarGrid<T>>) -> Spinor2Field<T> {
    Spinor2Field::from_fn(grid.clone(), |r, t| v.eval(r, t))
}

/// Samples `D̃v` on every node of a grid.
pub fn sample_dirac<T: Real>(
    v: &dyn PolarSpinorFn<T>,
    grid: &Arc<PolarGrid<T>>,
    derivatives: Derivatives<T>,
) -> Result<Spinor2Field<T>> {
    let geom = *grid.geometry();
    let values = grid
        .nodes()
        .map(|(r, t)| apply_polar(v, &geom, r, t, derivatives))
        .collect::<Result<Vec<_>>>()?;
    Spinor2Field::new(grid.clone(), values)
}

/// Radial data of one fiber: scalar for `k = 0`, a pair for `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FiberData<T> {
    Scalar(RadialSamples<T>),
    Pair(RadialPairSamples<T>),
}

impl<T: Real> FiberData<T> {
    pub fn radii(&self) -> &[T] {
        match self {
            FiberData::Scalar(s) => &s.r,
            FiberData::Pair(p) => &p.r,
        }
    }

    /// Squared modulus at sample `i`.
    pub fn abs_sqr(&self, i: usize) -> T {
        match self {
            FiberData::Scalar(s) => s.values[i].norm_sqr(),
            FiberData::Pair(p) => p.values[i][0].norm_sqr() + p.values[i][1].norm_sqr(),
        }
    }

    pub fn component(&self, i: usize, c: usize) -> Complex<T> {
        match self {
            FiberData::Scalar(s) if c == 0 => s.values[i],
            FiberData::Scalar(_) => Complex::zero(),
            FiberData::Pair(p) => p.values[i][c],
        }
    }
}

/// `(u(r,·), φ_k)` on every radial node.
fn angular_coefficients<T: Real>(u: &Spinor2Field<T>, k: i64) -> Vec<Complex<T>> {
    let grid = u.grid();
    let mode = AngularMode::new(*grid.geometry(), k);
    let phis: Vec<Spinor<T>> = grid.theta_nodes().iter().map(|&t| mode.eval(t)).collect();
    (0..grid.n_r())
        .map(|i| {
            u.ring(i)
                .iter()
                .zip(&phis)
                .zip(grid.theta_weights())
                .fold(Complex::zero(), |acc, ((v, p), &w)| acc + v.dot(p) * w)
        })
        .collect()
}

/// `W₀u = √r (u, φ₀)` for `k = 0`; `W_k u = √r ((u, φ_k), i(u, φ_{−k}))` for `k ≥ 1`.
pub fn fiber_project<T: Real>(u: &Spinor2Field<T>, k: u32) -> FiberData<T> {
    let grid = u.grid();
    let r = grid.r_nodes().to_vec();
    let plus = angular_coefficients(u, k as i64);
    if k == 0 {
        let values = plus.iter().zip(&r).map(|(c, &x)| *c * x.sqrt()).collect();
        return FiberData::Scalar(RadialSamples { r, values });
    }
    let minus = angular_coefficients(u, -(k as i64));
    let values = r
        .iter()
        .enumerate()
        .map(|(i, &x)| [plus[i] * x.sqrt(), minus[i] * Complex::i() * x.sqrt()])
        .collect();
    FiberData::Pair(RadialPairSamples { r, values })
}

/// `∫ |f|² dr` on the grid's radial rule.
pub fn fiber_norm_sqr<T: Real>(grid: &PolarGrid<T>, data: &FiberData<T>) -> T {
    grid.r_weights()
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &w)| acc + data.abs_sqr(i) * w)
}

/// `|Σ_{k ≤ K} ‖W_k u‖² − ‖u‖²|`.
pub fn parseval_check<T: Real>(u: &Spinor2Field<T>, kmax: u32) -> T {
    let total = (0..=kmax).fold(T::zero(), |acc, k| acc + fiber_norm_sqr(u.grid(), &fiber_project(u, k)));
    (total - u.norm_sqr()).abs()
}

/// `‖W_k D̃(W_k⁻¹ f) − d_k f‖` by quadrature on the grid's radial rule,
/// with `D̃` evaluated from exact derivatives.
pub fn fiber_intertwine_check<T: Real>(
    grid: &Arc<PolarGrid<T>>,
    k: u32,
    f: [Arc<dyn RadialProfile<T>>; 2],
) -> Result<T> {
    let geom = *grid.geometry();
    let op = FiberOperator::new(geom, k);
    let v = ModeExpansion::fiber_inverse(geom, k, f.clone());
    let dv = sample_dirac(&v, grid, Derivatives::Exact)?;
    let projected = fiber_project(&dv, k);
    let mut acc = T::zero();
    for (i, (&r, &w)) in grid.r_nodes().iter().zip(grid.r_weights()).enumerate() {
        let expected = op.apply_exact(r, [f[0].as_ref(), f[1].as_ref()]);
        let d0 = projected.component(i, 0) - expected[0];
        let d1 = projected.component(i, 1) - if k == 0 { Complex::zero() } else { expected[1] };
        acc = acc + (d0.norm_sqr() + d1.norm_sqr()) * w;
    }
    Ok(acc.sqrt())
}

/// `√r |u⋆(r, θ)| e^{r}`, which equals `1/√(2ω)` for every `(r, θ)`.
pub fn singularity_profile<T: Real>(geom: &WedgeGeometry<T>, r: T, theta: T) -> Result<T> {
    Ok(u_star(geom, r, theta)?.norm() * r.sqrt() * r.exp())
}
