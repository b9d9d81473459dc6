//! The two-valley operator `M_ω = D_ω ⊕ (−D_ω)` and its self-adjoint
//! extensions `M_{α,ω}`, `α ∈ 𝕋`.
//!
//! Domain elements are `(u₁, u₂) + (u⋆, α u⋆)` with regular parts in
//! `dom D_ω`. The singular part is kept symbolic: it is evaluated from the
//! closed form of `u⋆` at quadrature nodes and never folded into the regular
//! parts.
//!
//! The extension acts by the differential expression `ℳ = diag(𝒟, −𝒟)` on
//! the whole element. Since `𝒟u⋆ = −iu⋆`, this gives
//!
//! ```text
//! M_{α,ω}((u₁, u₂) + (u⋆, αu⋆)) = (𝒟u₁ − iu⋆, −𝒟u₂ + iαu⋆).
//! ```
//!
//! [`ActionSign::Flipped`] evaluates the same formula with the opposite sign
//! in front of the singular contributions, which is not symmetric once the
//! regular parts overlap the `k = 0` fiber.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{sigma3, Spinor};
use crate::error::{input, Result};
use crate::geometry::{Side, WedgeGeometry};
use crate::grid::{inner_product, PolarGrid, Spinor2Field};
use crate::profiles::{RadialProfile, Windowed};
use crate::scalar::Real;
use crate::wedge_op::{
    apply_polar, check_bc, defect_element, BoundaryTrace, Derivatives, ModeExpansion, PolarSpinorFn,
};

/// Tolerance on `||α| − 1|`.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Relative tolerance of the symmetry check.
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;

/// An extension parameter `α ∈ 𝕋`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionParam<T> {
    alpha: Complex<T>,
}

impl<T: Real> ExtensionParam<T> {
    pub fn new(alpha: Complex<T>) -> Result<Self> {
        if !((alpha.norm() - T::one()).abs() <= T::lit(UNIT_TOLERANCE)) {
            return input(format!("extension parameter must have modulus 1, got |α| = {}", alpha.norm()));
        }
        Ok(Self { alpha })
    }

    /// `e^{iφ}`.
    pub fn from_angle(phi: T) -> Self {
        Self { alpha: Complex::from_polar(T::one(), phi) }
    }

    /// `n` equally spaced points `e^{2πij/n}` on the unit circle.
    pub fn circle(n: usize) -> Vec<Self> {
        (0..n)
            .map(|j| Self::from_angle(T::lit(2.0) * T::PI() * T::count(j as i64) / T::count(n as i64)))
            .collect()
    }

    pub fn value(&self) -> Complex<T> {
        self.alpha
    }
}

/// A pair of two-spinor fields on a shared grid, one per valley.
#[derive(Debug, Clone)]
pub struct ValleyPair<T> {
    pub first: Spinor2Field<T>,
    pub second: Spinor2Field<T>,
}

impl<T: Real> ValleyPair<T> {
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        Ok(inner_product(&self.first, &other.first)? + inner_product(&self.second, &other.second)?)
    }

    pub fn norm(&self) -> T {
        (self.first.norm_sqr() + self.second.norm_sqr()).sqrt()
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { first: self.first.try_sub(&other.first)?, second: self.second.try_sub(&other.second)? })
    }
}

/// Sign convention in front of the singular contributions of the action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ActionSign {
    /// `(𝒟u₁ − iu⋆, −𝒟u₂ + iαu⋆)`, the adjoint expression on the element.
    #[default]
    Adjoint,
    /// `(𝒟u₁ + iu⋆, −𝒟u₂ − iαu⋆)`.
    Flipped,
}

/// An element `(u₁, u₂) + (u⋆, αu⋆)` of `dom M_{α,ω}`.
#[derive(Clone)]
pub struct ExtensionElement<T: Real> {
    pub u1: Arc<dyn PolarSpinorFn<T>>,
    pub u2: Arc<dyn PolarSpinorFn<T>>,
    pub alpha: ExtensionParam<T>,
}

/// Largest boundary residual tolerated for a regular part.
pub const BC_TOLERANCE: f64 = 1e-10;

impl<T: Real> ExtensionElement<T> {
    /// Builds an element after checking the boundary conditions of both
    /// regular parts on the grid's radial nodes along both rays.
    pub fn new(
        grid: &PolarGrid<T>,
        u1: Arc<dyn PolarSpinorFn<T>>,
        u2: Arc<dyn PolarSpinorFn<T>>,
        alpha: ExtensionParam<T>,
    ) -> Result<Self> {
        let geom = grid.geometry();
        for (name, u) in [("u1", &u1), ("u2", &u2)] {
            for side in Side::BOTH {
                let trace = BoundaryTrace::of_field(u.as_ref(), geom, side, grid.r_nodes());
                let scale = trace.values.iter().map(Spinor::norm).fold(T::one(), T::max);
                let res = check_bc(geom, &trace)?;
                if res.phase_form > T::lit(BC_TOLERANCE) * scale {
                    return input(format!(
                        "regular part {name} violates the boundary condition on {side:?}: residual {}",
                        res.phase_form
                    ));
                }
            }
        }
        Ok(Self { u1, u2, alpha })
    }

    /// The pure singular element `(u⋆, αu⋆)`.
    pub fn singular(geom: &WedgeGeometry<T>, alpha: ExtensionParam<T>) -> Self {
        let zero: Arc<dyn PolarSpinorFn<T>> = Arc::new(ModeExpansion::new(*geom));
        Self { u1: zero.clone(), u2: zero, alpha }
    }

    /// `(u₁ + u⋆, u₂ + αu⋆)` on the grid.
    pub fn values(&self, grid: &Arc<PolarGrid<T>>) -> ValleyPair<T> {
        let geom = *grid.geometry();
        let star = defect_element(&geom);
        let a = self.alpha.value();
        ValleyPair {
            first: Spinor2Field::from_fn(grid.clone(), |r, t| self.u1.eval(r, t) + star.eval(r, t)),
            second: Spinor2Field::from_fn(grid.clone(), |r, t| self.u2.eval(r, t) + star.eval(r, t) * a),
        }
    }
}

fn dirac<T: Real>(v: &dyn PolarSpinorFn<T>, geom: &WedgeGeometry<T>, r: T, t: T) -> Result<Spinor<T>> {
    match v.partials(r, t) {
        Some(_) => apply_polar(v, geom, r, t, Derivatives::Exact),
        None => {
            let h = (r * T::half()).min(T::lit(1e-4));
            apply_polar(v, geom, r, t, Derivatives::CentralDifference { h })
        }
    }
}

/// `M_{α,ω} w` on every grid node.
pub fn m_alpha_apply<T: Real>(
    w: &ExtensionElement<T>,
    grid: &Arc<PolarGrid<T>>,
    sign: ActionSign,
) -> Result<ValleyPair<T>> {
    let geom = *grid.geometry();
    let star = defect_element(&geom);
    let i = Complex::i();
    let s = match sign {
        ActionSign::Adjoint => -i,
        ActionSign::Flipped => i,
    };
    let a = w.alpha.value();
    let mut first = Vec::with_capacity(grid.len());
    let mut second = Vec::with_capacity(grid.len());
    for (r, t) in grid.nodes() {
        let us = star.eval(r, t);
        first.push(dirac(w.u1.as_ref(), &geom, r, t)? + us * s);
        second.push(-dirac(w.u2.as_ref(), &geom, r, t)? - us * (s * a));
    }
    Ok(ValleyPair {
        first: Spinor2Field::new(grid.clone(), first)?,
        second: Spinor2Field::new(grid.clone(), second)?,
    })
}

/// Outcome of a symmetry test `|⟨Mw, w₂⟩ − ⟨w, Mw₂⟩|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetryDefect<T> {
    pub defect: T,
    /// `‖w‖‖Mw₂‖ + ‖Mw‖‖w₂‖`.
    pub scale: T,
}

impl<T: Real> SymmetryDefect<T> {
    pub fn relative(&self) -> T {
        if self.scale > T::zero() {
            self.defect / self.scale
        } else {
            self.defect
        }
    }

    pub fn passes(&self) -> bool {
        self.defect <= T::lit(SYMMETRY_TOLERANCE) * self.scale
    }
}

/// `|⟨Mw, w₂⟩ − ⟨w, Mw₂⟩|` where each element is acted on with its own `α`.
pub fn symmetry_defect<T: Real>(
    w: &ExtensionElement<T>,
    w2: &ExtensionElement<T>,
    grid: &Arc<PolarGrid<T>>,
    sign: ActionSign,
) -> Result<SymmetryDefect<T>> {
    let (v, v2) = (w.values(grid), w2.values(grid));
    let (mv, mv2) = (m_alpha_apply(w, grid, sign)?, m_alpha_apply(w2, grid, sign)?);
    let defect = (mv.inner(&v2)? - v.inner(&mv2)?).norm();
    let scale = v.norm() * mv2.norm() + mv.norm() * v2.norm();
    Ok(SymmetryDefect { defect, scale })
}

/// Symmetry defect of `M_{α,ω}` on two elements sharing `α`.
pub fn symmetry_check<T: Real>(
    w: &ExtensionElement<T>,
    w2: &ExtensionElement<T>,
    grid: &Arc<PolarGrid<T>>,
) -> Result<SymmetryDefect<T>> {
    if (w.alpha.value() - w2.alpha.value()).norm() > T::lit(UNIT_TOLERANCE) {
        return input("symmetry check needs elements with the same extension parameter");
    }
    symmetry_defect(w, w2, grid, ActionSign::Adjoint)
}

/// The deficiency pair of `M_ω` with pointwise residuals.
#[derive(Debug, Clone)]
pub struct MDeficiency<T> {
    pub n_plus: u32,
    pub n_minus: u32,
    /// `(0, u⋆)`, spanning `ker(M_ω* − i)`.
    pub plus: ValleyPair<T>,
    /// `(u⋆, 0)`, spanning `ker(M_ω* + i)`.
    pub minus: ValleyPair<T>,
    /// `max |(ℳ − i)(0, u⋆)|` on the sample points.
    pub residual_plus: T,
    /// `max |(ℳ + i)(u⋆, 0)|` on the sample points.
    pub residual_minus: T,
}

/// Deficiency subspaces of `M_ω`; residuals are taken on grid nodes with
/// `r ∈ [0.05, 20]` using exact derivatives.
pub fn m_deficiency<T: Real>(grid: &Arc<PolarGrid<T>>) -> Result<MDeficiency<T>> {
    let geom = *grid.geometry();
    let star = defect_element(&geom);
    let i = Complex::i();
    let (mut rp, mut rm) = (T::zero(), T::zero());
    for (r, t) in grid.nodes().filter(|&(r, _)| r >= T::lit(0.05) && r <= T::lit(20.0)) {
        let d = apply_polar(&star, &geom, r, t, Derivatives::Exact)?;
        let u = star.eval(r, t);
        rp = rp.max((-d - u * i).norm());
        rm = rm.max((d + u * i).norm());
    }
    let zero = Spinor2Field::zeros(grid.clone());
    let sampled = Spinor2Field::from_fn(grid.clone(), |r, t| star.eval(r, t));
    Ok(MDeficiency {
        n_plus: 1,
        n_minus: 1,
        plus: ValleyPair { first: zero.clone(), second: sampled.clone() },
        minus: ValleyPair { first: sampled, second: zero },
        residual_plus: rp,
        residual_minus: rm,
    })
}

/// Valley masses of the singular domain element `(u⋆, αu⋆)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValleyMixing<T> {
    pub alpha: Complex<T>,
    pub mass_first: T,
    pub mass_second: T,
}

impl<T: Real> ValleyMixing<T> {
    /// Both valleys carry strictly positive mass.
    pub fn mixes(&self) -> bool {
        self.mass_first > T::zero() && self.mass_second > T::zero()
    }
}

pub fn valley_mixing_report<T: Real>(alpha: Complex<T>, grid: &Arc<PolarGrid<T>>) -> Result<ValleyMixing<T>> {
    let param = ExtensionParam::new(alpha)?;
    let v = ExtensionElement::singular(grid.geometry(), param).values(grid);
    Ok(ValleyMixing { alpha, mass_first: v.first.norm_sqr(), mass_second: v.second.norm_sqr() })
}

/// `‖(M_α − M_{α′})` on the shared zero-regular-part element, second block`‖`,
/// which equals `|α − α′| ‖u⋆‖`.
pub fn action_gap<T: Real>(
    alpha: ExtensionParam<T>,
    alpha2: ExtensionParam<T>,
    grid: &Arc<PolarGrid<T>>,
) -> Result<T> {
    let geom = grid.geometry();
    let a = m_alpha_apply(&ExtensionElement::singular(geom, alpha), grid, ActionSign::Adjoint)?;
    let b = m_alpha_apply(&ExtensionElement::singular(geom, alpha2), grid, ActionSign::Adjoint)?;
    Ok(a.second.try_sub(&b.second)?.norm_sqr().sqrt())
}

/// `σ₃ v`.
pub struct Sigma3<'a, T: Real>(pub &'a dyn PolarSpinorFn<T>);

impl<T: Real> PolarSpinorFn<T> for Sigma3<'_, T> {
    fn eval(&self, r: T, theta: T) -> Spinor<T> {
        sigma3::<T>() * self.0.eval(r, theta)
    }

    fn partials(&self, r: T, theta: T) -> Option<[Spinor<T>; 2]> {
        let [a, b] = self.0.partials(r, theta)?;
        Some([sigma3::<T>() * a, sigma3::<T>() * b])
    }
}

/// Residuals of the valley conjugation by `σ₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValleyConjugation<T> {
    /// Boundary residual of `σ₃u` for traces `u` obeying `u₂ = +e^{±iω}u₁`.
    pub bc_residual: T,
    /// `max |σ₃ D̃(σ₃ v) + D̃v|` over the sample points.
    pub operator_residual: T,
}

/// Checks that `σ₃` maps the second-valley boundary condition to the first
/// one and anticommutes with the expression, on the given test field and
/// sample points.
pub fn valley_conjugation_check<T: Real>(
    geom: &WedgeGeometry<T>,
    traces: &[Complex<T>],
    field: &dyn PolarSpinorFn<T>,
    points: &[(T, T)],
) -> Result<ValleyConjugation<T>> {
    let mut bc = T::zero();
    for side in Side::BOTH {
        let p = crate::algebra::phase(geom.boundary_angle(side));
        let values: Vec<_> = traces.iter().map(|&u1| sigma3::<T>() * Spinor::new(u1, p * u1)).collect();
        let radii = vec![T::one(); values.len()];
        if values.is_empty() {
            continue;
        }
        let trace = BoundaryTrace::new(geom, side, radii, values)?;
        bc = bc.max(check_bc(geom, &trace)?.phase_form);
    }
    let conj = Sigma3(field);
    let mut op = T::zero();
    for &(r, t) in points {
        let lhs = sigma3::<T>() * dirac(&conj, geom, r, t)?;
        let rhs = dirac(field, geom, r, t)?;
        op = op.max((lhs + rhs).norm());
    }
    Ok(ValleyConjugation { bc_residual: bc, operator_residual: op })
}

/// A random mode expansion with `terms` windowed profiles whose supports
/// start and end on grid breakpoints within `[0.05, 12]` and span at least
/// four radial panels.
pub fn random_regular_part<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    grid: &PolarGrid<T>,
    terms: usize,
    kmax: i64,
) -> Result<ModeExpansion<T>> {
    let breaks: Vec<T> = grid
        .breakpoints()
        .iter()
        .copied()
        .filter(|&b| b >= T::lit(0.05) && b <= T::lit(12.0))
        .collect();
    if breaks.len() < 5 {
        return input("grid has too few breakpoints in [0.05, 12] for windowed test data");
    }
    let mut out = ModeExpansion::new(*grid.geometry());
    for _ in 0..terms {
        let i = rng.gen_range(0..breaks.len() - 4);
        let j = rng.gen_range(i + 4..breaks.len());
        let k = rng.gen_range(-kmax..=kmax);
        let amp = Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)));
        let power = T::lit(rng.gen_range(0.0..2.0));
        let profile: Arc<dyn RadialProfile<T>> =
            Arc::new(Windowed::new(breaks[i], breaks[j], power, Complex::new(T::one(), T::zero()))?);
        out = out.with_term(k, amp, profile);
    }
    Ok(out)
}

/// Pure singular action `(c u⋆, c' u⋆)` coefficients `(c, c')` for a given
/// convention: `(−i, iα)` for the adjoint expression.
pub fn singular_action_coefficients<T: Real>(alpha: ExtensionParam<T>, sign: ActionSign) -> (Complex<T>, Complex<T>) {
    let i = Complex::i();
    let a = alpha.value();
    match sign {
        ActionSign::Adjoint => (-i, i * a),
        ActionSign::Flipped => (i, -i * a),
    }
}

/// `max |M w − (c u⋆, c' u⋆)|` for the pure singular element.
pub fn singular_action_residual<T: Real>(
    alpha: ExtensionParam<T>,
    grid: &Arc<PolarGrid<T>>,
    sign: ActionSign,
) -> Result<T> {
    let geom = *grid.geometry();
    let m = m_alpha_apply(&ExtensionElement::singular(&geom, alpha), grid, sign)?;
    let (c1, c2) = singular_action_coefficients(alpha, sign);
    let star = defect_element(&geom);
    let mut worst = T::zero();
    for (idx, (r, t)) in grid.nodes().enumerate() {
        let u = star.eval(r, t);
        worst = worst
            .max((m.first.values()[idx] - u * c1).norm())
            .max((m.second.values()[idx] - u * c2).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wedge_op::GaussianSpinor;
    use crate::wedge_op::InPolar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid(omega: f64) -> Arc<PolarGrid<f64>> {
        Arc::new(PolarGrid::with_defaults(WedgeGeometry::new(omega).unwrap()))
    }

    #[test]
    fn parameter_validation() {
        assert!(ExtensionParam::new(Complex::new(0.5, 0.5)).is_err());
        assert!(ExtensionParam::new(Complex::new(0.0, 0.0)).is_err());
        assert!(ExtensionParam::new(Complex::new(0.0, 1.0)).is_ok());
        let c = ExtensionParam::<f64>::circle(12);
        assert_eq!(c.len(), 12);
        assert!(c.iter().all(|a| (a.value().norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn deficiency_pair() {
        let g = grid(1.0);
        let d = m_deficiency(&g).unwrap();
        assert_eq!((d.n_plus, d.n_minus), (1, 1));
        assert!(d.residual_plus <= 1e-12 && d.residual_minus <= 1e-12);
        assert!(d.plus.first.max_abs() == 0.0 && d.minus.second.max_abs() == 0.0);
        assert!((d.plus.second.norm_sqr() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn pure_singular_action() {
        let g = grid(1.0);
        for alpha in [Complex::new(0.0, 1.0), Complex::new(1.0, 0.0)] {
            let a = ExtensionParam::new(alpha).unwrap();
            assert!(singular_action_residual(a, &g, ActionSign::Adjoint).unwrap() < 1e-12);
            assert!(singular_action_residual(a, &g, ActionSign::Flipped).unwrap() < 1e-12);
        }
        let (c1, c2) = singular_action_coefficients(ExtensionParam::new(Complex::i()).unwrap(), ActionSign::Flipped);
        assert_eq!((c1, c2), (Complex::i(), Complex::new(1.0, 0.0)));
    }

    #[test]
    fn valley_masses() {
        let g = grid(1.0);
        for a in [Complex::new(1.0, 0.0), Complex::from_polar(1.0, std::f64::consts::FRAC_PI_3)] {
            let m = valley_mixing_report(a, &g).unwrap();
            assert!((m.mass_first - 0.5).abs() < 1e-10 && (m.mass_second - 0.5).abs() < 1e-10);
            assert!(m.mixes());
        }
        assert!(valley_mixing_report(Complex::new(0.0, 0.0), &g).is_err());
    }

    #[test]
    fn symmetry_on_random_elements() {
        let g = grid(1.2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for alpha in ExtensionParam::circle(4) {
            let u1 = Arc::new(random_regular_part(&mut rng, &g, 3, 2).unwrap());
            let u2 = Arc::new(random_regular_part(&mut rng, &g, 3, 2).unwrap());
            let w = ExtensionElement::new(&g, u1, u2, alpha).unwrap();
            let w2 = ExtensionElement::singular(g.geometry(), alpha);
            let d = symmetry_check(&w, &w2, &g).unwrap();
            assert!(d.passes(), "{d:?}");
            let d = symmetry_check(&w, &w, &g).unwrap();
            assert!(d.passes(), "{d:?}");
        }
    }

    #[test]
    fn flipped_sign_breaks_symmetry_with_k0_overlap() {
        let g = grid(1.2);
        let profile: Arc<dyn RadialProfile<f64>> = Arc::new(
            Windowed::new(g.breakpoints()[20], g.breakpoints()[30], 1.0, Complex::new(1.0, 0.0)).unwrap(),
        );
        let u1 = Arc::new(ModeExpansion::new(*g.geometry()).with_term(0, Complex::new(1.0, 0.0), profile));
        let zero: Arc<dyn PolarSpinorFn<f64>> = Arc::new(ModeExpansion::new(*g.geometry()));
        let alpha = ExtensionParam::from_angle(0.3);
        let w = ExtensionElement::new(&g, u1, zero, alpha).unwrap();
        let w2 = ExtensionElement::singular(g.geometry(), alpha);
        assert!(symmetry_defect(&w, &w2, &g, ActionSign::Adjoint).unwrap().passes());
        assert!(symmetry_defect(&w, &w2, &g, ActionSign::Flipped).unwrap().relative() > 1e-3);
    }

    #[test]
    fn mismatched_alpha() {
        let g = grid(1.0);
        let a = ExtensionParam::from_angle(0.0);
        let b = ExtensionParam::from_angle(std::f64::consts::PI);
        let w = ExtensionElement::singular(g.geometry(), a);
        let w2 = ExtensionElement::singular(g.geometry(), b);
        assert!(symmetry_check(&w, &w2, &g).is_err());
        let d = symmetry_defect(&w, &w2, &g, ActionSign::Adjoint).unwrap();
        assert!((d.defect - 2.0).abs() < 1e-10);
    }

    #[test]
    fn bc_violating_regular_part_rejected() {
        let g = grid(1.0);
        let bad = GaussianSpinor { amplitude: [Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)], center: [1.0, 0.0], width: 1.0 };
        struct Owned(GaussianSpinor<f64>);
        impl PolarSpinorFn<f64> for Owned {
            fn eval(&self, r: f64, t: f64) -> Spinor<f64> {
                InPolar(&self.0).eval(r, t)
            }
        }
        let zero: Arc<dyn PolarSpinorFn<f64>> = Arc::new(ModeExpansion::new(*g.geometry()));
        let r = ExtensionElement::new(&g, Arc::new(Owned(bad)), zero, ExtensionParam::from_angle(0.0));
        assert!(r.is_err());
    }

    #[test]
    fn injectivity_gap() {
        let g = grid(0.7);
        let a = ExtensionParam::from_angle(0.4);
        let b = ExtensionParam::from_angle(2.0);
        let gap = action_gap(a, b, &g).unwrap();
        assert!((gap - (a.value() - b.value()).norm() / 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn valley_conjugation() {
        let geom = WedgeGeometry::new(0.9).unwrap();
        let field = GaussianSpinor { amplitude: [Complex::new(1.0, 0.5), Complex::new(-0.3, 2.0)], center: [1.0, 0.2], width: 0.8 };
        let traces = [Complex::new(1.0, 0.0), Complex::new(-0.4, 2.5)];
        let pts = [(0.5, 0.1), (1.5, -0.8), (3.0, 0.85)];
        let rep = valley_conjugation_check(&geom, &traces, &InPolar(&field), &pts).unwrap();
        assert!(rep.bc_residual < 1e-15 && rep.operator_residual < 1e-14, "{rep:?}");
    }
}
