//! Verification suites and machine-readable reports.
//!
//! Every check compares a computed scalar with an expected one and passes
//! exactly when `|computed − expected| ≤ tolerance`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Spinor;
use crate::angular::{
    apply_j, eigenvalue, gram_matrix, sigma_rad_conjugate, solve_modes_numeric, AngularMode, AngularSamples,
};
use crate::error::{input, Result};
use crate::extensions::{
    action_gap, m_deficiency, random_regular_part, singular_action_residual, symmetry_check,
    valley_conjugation_check, valley_mixing_report, ActionSign, ExtensionElement, ExtensionParam,
};
use crate::fibers::{deficiency_probe, ProbeConfig};
use crate::geometry::{Side, WedgeGeometry};
use crate::grid::{GridSpec, PolarGrid};
use crate::profiles::{PowerExp, RadialProfile, Windowed};
use crate::wedge_op::{
    apply_cartesian, apply_polar, boundary_integrand, check_bc, defect_element, defect_residual,
    defect_residual_shifted, fiber_intertwine_check, fiber_norm_sqr, fiber_project, parseval_check,
    sample_field, singularity_profile, u_star, BoundaryTrace, Derivatives, FiberData, GaussianSpinor,
    InPolar, ModeExpansion,
};

/// Parameters shared by all suites.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub omega: f64,
    /// Human-readable source of `omega`, e.g. `"1*pi/2"`.
    pub omega_label: String,
    pub kmax: u32,
    pub grid: GridSpec,
    /// Relative tolerance of the adaptive integrator in the deficiency probe.
    pub ode_rtol: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(omega: f64) -> Result<Self> {
        let cfg = Self {
            omega,
            omega_label: format!("{omega}"),
            kmax: 10,
            grid: GridSpec::default(),
            ode_rtol: 1e-10,
            seed: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `ω = pπ/q`.
    pub fn from_fraction(p: u32, q: u32) -> Result<Self> {
        let geom = WedgeGeometry::<f64>::from_fraction(p, q)?;
        let mut cfg = Self::new(geom.omega())?;
        cfg.omega_label = format!("{p}*pi/{q}");
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        WedgeGeometry::new(self.omega)?;
        if !(self.grid.r_min > 0.0 && self.grid.r_min < self.grid.r_max) {
            return input(format!(
                "need 0 < r_min < r_max, got r_min = {}, r_max = {}",
                self.grid.r_min, self.grid.r_max
            ));
        }
        if self.grid.panels == 0 || self.grid.nodes_per_panel == 0 || self.grid.angular_nodes == 0 {
            return input("grid sizes must be positive");
        }
        if !(self.ode_rtol > 0.0 && self.ode_rtol < 1e-2) {
            return input(format!("integrator tolerance must lie in (0, 1e-2), got {}", self.ode_rtol));
        }
        Ok(())
    }

    pub fn geometry(&self) -> WedgeGeometry<f64> {
        WedgeGeometry::new(self.omega).expect("validated")
    }

    pub fn polar_grid(&self) -> Result<Arc<PolarGrid<f64>>> {
        Ok(Arc::new(PolarGrid::new(self.geometry(), self.grid)?))
    }

    pub fn probe(&self) -> ProbeConfig {
        ProbeConfig {
            r_min: self.grid.r_min,
            r_max: self.grid.r_max,
            rtol: self.ode_rtol,
            ..ProbeConfig::default()
        }
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// One verified quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub inputs: BTreeMap<String, f64>,
    pub computed: f64,
    pub expected: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(check_id: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        let abs_error = (computed - expected).abs();
        Self {
            check_id: check_id.into(),
            inputs: BTreeMap::new(),
            computed,
            expected,
            abs_error,
            tolerance,
            pass: abs_error <= tolerance,
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.inputs.insert(key.to_owned(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub omega: f64,
    pub omega_label: String,
    pub kmax: u32,
    pub grid: GridSpec,
    pub ode_rtol: f64,
    pub seed: u64,
    pub alpha: Option<[f64; 2]>,
    pub toolkit_version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub provenance: Provenance,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(cfg: &RunConfig, alpha: Option<Complex<f64>>, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        Self {
            provenance: Provenance {
                omega: cfg.omega,
                omega_label: cfg.omega_label.clone(),
                kmax: cfg.kmax,
                grid: cfg.grid,
                ode_rtol: cfg.ode_rtol,
                seed: cfg.seed,
                alpha: alpha.map(|a| [a.re, a.im]),
                toolkit_version: env!("CARGO_PKG_VERSION").to_owned(),
            },
            summary: Summary { total: checks.len(), passed, failed: checks.len() - passed },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Eigenvalues, orthonormality, radial conjugation and boundary conditions
/// of the angular modes with `|k| ≤ kmax`.
pub fn angular_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let geom = cfg.geometry();
    let kmax = cfg.kmax as i64;
    let mut out = Vec::new();
    let lambda_max = eigenvalue(&geom, kmax) + PI / (8.0 * cfg.omega);
    let roots = solve_modes_numeric(&geom, lambda_max)?;
    out.push(
        CheckRecord::new("angular.root_count", roots.len() as f64, (2 * kmax + 1) as f64, 0.0)
            .with("omega", cfg.omega),
    );
    for k in -kmax..=kmax {
        let exact = eigenvalue(&geom, k);
        let nearest = roots
            .iter()
            .copied()
            .min_by(|a, b| (a - exact).abs().total_cmp(&(b - exact).abs()))
            .unwrap_or(f64::NAN);
        out.push(CheckRecord::new("angular.eigenvalue", nearest, exact, 1e-8).with("k", k as f64));
    }
    out.push(
        CheckRecord::new("angular.gram", gram_matrix(&geom, cfg.kmax).max_deviation_from_identity(), 0.0, 1e-10)
            .with("kmax", kmax as f64),
    );
    let mut conj: f64 = 0.0;
    let mut bc: f64 = 0.0;
    for k in -kmax..=kmax {
        for j in 0..256 {
            let theta = -cfg.omega + 2.0 * cfg.omega * (j as f64 + 0.5) / 256.0;
            conj = conj.max(sigma_rad_conjugate(&geom, k, theta)?.residual);
        }
        let mode = AngularMode::new(geom, k);
        bc = bc.max(mode.boundary_residual(Side::Plus)).max(mode.boundary_residual(Side::Minus));
    }
    out.push(CheckRecord::new("angular.radial_conjugation", conj, 0.0, 1e-12).with("angles", 256.0));
    out.push(CheckRecord::new("angular.boundary_conditions", bc, 0.0, 1e-12));
    let mut j_res: f64 = 0.0;
    for k in -kmax.min(3)..=kmax.min(3) {
        let mode = AngularMode::new(geom, k);
        let samples = AngularSamples::from_fn(&geom, 4001, |t| mode.eval(t));
        let applied = apply_j(&samples)?;
        for (i, v) in applied.iter().enumerate() {
            j_res = j_res.max((*v - samples.values[i] * mode.lambda).max_abs());
        }
    }
    out.push(CheckRecord::new("angular.j_eigen_fd", j_res, 0.0, 1e-4).with("samples", 4001.0));
    Ok(out)
}

/// Deficiency indices of every fiber `k ≤ kmax` and their sum.
pub fn fiber_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let geom = cfg.geometry();
    let grid = cfg.polar_grid()?;
    let probe = cfg.probe();
    let mut out = Vec::new();
    let (mut sum_plus, mut sum_minus) = (0u32, 0u32);
    for k in 0..=cfg.kmax {
        let rep = deficiency_probe(k, &geom, &probe, grid.r_nodes())?;
        sum_plus += rep.n_plus;
        sum_minus += rep.n_minus;
        let kf = k as f64;
        let expected_minus = if k == 0 { 1.0 } else { 0.0 };
        out.push(CheckRecord::new("fiber.n_plus", rep.n_plus as f64, 0.0, 0.0).with("k", kf));
        out.push(CheckRecord::new("fiber.n_minus", rep.n_minus as f64, expected_minus, 0.0).with("k", kf));
        if let Some(samples) = &rep.defect_samples {
            let norm = fiber_norm_sqr(&grid, &FiberData::Scalar(samples.clone()));
            out.push(CheckRecord::new("fiber.defect_norm_sqr", norm, 0.5, 1e-8).with("k", kf));
        }
        for s in &rep.signs {
            out.push(
                CheckRecord::new("fiber.exponent", s.exponent, -rep.gamma, 0.05)
                    .with("k", kf)
                    .with("eps", s.eps as f64)
                    .with("gamma", rep.gamma)
                    .with("fit_residual", s.fit_residual),
            );
        }
    }
    out.push(CheckRecord::new("fiber.sum_n_plus", sum_plus as f64, 0.0, 0.0).with("kmax", cfg.kmax as f64));
    out.push(CheckRecord::new("fiber.sum_n_minus", sum_minus as f64, 1.0, 0.0).with("kmax", cfg.kmax as f64));
    Ok(out)
}

/// Sample points `(r, θ)` with `r ∈ [0.05, 20]` on a tensor grid.
fn defect_points(omega: f64) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..40 {
        let r = 0.05 * (400.0f64).powf(i as f64 / 39.0);
        for j in 0..9 {
            pts.push((r, -omega + 2.0 * omega * j as f64 / 8.0));
        }
    }
    pts
}

/// Closed form, norm, defect equation and fiber content of `u⋆`.
pub fn defect_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let geom = cfg.geometry();
    let grid = cfg.polar_grid()?;
    let mut out = Vec::new();
    let v = u_star(&geom, 1.0, 0.0)?;
    let expected = (-1.0f64).exp() / (2.0 * cfg.omega.sqrt());
    let err = (v[0] - Complex::new(expected, 0.0)).norm().max((v[1] + Complex::new(expected, 0.0)).norm());
    out.push(CheckRecord::new("defect.closed_form", err, 0.0, 1e-12).with("r", 1.0).with("theta", 0.0));
    let star = defect_element(&geom);
    let field = sample_field(&star, &grid);
    out.push(CheckRecord::new("defect.norm_sqr", field.norm_sqr(), 0.5, 1e-8));
    let pts = defect_points(cfg.omega);
    out.push(CheckRecord::new("defect.residual_exact", defect_residual(&geom, &pts, Derivatives::Exact)?, 0.0, 1e-12));
    let fd_pts: Vec<_> = pts.iter().copied().filter(|&(r, t)| r >= 0.5 && t.abs() < cfg.omega).collect();
    out.push(
        CheckRecord::new(
            "defect.residual_fd",
            defect_residual(&geom, &fd_pts, Derivatives::CentralDifference { h: 1e-3 })?,
            0.0,
            1e-5,
        )
        .with("h", 1e-3),
    );
    let wrong = defect_residual_shifted(&geom, &[(1.0, 0.0)], -Complex::i(), Derivatives::Exact)?;
    out.push(CheckRecord::new("defect.wrong_sign_residual", wrong, 2.0 * v.norm(), 1e-12).with("r", 1.0));
    let radii: Vec<f64> = grid.r_nodes().to_vec();
    let mut bc: f64 = 0.0;
    for side in Side::BOTH {
        bc = bc.max(check_bc(&geom, &BoundaryTrace::of_field(&star, &geom, side, &radii))?.phase_form);
    }
    out.push(CheckRecord::new("defect.boundary_condition", bc, 0.0, 1e-12));
    let target = 1.0 / (2.0 * cfg.omega).sqrt();
    let mut prof: f64 = 0.0;
    for &(r, t) in &pts {
        prof = prof.max((singularity_profile(&geom, r, t)? - target).abs());
    }
    out.push(CheckRecord::new("defect.singularity_profile", prof, 0.0, 1e-12));
    let p0 = fiber_project(&field, 0);
    let mut proj: f64 = 0.0;
    for (i, &r) in grid.r_nodes().iter().enumerate() {
        proj = proj.max((p0.component(i, 0) - Complex::new((-r).exp(), 0.0)).norm());
    }
    out.push(CheckRecord::new("defect.fiber0_profile", proj, 0.0, 1e-10));
    let p1 = fiber_project(&field, 1);
    let off = (0..grid.n_r()).map(|i| p1.abs_sqr(i).sqrt()).fold(0.0, f64::max);
    out.push(CheckRecord::new("defect.fiber1_profile", off, 0.0, 1e-10));
    out.push(CheckRecord::new("defect.parseval", parseval_check(&field, 0), 0.0, 1e-8).with("K", 0.0));
    Ok(out)
}

/// Rows `r, θ, Re u₁, Im u₁, Re u₂, Im u₂` of `u⋆` on every grid node.
pub fn defect_field_rows(cfg: &RunConfig) -> Result<Vec<[f64; 6]>> {
    let geom = cfg.geometry();
    let grid = cfg.polar_grid()?;
    grid.nodes()
        .map(|(r, t)| {
            let v = u_star(&geom, r, t)?;
            Ok([r, t, v[0].re, v[0].im, v[1].re, v[1].im])
        })
        .collect()
}

/// Rows `r, θ, valley, Re, Im, Re, Im` of `M_{α,ω}(u⋆, αu⋆)` on every grid node.
pub fn singular_action_rows(cfg: &RunConfig, alpha: Complex<f64>) -> Result<Vec<[f64; 7]>> {
    let grid = cfg.polar_grid()?;
    let param = ExtensionParam::new(alpha)?;
    let w = ExtensionElement::singular(grid.geometry(), param);
    let m = crate::extensions::m_alpha_apply(&w, &grid, ActionSign::Adjoint)?;
    let mut rows = Vec::with_capacity(2 * grid.len());
    for (idx, (r, t)) in grid.nodes().enumerate() {
        for (valley, f) in [(1.0, &m.first), (2.0, &m.second)] {
            let v = f.values()[idx];
            rows.push([r, t, valley, v[0].re, v[0].im, v[1].re, v[1].im]);
        }
    }
    Ok(rows)
}

/// Number of random element pairs per `α` in the extension suite.
pub const SYMMETRY_SAMPLES: usize = 3;

fn symmetry_records(
    cfg: &RunConfig,
    grid: &Arc<PolarGrid<f64>>,
    alpha: ExtensionParam<f64>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<CheckRecord>> {
    let geom = *grid.geometry();
    let a = alpha.value();
    let arg = a.arg();
    let mut out = Vec::new();
    let sing = ExtensionElement::singular(&geom, alpha);
    let d = symmetry_check(&sing, &sing, grid)?;
    out.push(CheckRecord::new("extension.symmetry_singular", d.relative(), 0.0, 1e-8).with("alpha_arg", arg));
    let kmax = cfg.kmax.min(3) as i64;
    for n in 0..SYMMETRY_SAMPLES {
        let element = |rng: &mut ChaCha8Rng| -> Result<ExtensionElement<f64>> {
            let u1 = Arc::new(random_regular_part(rng, grid, 3, kmax)?);
            let u2 = Arc::new(random_regular_part(rng, grid, 3, kmax)?);
            ExtensionElement::new(grid, u1, u2, alpha)
        };
        let w = element(rng)?;
        let w2 = element(rng)?;
        for (label, other) in [("singular", &sing), ("random", &w2)] {
            let d = symmetry_check(&w, other, grid)?;
            out.push(
                CheckRecord::new(format!("extension.symmetry_{label}_pair"), d.relative(), 0.0, 1e-8)
                    .with("alpha_arg", arg)
                    .with("sample", n as f64),
            );
        }
    }
    Ok(out)
}

/// Deficiency pair of `M_ω`, symmetry of `M_{α,ω}` on random elements,
/// valley masses, injectivity in `α` and the `σ₃` valley conjugation.
pub fn extension_checks(cfg: &RunConfig, alpha: Complex<f64>, alphas_for_symmetry: &[ExtensionParam<f64>]) -> Result<Vec<CheckRecord>> {
    let param = ExtensionParam::new(alpha)?;
    let grid = cfg.polar_grid()?;
    let geom = *grid.geometry();
    let mut out = Vec::new();
    let d = m_deficiency(&grid)?;
    out.push(CheckRecord::new("extension.n_plus", d.n_plus as f64, 1.0, 0.0));
    out.push(CheckRecord::new("extension.n_minus", d.n_minus as f64, 1.0, 0.0));
    out.push(CheckRecord::new("extension.deficiency_residual_plus", d.residual_plus, 0.0, 1e-12));
    out.push(CheckRecord::new("extension.deficiency_residual_minus", d.residual_minus, 0.0, 1e-12));
    out.push(CheckRecord::new("extension.plus_first_block", d.plus.first.max_abs(), 0.0, 0.0));
    out.push(CheckRecord::new("extension.minus_second_block", d.minus.second.max_abs(), 0.0, 0.0));
    let mix = valley_mixing_report(alpha, &grid)?;
    out.push(CheckRecord::new("extension.valley_mass_first", mix.mass_first, 0.5, 1e-8).with("alpha_arg", alpha.arg()));
    out.push(CheckRecord::new("extension.valley_mass_second", mix.mass_second, 0.5, 1e-8).with("alpha_arg", alpha.arg()));
    out.push(CheckRecord::new(
        "extension.singular_action",
        singular_action_residual(param, &grid, ActionSign::Adjoint)?,
        0.0,
        1e-12,
    ));
    for other in [-alpha, alpha * Complex::i()] {
        let gap = action_gap(param, ExtensionParam::new(other)?, &grid)?;
        out.push(
            CheckRecord::new("extension.injectivity_gap", gap, (other - alpha).norm() / 2f64.sqrt(), 1e-8)
                .with("alpha2_arg", other.arg()),
        );
    }
    let mut rng = cfg.rng(7);
    let traces: Vec<Complex<f64>> =
        (0..16).map(|_| Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
    let field = random_gaussian(&mut rng, &geom);
    let pts = random_interior_points(&mut rng, &geom, 20, 0.0);
    let vc = valley_conjugation_check(&geom, &traces, &InPolar(&field), &pts)?;
    out.push(CheckRecord::new("extension.valley_conjugation_bc", vc.bc_residual, 0.0, 1e-12));
    out.push(CheckRecord::new("extension.valley_conjugation_operator", vc.operator_residual, 0.0, 1e-12));
    let mut rng = cfg.rng(11);
    for &a in alphas_for_symmetry {
        out.extend(symmetry_records(cfg, &grid, a, &mut rng)?);
    }
    Ok(out)
}

fn random_gaussian(rng: &mut ChaCha8Rng, geom: &WedgeGeometry<f64>) -> GaussianSpinor<f64> {
    let r = rng.gen_range(0.5..2.0);
    let t = rng.gen_range(-geom.omega()..geom.omega());
    GaussianSpinor {
        amplitude: [
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ],
        center: [r * t.cos(), r * t.sin()],
        width: rng.gen_range(1.5..3.0),
    }
}

/// Random `(r, θ)` with `r ∈ [0.2, 3]` whose Cartesian point lies farther
/// than `clearance` from the boundary.
fn random_interior_points(
    rng: &mut ChaCha8Rng,
    geom: &WedgeGeometry<f64>,
    n: usize,
    clearance: f64,
) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let r = rng.gen_range(0.2..3.0);
        let t = rng.gen_range(-geom.omega()..geom.omega());
        if geom.distance_to_boundary([r * t.cos(), r * t.sin()]) > clearance {
            pts.push((r, t));
        }
    }
    pts
}

/// Change-of-variables check: finite-difference Cartesian `𝒟u` against the
/// polar expression with exact derivatives at `n` random interior points.
pub fn polar_cartesian_check(cfg: &RunConfig, n: usize, h: f64) -> Result<CheckRecord> {
    let geom = cfg.geometry();
    let mut rng = cfg.rng(1);
    let mut worst: f64 = 0.0;
    let pts = random_interior_points(&mut rng, &geom, n, 2.5 * h);
    for &(r, t) in &pts {
        let u = random_gaussian(&mut rng, &geom);
        let cart = apply_cartesian(&u, [r * t.cos(), r * t.sin()], h, &geom)?;
        let polar = apply_polar(&InPolar(&u), &geom, r, t, Derivatives::Exact)?;
        worst = worst.max((cart - polar).norm());
    }
    Ok(CheckRecord::new("wedge.polar_cartesian", worst, 0.0, 1e-6).with("points", n as f64).with("h", h))
}

/// `|((σ·n)u)·conj(v)|` for random boundary-condition-satisfying pairs at
/// `n` random boundary points.
pub fn boundary_integrand_check(cfg: &RunConfig, n: usize) -> Result<CheckRecord> {
    let geom = cfg.geometry();
    let mut rng = cfg.rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
        let p = crate::algebra::phase(geom.boundary_angle(side));
        let pick = |rng: &mut ChaCha8Rng| {
            let a = Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            Spinor::new(a, -(p * a))
        };
        let (u, v) = (pick(&mut rng), pick(&mut rng));
        worst = worst.max(boundary_integrand(&geom, side, u, v).norm());
    }
    Ok(CheckRecord::new("wedge.boundary_integrand", worst, 0.0, 1e-12).with("points", n as f64))
}

fn windowed(grid: &PolarGrid<f64>, lo: f64, hi: f64, power: f64, amp: Complex<f64>) -> Result<Arc<dyn RadialProfile<f64>>> {
    let snap = |x: f64| {
        grid.breakpoints()
            .iter()
            .copied()
            .filter(|&b| b > 0.0)
            .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
            .expect("grid has breakpoints")
    };
    Ok(Arc::new(Windowed::new(snap(lo), snap(hi), power, amp)?))
}

/// Intertwining residuals `‖W_k D̃ W_k⁻¹ f − d_k f‖` for `k = 0, 1, 2`.
pub fn intertwining_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let grid = cfg.polar_grid()?;
    let one = Complex::new(1.0, 0.0);
    let f1 = windowed(&grid, 0.1, 8.0, 1.0, one)?;
    let f2 = windowed(&grid, 0.3, 5.0, 0.0, Complex::new(0.5, -1.0))?;
    let zero: Arc<dyn RadialProfile<f64>> = Arc::new(crate::profiles::ZeroProfile);
    let mut out = Vec::new();
    for k in 0..=2u32 {
        for (label, second) in [("first", zero.clone()), ("pair", f2.clone())] {
            if k == 0 && label == "pair" {
                continue;
            }
            let res = fiber_intertwine_check(&grid, k, [f1.clone(), second])?;
            out.push(CheckRecord::new(format!("wedge.intertwine_{label}"), res, 0.0, 1e-6).with("k", k as f64));
        }
    }
    Ok(out)
}

/// Parseval identity on band-limited fields and Pythagoras for a component
/// outside the band.
pub fn parseval_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let geom = cfg.geometry();
    let grid = cfg.polar_grid()?;
    let re = |c: f64| Complex::new(c, 0.0);
    let f: Arc<dyn RadialProfile<f64>> = Arc::new(PowerExp::new(re(1.0), 1.0, 1.0));
    let g: Arc<dyn RadialProfile<f64>> = Arc::new(PowerExp::new(re(1.0), 0.5, 1.5));
    let band = ModeExpansion::new(geom)
        .with_term(1, Complex::new(0.7, 0.2), f.clone())
        .with_term(-2, Complex::new(-0.3, 1.1), g.clone())
        .with_term(0, re(0.4), g.clone())
        .with_term(2, Complex::new(0.0, -0.6), f.clone());
    let u = sample_field(&band, &grid);
    let mut out = vec![CheckRecord::new("wedge.parseval_band", parseval_check(&u, 2), 0.0, 1e-8).with("K", 2.0)];
    let extra_coeff = Complex::new(0.5, 0.5);
    let with_extra = band.clone().with_term(3, extra_coeff, f.clone());
    let u3 = sample_field(&with_extra, &grid);
    // ∫₀^∞ r² e^{−2r} dr = 1/4
    let mass = extra_coeff.norm_sqr() * 0.25;
    out.push(CheckRecord::new("wedge.parseval_outside_band", parseval_check(&u3, 2), mass, 1e-8).with("K", 2.0));
    let star = sample_field(&defect_element(&geom), &grid);
    out.push(CheckRecord::new("wedge.parseval_defect", parseval_check(&star, 0), 0.0, 1e-8).with("K", 0.0));
    Ok(out)
}

/// Sanity check of the polar expression on `(f/√r) φ₁` against the fiber
/// formula, evaluated pointwise.
fn fiber_formula_check(cfg: &RunConfig) -> Result<CheckRecord> {
    let geom = cfg.geometry();
    let f: Arc<dyn RadialProfile<f64>> = Arc::new(PowerExp::new(Complex::new(1.0, 0.0), 1.0, 1.0));
    let v = ModeExpansion::new(geom).with_term(1, Complex::new(1.0, 0.0), f.clone());
    let gamma = eigenvalue(&geom, 1);
    let mode_m1 = AngularMode::new(geom, -1);
    let mut worst: f64 = 0.0;
    for &(r, t) in &defect_points(cfg.omega) {
        let d = apply_polar(&v, &geom, r, t, Derivatives::Exact)?;
        // D̃(f/√r φ₁) = −i (f′ − γ f/r)/√r · φ_{−1}
        let coeff = (f.derivative(r) - f.value(r) * (gamma / r)) * Complex::new(0.0, -1.0) / r.sqrt();
        let expected = mode_m1.eval(t) * coeff;
        worst = worst.max((d - expected).norm());
    }
    Ok(CheckRecord::new("wedge.fiber_formula_k1", worst, 0.0, 1e-12))
}

/// Every suite combined, with the extension symmetry sweep over twelve
/// equally spaced `α ∈ 𝕋`.
pub fn verify_all_checks(cfg: &RunConfig, alpha: Complex<f64>) -> Result<Vec<CheckRecord>> {
    let mut out = angular_checks(cfg)?;
    out.extend(fiber_checks(cfg)?);
    out.extend(defect_checks(cfg)?);
    out.push(polar_cartesian_check(cfg, 100, 1e-3)?);
    out.push(boundary_integrand_check(cfg, 100)?);
    out.push(fiber_formula_check(cfg)?);
    out.extend(intertwining_checks(cfg)?);
    out.extend(parseval_checks(cfg)?);
    out.extend(extension_checks(cfg, alpha, &ExtensionParam::circle(12))?);
    Ok(out)
}
