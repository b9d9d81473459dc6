//! Acceptance suite: prints one `criterion N: PASS|FAIL` line per criterion
//! with the measured quantity, and exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wedge_dirac::angular::{gram_matrix, sigma_rad_conjugate, solve_modes_numeric};
use wedge_dirac::extensions::{
    m_deficiency, random_regular_part, symmetry_check, valley_mixing_report, ExtensionElement, ExtensionParam,
};
use wedge_dirac::fibers::{deficiency_probe, ProbeConfig};
use wedge_dirac::grid::PolarGrid;
use wedge_dirac::profiles::{RadialProfile, Windowed, ZeroProfile};
use wedge_dirac::verify::{boundary_integrand_check, polar_cartesian_check, RunConfig};
use wedge_dirac::wedge_op::{
    defect_element, defect_residual, fiber_intertwine_check, parseval_check, sample_field, u_star, Derivatives,
    ModeExpansion,
};
use wedge_dirac::Wedge;

const OMEGAS: [f64; 6] = [PI / 6.0, PI / 4.0, PI / 3.0, PI / 2.0, 3.0 * PI / 4.0, 0.9 * PI];

fn report(n: u32, pass: bool, detail: String) -> bool {
    println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    pass
}

fn grid(omega: f64) -> Arc<PolarGrid<f64>> {
    Arc::new(PolarGrid::with_defaults(Wedge::new(omega).unwrap()))
}

fn criterion_01_angular_spectrum() -> bool {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut counts_ok = true;
    for &omega in &OMEGAS {
        let geom = Wedge::new(omega).unwrap();
        let gap = PI / (2.0 * omega);
        let roots = solve_modes_numeric(&geom, 10.0 * gap + 0.25 * gap).unwrap();
        counts_ok &= roots.len() == 21;
        for k in -10..=10i64 {
            // independent oracle: zeros of sin(2λω) are λ = πk/(2ω)
            let oracle = PI * k as f64 / (2.0 * omega);
            let nearest = roots.iter().map(|r| (r - oracle).abs()).fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        1,
        counts_ok && worst <= 1e-8 && secs < 5.0,
        format!("max |root − πk/2ω| = {worst:.2e}, 21 roots per ω: {counts_ok}, {secs:.2} s"),
    )
}

fn criterion_02_orthonormal_basis() -> bool {
    let worst = OMEGAS
        .iter()
        .map(|&w| gram_matrix(&Wedge::new(w).unwrap(), 10).max_deviation_from_identity())
        .fold(0.0, f64::max);
    report(2, worst <= 1e-10, format!("max |G − I| = {worst:.2e}"))
}

fn criterion_03_radial_conjugation() -> bool {
    let mut worst: f64 = 0.0;
    for &omega in &OMEGAS {
        let geom = Wedge::new(omega).unwrap();
        for k in -10..=10 {
            for j in 0..256 {
                let theta = -omega + 2.0 * omega * j as f64 / 255.0;
                worst = worst.max(sigma_rad_conjugate(&geom, k, theta).unwrap().residual);
            }
        }
    }
    report(3, worst <= 1e-12, format!("max pointwise error = {worst:.2e}"))
}

fn criterion_04_polar_cartesian() -> bool {
    let mut worst: f64 = 0.0;
    for &omega in &[PI / 4.0, PI / 2.0, 2.5] {
        let cfg = RunConfig::new(omega).unwrap();
        worst = worst.max(polar_cartesian_check(&cfg, 100, 1e-3).unwrap().computed);
    }
    report(4, worst <= 1e-6, format!("max |apply_polar − apply_cartesian| = {worst:.2e} at h = 1e-3"))
}

fn criterion_05_boundary_integrand() -> bool {
    let mut worst: f64 = 0.0;
    for &omega in &OMEGAS {
        let cfg = RunConfig::new(omega).unwrap();
        worst = worst.max(boundary_integrand_check(&cfg, 100).unwrap().computed);
    }
    report(5, worst <= 1e-12, format!("max |((σ·n)u)·conj(v)| = {worst:.2e}"))
}

fn criterion_06_deficiency_indices() -> bool {
    let mut ok = true;
    let mut worst_exp: f64 = 0.0;
    let mut norm_err: f64 = 0.0;
    let mut sums = Vec::new();
    for &omega in &[PI / 6.0, PI / 2.0, 0.9 * PI] {
        let geom = Wedge::new(omega).unwrap();
        let g = grid(omega);
        let (mut np, mut nm) = (0, 0);
        for k in 0..=10u32 {
            let rep = deficiency_probe(k, &geom, &ProbeConfig::default(), g.r_nodes()).unwrap();
            np += rep.n_plus;
            nm += rep.n_minus;
            if k == 0 {
                ok &= (rep.n_plus, rep.n_minus) == (0, 1);
                let d = rep.defect_samples.unwrap();
                // oracle: ∫₀^∞ e^{−2r} dr = 1/2, and the samples are e^{−r}
                ok &= d.r.iter().zip(&d.values).all(|(r, v)| (v.re - (-r).exp()).abs() < 1e-15 && v.im == 0.0);
                let norm: f64 = d.values.iter().zip(g.r_weights()).map(|(v, w)| v.norm_sqr() * w).sum();
                norm_err = norm_err.max((norm - 0.5).abs());
            } else {
                ok &= (rep.n_plus, rep.n_minus) == (0, 0);
                let gamma = PI * k as f64 / (2.0 * omega);
                for s in &rep.signs {
                    worst_exp = worst_exp.max((s.exponent + gamma).abs());
                }
            }
        }
        sums.push((np, nm));
    }
    ok &= sums.iter().all(|&s| s == (0, 1));
    report(
        6,
        ok && worst_exp <= 0.05 && norm_err <= 1e-8,
        format!("summed indices {sums:?}, max |p + γ| = {worst_exp:.2e}, |‖e^(−r)‖² − 0.5| = {norm_err:.2e}"),
    )
}

fn criterion_07_defect_element() -> bool {
    let mut worst: f64 = 0.0;
    for &omega in &OMEGAS {
        let geom = Wedge::new(omega).unwrap();
        let mut pts = Vec::new();
        for i in 0..60 {
            let r = 0.05 + (20.0 - 0.05) * i as f64 / 59.0;
            for j in 0..11 {
                pts.push((r, -omega + 2.0 * omega * j as f64 / 10.0));
            }
        }
        worst = worst.max(defect_residual(&geom, &pts, Derivatives::Exact).unwrap());
    }
    let v = u_star(&Wedge::new(PI / 2.0).unwrap(), 1.0, 0.0).unwrap();
    let e = (-1.0f64).exp() / (2.0 * PI).sqrt();
    let closed = (v[0] - Complex::new(e, 0.0)).norm().max((v[1] + Complex::new(e, 0.0)).norm());
    report(
        7,
        worst <= 1e-12 && closed <= 1e-12,
        format!("max |(𝒟 + i)u⋆| = {worst:.2e}, closed-form error = {closed:.2e}"),
    )
}

fn criterion_08_fiber_intertwining() -> bool {
    let mut worst: f64 = 0.0;
    for &omega in &[PI / 2.0, 1.0, 2.7] {
        let g = grid(omega);
        let b = g.breakpoints();
        let f: Arc<dyn RadialProfile<f64>> = Arc::new(Windowed::new(b[20], b[31], 1.0, Complex::new(1.0, 0.0)).unwrap());
        let h: Arc<dyn RadialProfile<f64>> = Arc::new(Windowed::new(b[22], b[30], 0.0, Complex::new(0.0, 1.0)).unwrap());
        let zero: Arc<dyn RadialProfile<f64>> = Arc::new(ZeroProfile);
        for k in 0..=2 {
            worst = worst.max(fiber_intertwine_check(&g, k, [f.clone(), zero.clone()]).unwrap());
            worst = worst.max(fiber_intertwine_check(&g, k, [f.clone(), h.clone()]).unwrap());
        }
    }
    report(8, worst <= 1e-6, format!("max ‖W_k D̃ W_k⁻¹ f − d_k f‖ = {worst:.2e}, k ∈ {{0,1,2}}"))
}

fn criterion_09_parseval() -> bool {
    let mut worst: f64 = 0.0;
    for &omega in &OMEGAS {
        let geom = Wedge::new(omega).unwrap();
        let g = grid(omega);
        let f: Arc<dyn RadialProfile<f64>> =
            Arc::new(wedge_dirac::profiles::PowerExp::new(Complex::new(1.0, 0.0), 1.0, 1.0));
        let u = ModeExpansion::new(geom)
            .with_term(1, Complex::new(0.4, -0.1), f.clone())
            .with_term(-2, Complex::new(0.0, 0.8), f.clone())
            .with_term(2, Complex::new(-0.5, 0.0), f.clone())
            .with_term(-1, Complex::new(0.3, 0.3), f.clone());
        worst = worst.max(parseval_check(&sample_field(&u, &g), 2));
        worst = worst.max(parseval_check(&sample_field(&defect_element(&geom), &g), 0));
    }
    report(9, worst <= 1e-8, format!("max |Σ‖W_k u‖² − ‖u‖²| = {worst:.2e}"))
}

fn criterion_10_extensions() -> bool {
    let g = grid(1.0);
    let d = m_deficiency(&g).unwrap();
    let res = d.residual_plus.max(d.residual_minus);
    let pair_ok = (d.n_plus, d.n_minus) == (1, 1)
        && d.plus.first.max_abs() == 0.0
        && d.minus.second.max_abs() == 0.0
        && (d.plus.second.norm_sqr() - 0.5).abs() < 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst_sym: f64 = 0.0;
    let mut worst_mass: f64 = 0.0;
    for alpha in ExtensionParam::<f64>::circle(12) {
        let sing = ExtensionElement::singular(g.geometry(), alpha);
        let mut elements = vec![sing];
        for _ in 0..3 {
            let u1 = Arc::new(random_regular_part(&mut rng, &g, 3, 3).unwrap());
            let u2 = Arc::new(random_regular_part(&mut rng, &g, 3, 3).unwrap());
            elements.push(ExtensionElement::new(&g, u1, u2, alpha).unwrap());
        }
        for a in &elements {
            for b in &elements {
                worst_sym = worst_sym.max(symmetry_check(a, b, &g).unwrap().relative());
            }
        }
        let m = valley_mixing_report(alpha.value(), &g).unwrap();
        worst_mass = worst_mass.max((m.mass_first - 0.5).abs()).max((m.mass_second - 0.5).abs());
    }
    report(
        10,
        pair_ok && res <= 1e-12 && worst_sym <= 1e-8 && worst_mass <= 1e-8,
        format!(
            "indices (1,1): {pair_ok}, deficiency residual = {res:.2e}, scaled symmetry defect = {worst_sym:.2e}, valley mass error = {worst_mass:.2e}"
        ),
    )
}

fn main() {
    let criteria: [fn() -> bool; 10] = [
        criterion_01_angular_spectrum,
        criterion_02_orthonormal_basis,
        criterion_03_radial_conjugation,
        criterion_04_polar_cartesian,
        criterion_05_boundary_integrand,
        criterion_06_deficiency_indices,
        criterion_07_defect_element,
        criterion_08_fiber_intertwining,
        criterion_09_parseval,
        criterion_10_extensions,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
