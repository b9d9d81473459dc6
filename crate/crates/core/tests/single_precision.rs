//! The generic core instantiated at `f32`, with tolerances scaled to single precision.

use std::sync::Arc;

use num_complex::Complex;
use wedge_dirac::angular::{gram_matrix, solve_modes_numeric, AngularMode};
use wedge_dirac::fibers::{deficiency_probe, ProbeConfig};
use wedge_dirac::geometry::{Side, WedgeGeometry};
use wedge_dirac::grid::{inner_product, PolarGrid};
use wedge_dirac::wedge_op::{defect_element, defect_residual, sample_field, Derivatives};

#[test]
fn angular_spectrum_in_single_precision() {
    let geom = WedgeGeometry::<f32>::from_fraction(1, 3).unwrap();
    let roots = solve_modes_numeric(&geom, 4.6f32).unwrap();
    assert_eq!(roots.len(), 7);
    for (k, r) in (-3..=3).zip(&roots) {
        assert!((r - 1.5 * k as f32).abs() < 1e-4, "{k}: {r}");
    }
    assert!(gram_matrix(&geom, 4).max_deviation_from_identity() < 1e-5);
    for k in -4..=4 {
        let mode = AngularMode::new(geom, k);
        assert!(mode.boundary_residual(Side::Plus) < 1e-5);
        assert!(mode.boundary_residual(Side::Minus) < 1e-5);
    }
}

#[test]
fn defect_element_in_single_precision() {
    let geom = WedgeGeometry::<f32>::half_plane();
    let grid = Arc::new(PolarGrid::with_defaults(geom));
    let u = sample_field(&defect_element(&geom), &grid);
    let norm = inner_product(&u, &u).unwrap();
    assert!((norm - Complex::new(0.5f32, 0.0)).norm() < 1e-4, "{norm}");
    let pts: Vec<(f32, f32)> = (1..20).map(|i| (0.1 * i as f32, 0.3)).collect();
    assert!(defect_residual(&geom, &pts, Derivatives::Exact).unwrap() < 1e-5);
}

#[test]
fn deficiency_probe_in_single_precision() {
    let geom = WedgeGeometry::<f32>::half_plane();
    let cfg = ProbeConfig { rtol: 1e-5, fit_tolerance: 1e-2, ..ProbeConfig::default() };
    let radii: Vec<f32> = (1..50).map(|i| 0.2 * i as f32).collect();
    let d0 = deficiency_probe(0, &geom, &cfg, &radii).unwrap();
    assert_eq!((d0.n_plus, d0.n_minus), (0, 1));
    let d1 = deficiency_probe(1, &geom, &cfg, &radii).unwrap();
    assert_eq!((d1.n_plus, d1.n_minus), (0, 0));
}
