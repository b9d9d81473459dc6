//! Tensor-product polar quadrature grids over the truncated wedge and
//! spinor fields sampled on them.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::Spinor;
use crate::error::{input, Result};
use crate::geometry::WedgeGeometry;
use crate::quadrature::{geometric_breakpoints, GaussLegendre};
use crate::scalar::Real;

/// Discretisation parameters of a [`PolarGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub angular_nodes: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { r_min: 1e-6, r_max: 25.0, panels: 32, nodes_per_panel: 8, angular_nodes: 64 }
    }
}

/// Radial Gauss–Legendre panels on `[0, r_min] ∪ geometric partition of
/// [r_min, R_max]`, times a single Gauss–Legendre rule on `(−ω, ω)`.
///
/// Radial weights are for `dr`; the polar Jacobian `r` is applied by the
/// integration routines. No node sits at `r = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid<T> {
    geometry: WedgeGeometry<T>,
    spec: GridSpec,
    breaks: Vec<T>,
    r_nodes: Vec<T>,
    r_weights: Vec<T>,
    theta_nodes: Vec<T>,
    theta_weights: Vec<T>,
}

impl<T: Real> PolarGrid<T> {
    pub fn new(geometry: WedgeGeometry<T>, spec: GridSpec) -> Result<Self> {
        if spec.nodes_per_panel == 0 || spec.angular_nodes == 0 {
            return input("grid needs at least one node per panel and one angular node");
        }
        let breaks = geometric_breakpoints(T::lit(spec.r_min), T::lit(spec.r_max), spec.panels)?;
        let radial = GaussLegendre::new(spec.nodes_per_panel)?;
        let (mut r_nodes, mut r_weights) = (Vec::new(), Vec::new());
        for w in breaks.windows(2) {
            for (x, wt) in radial.mapped(w[0], w[1]) {
                r_nodes.push(x);
                r_weights.push(wt);
            }
        }
        let omega = geometry.omega();
        let angular = GaussLegendre::new(spec.angular_nodes)?;
        let (theta_nodes, theta_weights) = angular.mapped(-omega, omega).unzip();
        Ok(Self { geometry, spec, breaks, r_nodes, r_weights, theta_nodes, theta_weights })
    }

    pub fn with_defaults(geometry: WedgeGeometry<T>) -> Self {
        Self::new(geometry, GridSpec::default()).expect("default grid spec is valid")
    }

    pub fn geometry(&self) -> &WedgeGeometry<T> {
        &self.geometry
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Panel breakpoints, starting with `0` and ending with `R_max`.
    pub fn breakpoints(&self) -> &[T] {
        &self.breaks
    }

    pub fn r_nodes(&self) -> &[T] {
        &self.r_nodes
    }

    pub fn r_weights(&self) -> &[T] {
        &self.r_weights
    }

    pub fn theta_nodes(&self) -> &[T] {
        &self.theta_nodes
    }

    pub fn theta_weights(&self) -> &[T] {
        &self.theta_weights
    }

    pub fn n_r(&self) -> usize {
        self.r_nodes.len()
    }

    pub fn n_theta(&self) -> usize {
        self.theta_nodes.len()
    }

    pub fn len(&self) -> usize {
        self.n_r() * self.n_theta()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn r_max(&self) -> T {
        *self.breaks.last().expect("grid has breakpoints")
    }

    /// `(r, θ)` of every node, radial index major.
    pub fn nodes(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.r_nodes
            .iter()
            .flat_map(move |&r| self.theta_nodes.iter().map(move |&t| (r, t)))
    }

    /// `∫∫ f r dr dθ` over the truncated sector.
    pub fn integrate<F: FnMut(T, T) -> T>(&self, mut f: F) -> T {
        let mut acc = T::zero();
        for (&r, &wr) in self.r_nodes.iter().zip(&self.r_weights) {
            let mut inner = T::zero();
            for (&t, &wt) in self.theta_nodes.iter().zip(&self.theta_weights) {
                inner = inner + wt * f(r, t);
            }
            acc = acc + wr * r * inner;
        }
        acc
    }

    /// `∫ f dr` over `(0, R_max)` with the radial rule alone.
    pub fn integrate_radial<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.r_nodes
            .iter()
            .zip(&self.r_weights)
            .fold(T::zero(), |acc, (&r, &w)| acc + w * f(r))
    }

    /// `∫ f dθ` over `(−ω, ω)`.
    pub fn integrate_angular<F: FnMut(T) -> Complex<T>>(&self, mut f: F) -> Complex<T> {
        self.theta_nodes
            .iter()
            .zip(&self.theta_weights)
            .fold(Complex::zero(), |acc, (&t, &w)| acc + f(t) * w)
    }
}

/// Spinor samples at every node of a shared [`PolarGrid`].
#[derive(Debug, Clone)]
pub struct Spinor2Field<T> {
    grid: Arc<PolarGrid<T>>,
    values: Vec<Spinor<T>>,
}

impl<T: Real> Spinor2Field<T> {
    pub fn new(grid: Arc<PolarGrid<T>>, values: Vec<Spinor<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return input(format!(
                "field has {} samples but grid has {} nodes",
                values.len(),
                grid.len()
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn<F: FnMut(T, T) -> Spinor<T>>(grid: Arc<PolarGrid<T>>, mut f: F) -> Self {
        let values = grid.nodes().map(|(r, t)| f(r, t)).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: Arc<PolarGrid<T>>) -> Self {
        let values = vec![Spinor::zero(); grid.len()];
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<PolarGrid<T>> {
        &self.grid
    }

    pub fn values(&self) -> &[Spinor<T>] {
        &self.values
    }

    pub fn at(&self, i_r: usize, i_theta: usize) -> Spinor<T> {
        self.values[i_r * self.grid.n_theta() + i_theta]
    }

    /// Samples on the angular line at radial index `i_r`.
    pub fn ring(&self, i_r: usize) -> &[Spinor<T>] {
        let n = self.grid.n_theta();
        &self.values[i_r * n..(i_r + 1) * n]
    }

    pub fn shares_grid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        let values = self.values.iter().map(|v| v.scale(c)).collect();
        Self { grid: self.grid.clone(), values }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Spinor<T>, Spinor<T>) -> Spinor<T>) -> Result<Self> {
        if !self.shares_grid(other) {
            return input("fields live on different grids");
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { grid: self.grid.clone(), values })
    }

    pub fn norm_sqr(&self) -> T {
        inner_product(self, self).expect("same grid").re
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(Spinor::max_abs).fold(T::zero(), T::max)
    }
}

/// `∫∫ u·conj(v) r dr dθ`, linear in `u` and conjugate-linear in `v`.
pub fn inner_product<T: Real>(u: &Spinor2Field<T>, v: &Spinor2Field<T>) -> Result<Complex<T>> {
    if !u.shares_grid(v) {
        return input("inner product of fields on different grids");
    }
    let grid = &u.grid;
    let n_theta = grid.n_theta();
    let mut acc = Complex::zero();
    for (i, (&r, &wr)) in grid.r_nodes().iter().zip(grid.r_weights()).enumerate() {
        let mut ring = Complex::zero();
        for (j, &wt) in grid.theta_weights().iter().enumerate() {
            let k = i * n_theta + j;
            ring = ring + u.values[k].dot(&v.values[k]) * wt;
        }
        acc = acc + ring * (wr * r);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrates_to_sector_area() {
        for &omega in &[PI / 6.0, PI / 2.0, 0.9 * PI, PI - 1e-9] {
            let grid = PolarGrid::with_defaults(WedgeGeometry::new(omega).unwrap());
            let area = grid.integrate(|_, _| 1.0);
            assert!((area - omega * 625.0).abs() < 1e-12 * omega * 625.0 + 1e-12, "{area}");
        }
    }

    #[test]
    fn no_node_at_the_vertex() {
        let grid = PolarGrid::with_defaults(WedgeGeometry::<f64>::half_plane());
        assert!(grid.r_nodes().iter().all(|&r| r > 0.0));
        assert_eq!(grid.n_r(), 33 * 8);
        assert_eq!(grid.n_theta(), 64);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let g1 = Arc::new(PolarGrid::with_defaults(WedgeGeometry::<f64>::half_plane()));
        let g2 = Arc::new(PolarGrid::with_defaults(WedgeGeometry::new(1.0).unwrap()));
        let u = Spinor2Field::zeros(g1);
        let v = Spinor2Field::zeros(g2);
        assert!(inner_product(&u, &v).is_err());
        assert!(Spinor2Field::new(u.grid().clone(), vec![]).is_err());
    }

    #[test]
    fn exponential_radial_integral_is_resolved() {
        let grid = PolarGrid::with_defaults(WedgeGeometry::<f64>::half_plane());
        let v = grid.integrate_radial(|r| (-2.0 * r).exp());
        assert!((v - 0.5).abs() < 1e-12);
    }
}
