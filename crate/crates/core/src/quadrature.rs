//! Gauss–Legendre rules and composite rules on graded partitions.

use crate::error::{input, Result};
use crate::scalar::Real;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes are the roots of `P_n`, found by Newton iteration from the
    /// Chebyshev-like initial guesses `cos(π(i + 3/4)/(n + 1/2))`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return input("Gauss-Legendre rule needs at least one node");
        }
        let nf = T::count(n as i64);
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let eps = T::epsilon() * T::lit(4.0);
        for i in 0..n.div_ceil(2) {
            let mut x = (T::PI() * (T::count(i as i64) + T::lit(0.75)) / (nf + T::half())).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= eps {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != T::zero() {
                dp = d;
            }
            let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::half();
        let mid = (a + b) * T::half();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        self.mapped(a, b).fold(T::zero(), |acc, (x, w)| acc + w * f(x))
    }
}

/// `(P_n(x), P_n'(x))` via the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kf = T::count(k as i64);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::count(n as i64);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Breakpoints `0 < r_min = b₀ < b₁ < … < b_P = R_max` growing geometrically,
/// preceded by the vertex `0` so that the first panel is `[0, r_min]`.
pub fn geometric_breakpoints<T: Real>(r_min: T, r_max: T, panels: usize) -> Result<Vec<T>> {
    if panels == 0 {
        return input("need at least one radial panel");
    }
    if !(r_min > T::zero() && r_min < r_max && r_max.is_finite()) {
        return input(format!("radial range must satisfy 0 < r_min < r_max, got [{r_min}, {r_max}]"));
    }
    let ratio = (r_max / r_min).ln() / T::count(panels as i64);
    let mut breaks = Vec::with_capacity(panels + 2);
    breaks.push(T::zero());
    for i in 0..=panels {
        breaks.push(r_min * (ratio * T::count(i as i64)).exp());
    }
    *breaks.last_mut().expect("nonempty") = r_max;
    Ok(breaks)
}
