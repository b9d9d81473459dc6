//! Explicit Runge–Kutta integrators for small complex linear systems.
//!
//! States are fixed-size arrays of complex numbers. The adaptive integrator
//! hands every accepted state to an observer that may modify it in place,
//! which the deficiency probe uses to renormalise exponentially growing
//! solutions.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{numeric, Result};
use crate::scalar::Real;

pub type State<T, const N: usize> = [Complex<T>; N];

fn axpy<T: Real, const N: usize>(y: &State<T, N>, h: T, terms: &[(T, &State<T, N>)]) -> State<T, N> {
    let mut out = *y;
    for (c, k) in terms {
        let s = h * *c;
        for i in 0..N {
            out[i] = out[i] + k[i] * s;
        }
    }
    out
}

/// Classical fourth-order Runge–Kutta with `steps` equal steps from `t0` to `t1`.
pub fn rk4<T, F, const N: usize>(mut f: F, t0: T, t1: T, steps: usize, y0: State<T, N>) -> State<T, N>
where
    T: Real,
    F: FnMut(T, &State<T, N>) -> State<T, N>,
{
    let h = (t1 - t0) / T::count(steps.max(1) as i64);
    let (half, two, sixth) = (T::half(), T::lit(2.0), T::one() / T::lit(6.0));
    let mut y = y0;
    for n in 0..steps.max(1) {
        let t = t0 + h * T::count(n as i64);
        let k1 = f(t, &y);
        let k2 = f(t + h * half, &axpy(&y, h, &[(half, &k1)]));
        let k3 = f(t + h * half, &axpy(&y, h, &[(half, &k2)]));
        let k4 = f(t + h, &axpy(&y, h, &[(T::one(), &k3)]));
        y = axpy(&y, h, &[(sixth, &k1), (two * sixth, &k2), (two * sixth, &k3), (sixth, &k4)]);
    }
    y
}

/// Dormand–Prince 5(4) with standard step-size control.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
}

impl<T: Real> Default for Dopri5<T> {
    fn default() -> Self {
        Self { rtol: T::lit(1e-10), atol: T::lit(1e-14), max_steps: 200_000 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order solution minus embedded fourth-order solution
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

impl<T: Real> Dopri5<T> {
    /// Integrates from `t0` to `t1` (either direction).
    ///
    /// The integrator lands exactly on every time in `stops` (which must lie
    /// between `t0` and `t1`, in integration order). After each accepted step
    /// `observe(t, &mut y, hit_stop)` is called and may rescale `y`.
    pub fn integrate<F, O, const N: usize>(
        &self,
        mut f: F,
        t0: T,
        t1: T,
        y0: State<T, N>,
        stops: &[T],
        mut observe: O,
    ) -> Result<State<T, N>>
    where
        F: FnMut(T, &State<T, N>) -> State<T, N>,
        O: FnMut(T, &mut State<T, N>, bool),
    {
        let dir = if t1 >= t0 { T::one() } else { -T::one() };
        let span = (t1 - t0).abs();
        if span == T::zero() {
            return Ok(y0);
        }
        let c = C.map(T::lit);
        let a = A.map(|row| row.map(T::lit));
        let e = E.map(T::lit);
        let mut t = t0;
        let mut y = y0;
        let mut h = span * T::lit(1e-3);
        let mut next_stop = 0usize;
        let mut k = [[Complex::zero(); N]; 7];
        k[0] = f(t, &y);
        let tiny = T::epsilon() * T::lit(16.0) * (t0.abs() + t1.abs() + T::one());
        for _ in 0..self.max_steps {
            let target = stops.get(next_stop).copied().unwrap_or(t1);
            let remaining = (target - t) * dir;
            let mut step = h.min(remaining);
            let lands = step >= remaining - tiny;
            if lands {
                step = remaining;
            }
            let hs = step * dir;
            for s in 1..7 {
                let terms: Vec<(T, &State<T, N>)> = (0..s).map(|j| (a[s][j], &k[j])).collect();
                let ys = axpy(&y, hs, &terms);
                k[s] = f(t + c[s] * hs, &ys);
            }
            let terms: Vec<(T, &State<T, N>)> = (0..6).map(|j| (a[6][j], &k[j])).collect();
            let y_new = axpy(&y, hs, &terms);
            let mut err = T::zero();
            for i in 0..N {
                let mut ei: Complex<T> = Complex::zero();
                for s in 0..7 {
                    ei = ei + k[s][i] * (e[s] * hs);
                }
                let scale = self.atol + self.rtol * y[i].norm().max(y_new[i].norm());
                err = err + (ei.norm() / scale).powi(2);
            }
            let err = (err / T::count(N as i64)).sqrt();
            if !err.is_finite() {
                return numeric("non-finite error estimate in adaptive integration");
            }
            if err <= T::one() {
                t = if lands { target } else { t + hs };
                y = y_new;
                let hit = lands && next_stop < stops.len();
                if hit {
                    next_stop += 1;
                }
                observe(t, &mut y, hit);
                // FSAL: last stage evaluated at (t, y_new); recompute after rescaling
                k[0] = f(t, &y);
                if lands && !hit {
                    return Ok(y);
                }
            }
            let factor = if err == T::zero() {
                T::lit(5.0)
            } else {
                (T::lit(0.9) * err.powf(T::lit(-0.2))).max(T::lit(0.2)).min(T::lit(5.0))
            };
            h = step * factor;
            if h < tiny {
                return numeric(format!("step size underflow at t = {t}"));
            }
        }
        numeric(format!("adaptive integration exceeded {} steps", self.max_steps))
    }
}
