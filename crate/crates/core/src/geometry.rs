//! Wedge geometry `S_ω = {(r cos θ, r sin θ) : r > 0, |θ| < ω}`.

use serde::{Deserialize, Serialize};

use crate::algebra::{e_ang, Vec2};
use crate::error::{input, Result};
use crate::scalar::Real;

/// One of the two boundary rays `Γ±` at polar angle `±ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    /// `+1` on `Γ+`, `−1` on `Γ−`.
    pub fn sign<T: Real>(self) -> T {
        match self {
            Side::Plus => T::one(),
            Side::Minus => -T::one(),
        }
    }
}

/// A wedge of half-opening angle `ω ∈ (0, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WedgeGeometry<T> {
    omega: T,
}

impl<T: Real> WedgeGeometry<T> {
    pub fn new(omega: T) -> Result<Self> {
        if !omega.is_finite() || omega <= T::zero() || omega >= T::PI() {
            return input(format!("half-angle must lie in (0, π), got {omega}"));
        }
        Ok(Self { omega })
    }

    /// `ω = pπ/q`.
    pub fn from_fraction(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return input("denominator of ω = pπ/q must be positive");
        }
        Self::new(T::PI() * T::count(p as i64) / T::count(q as i64))
    }

    /// The half-plane `ω = π/2`.
    pub fn half_plane() -> Self {
        Self { omega: T::FRAC_PI_2() }
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// Polar angle of the boundary ray.
    pub fn boundary_angle(&self, side: Side) -> T {
        side.sign::<T>() * self.omega
    }

    /// Point of `Γ±` at distance `r` from the vertex.
    pub fn boundary_point(&self, side: Side, r: T) -> Vec2<T> {
        let t = self.boundary_angle(side);
        [r * t.cos(), r * t.sin()]
    }

    /// Outer unit normal on `Γ±`: `(−sin ω, ±cos ω)`.
    ///
    /// On `Γ+` the outward direction is the direction of increasing θ, on
    /// `Γ−` that of decreasing θ, so `n± = ±e_ang(±ω)`.
    pub fn outer_normal(&self, side: Side) -> Vec2<T> {
        let s = side.sign::<T>();
        let e = e_ang(self.boundary_angle(side));
        [s * e[0], s * e[1]]
    }

    /// Whether the polar angle lies in the open interval `(−ω, ω)`.
    pub fn contains_angle(&self, theta: T) -> bool {
        theta > -self.omega && theta < self.omega
    }

    pub fn contains(&self, x: Vec2<T>) -> bool {
        let r = x[0].hypot(x[1]);
        r > T::zero() && self.contains_angle(x[1].atan2(x[0]))
    }

    /// Euclidean distance from an interior point to `∂S_ω = Γ+ ∪ Γ− ∪ {0}`.
    pub fn distance_to_boundary(&self, x: Vec2<T>) -> T {
        Side::BOTH
            .iter()
            .map(|&side| {
                let t = self.boundary_angle(side);
                let dir = [t.cos(), t.sin()];
                let along = x[0] * dir[0] + x[1] * dir[1];
                if along <= T::zero() {
                    x[0].hypot(x[1])
                } else {
                    (x[0] * dir[1] - x[1] * dir[0]).abs()
                }
            })
            .fold(T::infinity(), T::min)
    }
}
