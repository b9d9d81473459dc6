//! Numerical toolkit for the two-dimensional Dirac operator
//! `D_ω = −i(σ·∇)` on the wedge `S_ω = {(r cos θ, r sin θ) : r > 0, |θ| < ω}`
//! with the flipped infinite-mass boundary conditions
//! `u₂ = −e^{±iω} u₁` on the rays `θ = ±ω`.
//!
//! The crate covers
//!
//! * the spin-orbit operator `J_ω` and its eigenpairs ([`angular`]),
//! * the radial fiber operators `d_k` and their deficiency indices ([`fibers`]),
//! * the operator in Cartesian and polar form, boundary traces, the defect
//!   element `u⋆` and the fiber transforms ([`wedge_op`]),
//! * the two-valley operator and its self-adjoint extensions `M_{α,ω}`
//!   ([`extensions`]),
//! * verification suites producing serialisable reports ([`verify`]).
//!
//! All numerics are generic over [`scalar::Real`]; the aliases below fix the
//! scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod angular;
pub mod error;
pub mod extensions;
pub mod fibers;
pub mod geometry;
pub mod grid;
pub mod ode;
pub mod profiles;
pub mod quadrature;
pub mod scalar;
pub mod verify;
pub mod wedge_op;

pub use error::{Error, Result};

/// Complex scalar.
pub type C64 = num_complex::Complex<f64>;
pub type Spinor = algebra::Spinor<f64>;
pub type Matrix2 = algebra::ComplexMatrix2<f64>;
pub type Wedge = geometry::WedgeGeometry<f64>;
pub type Grid = grid::PolarGrid<f64>;
pub type Field = grid::Spinor2Field<f64>;
pub type Mode = angular::AngularMode<f64>;
pub type Fiber = fibers::FiberOperator<f64>;
pub type Deficiency = fibers::DeficiencyReport<f64>;
pub type Expansion = wedge_op::ModeExpansion<f64>;
pub type Alpha = extensions::ExtensionParam<f64>;
pub type Element = extensions::ExtensionElement<f64>;
