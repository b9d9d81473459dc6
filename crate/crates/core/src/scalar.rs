//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::Serialize;

/// Real floating point type the toolkit can run on (`f32` or `f64`).
///
/// All tolerances quoted in tests and reports assume `f64`; `f32` is
/// supported for the closed-form algebra and coarse smoke runs.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Serialize
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts an integer count or index into `Self`.
    #[inline]
    fn count(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable in scalar type")
    }

    /// `0.5`, used often enough to deserve a name.
    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f32 {}
impl Real for f64 {}
