//! Floating-point scalar abstraction for the numerical kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar the Fourier and linear-algebra code is generic over.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Default relative threshold for deciding numerical rank.
    fn rank_tolerance() -> Self;

    /// Lossless-enough conversion from `f64` for constants.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant fits the scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn rank_tolerance() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn rank_tolerance() -> Self {
        1e-4
    }
}
