//! Floating-point scalar abstraction.
//!
//! Everything numeric in this crate is generic over [`Real`]: any IEEE
//! float that `rustfft` can transform, i.e. `f32` or `f64`. Concrete `f64`
//! aliases for the main types live at the crate root.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Scalar the library computes with (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Debug + Display + LowerExp + rustfft::FftNum
{
    /// Pull an `f64` constant into the scalar type.
    fn of(x: f64) -> Self;
    fn of_usize(n: usize) -> Self;
    fn as_f64(self) -> f64;
}

impl Real for f32 {
    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn of_usize(n: usize) -> Self {
        n as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        f64::from(self)
    }
}

impl Real for f64 {
    #[inline]
    fn of(x: f64) -> Self {
        x
    }
    #[inline]
    fn of_usize(n: usize) -> Self {
        n as f64
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}
