use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the evidence algebra is generic over.
///
/// Implemented for `f32` and `f64`. The tolerances scale with the precision of
/// the type: a mass function stored in `f32` cannot be normalized to 1e-9.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Allowed deviation of a mass or probability total from 1.
    fn normalization_tolerance() -> Self;

    /// Conflict level at or above which Dempster's rule is undefined.
    fn conflict_tolerance() -> Self;

    /// Lossless-enough conversion from an `f64` literal.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn normalization_tolerance() -> Self {
        1e-9
    }

    fn conflict_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn normalization_tolerance() -> Self {
        1e-5
    }

    fn conflict_tolerance() -> Self {
        1e-6
    }
}
