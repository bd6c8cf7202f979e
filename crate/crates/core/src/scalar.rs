//! Scalar abstraction shared by every formula in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};
use xprec::Df64;

/// Real scalar usable by the spectrum and bound formulas.
///
/// Implemented for `f64` and for the double-double [`Df64`]. Single precision
/// is deliberately absent: SI noise spectra sit near 1e-60 and underflow `f32`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Signed + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal exactly.
    fn lit(x: f64) -> Self;

    /// Lossy conversion back to `f64`.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn lit(x: f64) -> Self {
        x
    }
}

impl Real for Df64 {
    fn lit(x: f64) -> Self {
        Df64::from(x)
    }
}
