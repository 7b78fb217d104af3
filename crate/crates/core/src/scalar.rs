//! Floating-point scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};

/// Real scalar the interferometer math is written against (`f32` or `f64`).
///
/// Besides the usual float operations each implementation carries the
/// tolerances used for invariant checks, since a bound that is sensible for
/// `f64` is unreachable in `f32`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssignOps + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance for state norms, axis norms, Hermiticity and unitarity.
    fn invariant_tol() -> Self;

    /// Fringe offsets at or below this value are treated as a vanishing
    /// signal and the visibility is reported as zero.
    fn degenerate_tol() -> Self;

    /// Converts an `f64` literal. Every `f64` is representable (possibly
    /// rounded) in the supported scalar types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f64 {
    fn invariant_tol() -> Self {
        1e-12
    }

    fn degenerate_tol() -> Self {
        1e-15
    }
}

impl Scalar for f32 {
    fn invariant_tol() -> Self {
        1e-5
    }

    fn degenerate_tol() -> Self {
        1e-7
    }
}
