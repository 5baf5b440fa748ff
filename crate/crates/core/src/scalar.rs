//! Floating-point scalar abstraction for the pure-math layer.

use std::fmt::Debug;
use std::iter::Sum;

/// Floating-point scalar: `f32` or `f64`.
///
/// Entropies, typicality tests and rate formulas are generic over this
/// trait; everything that touches sampling or serialization is `f64`.
pub trait Scalar:
    num_traits::Float + num_traits::FromPrimitive + Sum + Debug + Send + Sync + 'static
{
    /// Shorthand for lossless-enough conversion from `f64` constants.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
