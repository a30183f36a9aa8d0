//! Coefficient traits: a ring scalar for the exterior algebra and a float
//! scalar for everything metric.

use num_traits::{Float, FromPrimitive, Num, NumAssign};
use std::fmt::{Debug, Display};
use std::ops::Neg;

/// Ring of coefficients for alternating tensors. Implemented by `f32`/`f64`,
/// `num_rational::BigRational` (exact identities), and `num_complex::Complex`
/// (holomorphic wedge expansion). Nothing here assumes an order or a norm.
pub trait Scalar: Clone + PartialEq + Debug + Num + NumAssign + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + NumAssign + Neg<Output = Self> {}

/// Floating-point scalar for geometry and optimization.
pub trait Real:
    Scalar + Float + FromPrimitive + Display + Debug + Default + Send + Sync + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for pulling f64 constants into a generic context.
#[inline]
pub fn r<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in Real scalar")
}
