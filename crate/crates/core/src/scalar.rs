//! Scalar abstraction shared by every model in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the dynamics are evaluated in: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a literal into the scalar type.
    ///
    /// Every finite `f64` is representable (possibly rounded) in the
    /// implementing types, so this never fails for finite input.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite literal is representable")
    }

    /// Lossy widening used for error reporting and text output.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Unit step with `step(0) = 0`.
pub fn unit_step<T: Scalar>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else {
        T::zero()
    }
}
