//! Scalar abstraction for the numeric kernels.
//!
//! All linear algebra in this crate is written against [`Real`], so the same
//! kernels run at `f32` or `f64`. The crate root exposes concrete aliases
//! (`LieAlgebraF64`, ...) for the common case.

use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by every kernel in this crate.
pub trait Real: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

/// Lossy view of a residual as `f64`, for reports and error messages.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
