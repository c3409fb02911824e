//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Real floating-point scalar the analysis is generic over (`f32` or `f64`).
///
/// Tolerances throughout the crate are written as `f64` literals and lowered
/// with [`Real::lit`]; on `f32` the tightest of them saturate at machine
/// precision.
pub trait Real: Float + FloatConst + NumAssign + Debug + Display + LowerExp + Default + Send + Sync + 'static {
    /// Converts an `f64` literal into this scalar type.
    fn lit(value: f64) -> Self;

    /// Widens to `f64` for reporting.
    fn as_f64(self) -> f64;
}

impl Real for f32 {
    #[inline]
    fn lit(value: f64) -> Self {
        value as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f64 {
    #[inline]
    fn lit(value: f64) -> Self {
        value
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn real<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// Smallest magnitude treated as a usable divisor: `1e-300` on `f64`,
/// the smallest normal value on narrower types.
#[inline]
pub(crate) fn tiny<T: Real>() -> T {
    T::lit(1e-300).max(T::min_positive_value())
}
