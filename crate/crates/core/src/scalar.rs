//! Scalar abstraction shared by the analytic side of the crate.
//!
//! Everything that only needs real arithmetic (orthogonal polynomials,
//! kernels, limit laws, quadrature, Fredholm determinants) is generic over
//! [`Real`], which `f32` and `f64` implement. Recurrences whose coefficients
//! are rational additionally accept any [`Field`], which lets the same code
//! run in exact `BigRational` arithmetic.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssignOps, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite conversion")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Ring with division where every small integer is representable.
///
/// Implemented automatically for `f32`, `f64` and `num_rational::BigRational`.
pub trait Field: Clone + Num + FromPrimitive + Debug {}

impl<T: Clone + Num + FromPrimitive + Debug> Field for T {}

/// Natural log of the gamma function, evaluated in double precision.
pub fn ln_gamma<T: Real>(x: T) -> T {
    T::lit(statrs::function::gamma::ln_gamma(x.as_f64()))
}
