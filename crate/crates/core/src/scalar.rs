//! Scalar abstraction shared by every floating-point computation in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Exact quantities (norms, Haar measures, Monna images) never go through this
/// trait; they are computed as rationals in [`crate::padic`].
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// `p^e` for an integer prime and a real exponent.
    fn pow_prime(p: u32, e: Self) -> Self {
        Self::lit(p as f64).powf(e)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `exp(i·theta)`.
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Complex zero.
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Embed a real number in the complex plane.
pub fn creal<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}
