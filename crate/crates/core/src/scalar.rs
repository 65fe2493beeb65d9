//! Scalar abstraction. Every routine in the crate is generic over the real
//! field `T` and works with complex entries `Complex<T>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

/// Real floating-point type underlying all complex arithmetic: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;

#[inline]
pub fn re<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn im<T: Real>(x: T) -> C<T> {
    Complex::new(T::zero(), x)
}

#[inline]
pub fn c<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Largest modulus in a slice of complex numbers (zero for an empty slice).
pub fn max_abs<T: Real>(xs: &[C<T>]) -> T {
    xs.iter().fold(T::zero(), |m, z| m.max(z.norm()))
}

/// Default absolute tolerance on max-norm residuals.
pub fn default_tolerance<T: Real>() -> T {
    T::lit(1e-9)
}
