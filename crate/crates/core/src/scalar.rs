//! Scalar abstraction shared by the algebraic modules.
//!
//! Floating-point scalars decide "is this component zero" with a
//! scale-relative tolerance; exact rational scalars compare against zero
//! exactly, so ring laws can be checked with residual 0.

use num_rational::Ratio;
use num_traits::{Float, Num, Signed};
use std::fmt::Debug;

/// Relative tolerance for the zero-divisor test on `f64`.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

/// A field element usable as a paracomplex coordinate.
pub trait Scalar: Num + Signed + Copy + PartialOrd + Debug {
    /// True when `value` is zero relative to `scale` (a nonnegative magnitude).
    fn is_negligible(value: Self, scale: Self) -> bool;

    /// Lossy conversion used for residual reporting.
    fn as_f64(self) -> f64;

    fn two() -> Self {
        Self::one() + Self::one()
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn is_negligible(value: Self, scale: Self) -> bool {
                value.abs() <= $tol * (1.0 + scale)
            }

            fn as_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

float_scalar!(f64, ZERO_DIVISOR_TOL);
// 1e-12 is below f32 resolution; use a few ulps instead.
float_scalar!(f32, 8.0 * f32::EPSILON);

macro_rules! ratio_scalar {
    ($($i:ty),*) => {$(
        impl Scalar for Ratio<$i> {
            fn is_negligible(value: Self, _scale: Self) -> bool {
                num_traits::Zero::is_zero(&value)
            }

            fn as_f64(self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }
        }
    )*};
}

ratio_scalar!(i32, i64, i128);

/// Real scalar with transcendental functions; the floating-point subset of
/// [`Scalar`].
pub trait Real: Scalar + Float {
    fn from_f64(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("f64 constant fits")
    }

    /// Cube root of machine epsilon, the optimal central-difference step
    /// for unit-scale coordinates.
    fn fd_step() -> Self {
        Float::cbrt(Float::epsilon())
    }
}

impl Real for f32 {}
impl Real for f64 {}
