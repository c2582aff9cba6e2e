//! Floating-point scalar abstraction.
//!
//! Every algorithm in this crate is written against [`Scalar`] so the same
//! code runs in `f32` or `f64`. Tolerances are expressed as multiples of
//! `Scalar::epsilon()` where the quantity is precision-limited, and as
//! absolute constants where the contract fixes them.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Default
    + 'static
{
    /// Convert an `f64` constant. Panics only if the value is not
    /// representable, which cannot happen for the finite literals used here.
    #[inline]
    fn cst(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// Convert a `usize` exactly (grid sizes, node counts).
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits in scalar")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
