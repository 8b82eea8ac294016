//! Scalar bounds shared by the exact linear algebra.
//!
//! Everything in [`crate::exactla`] is written once against [`ExactInt`] and
//! instantiated with `i64`, `i128` or [`BigInt`]. Machine-width instances use
//! checked arithmetic and report [`crate::Error::Overflow`] instead of
//! wrapping, so a fixed-width result is either exact or absent.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

/// Integer-like ring element with exact division and checked arithmetic.
pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Converts a matrix entry. Never fails for the widths used here.
    fn from_entry(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every ExactInt")
    }

    fn to_bigint(&self) -> BigInt;
}

impl ExactInt for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `a * b - c * d`, or `None` on overflow.
#[inline]
pub(crate) fn mul_sub<T: ExactInt>(a: &T, b: &T, c: &T, d: &T) -> Option<T> {
    a.checked_mul(b)?.checked_sub(&c.checked_mul(d)?)
}

/// Non-negative gcd of a slice; zero for an all-zero slice.
pub(crate) fn content<T: ExactInt>(row: &[T]) -> T {
    let mut g = T::zero();
    for v in row {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
    }
    g
}
