//! The coefficient ring abstraction.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::int::Int;

/// An exact commutative ring usable as the coefficient type of a [`QSeries`].
///
/// Implemented for [`Int`], [`BigInt`] and [`BigRational`]. The `as_word`
/// hook lets multiplication switch to a 128-bit accumulator when every input
/// coefficient fits in a machine word.
///
/// [`QSeries`]: crate::QSeries
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_wide(v: i128) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn parse_decimal(s: &str) -> Option<Self>;

    /// The value as an `i64` when it is an integer that fits.
    fn as_word(&self) -> Option<i64> {
        None
    }
}

impl Coeff for Int {
    fn from_i64(v: i64) -> Self {
        Int::from(v)
    }
    fn from_wide(v: i128) -> Self {
        Int::from(v)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn as_word(&self) -> Option<i64> {
        self.to_i64()
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_wide(v: i128) -> Self {
        BigInt::from(v)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn as_word(&self) -> Option<i64> {
        self.to_i64()
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_wide(v: i128) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
    fn as_word(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_word_view_requires_integrality() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(half.as_word(), None);
        assert_eq!(BigRational::from_i64(-4).as_word(), Some(-4));
        assert!(<BigRational as Coeff>::parse_decimal("3/6").unwrap() == half);
    }
}
