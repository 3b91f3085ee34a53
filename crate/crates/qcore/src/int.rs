//! Signed integer with a machine-word fast path.
//!
//! Values that fit in an `i64` are stored inline; every operation checks for
//! overflow and promotes to a heap-allocated [`BigInt`] when needed. Results are
//! demoted back to the inline form whenever they fit, so two equal values always
//! share one representation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, ParseBigIntError};
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
    Small(i64),
    /// Never holds a value inside the `i64` range.
    Big(BigInt),
}

/// Exact integer, inline when it fits in 64 bits.
#[derive(Clone)]
pub struct Int(Repr);

impl Int {
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(_))
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int(Repr::Small(v)),
            None => Int(Repr::Big(b)),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.sign() == num_bigint::Sign::Minus,
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int(Repr::Small(v))
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Int(Repr::Small(v as i64))
    }
}

impl From<i128> for Int {
    fn from(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int(Repr::Small(s)),
            Err(_) => Int(Repr::Big(BigInt::from(v))),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Int {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> BigInt {
        v.to_bigint()
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = ParseBigIntError;

    fn from_str(s: &str) -> Result<Int, ParseBigIntError> {
        match s.parse::<i64>() {
            Ok(v) => Ok(Int(Repr::Small(v))),
            Err(_) => s.parse::<BigInt>().map(Int::from_big),
        }
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    fn add(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return Int(Repr::Small(s));
            }
        }
        Int::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    fn sub(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                return Int(Repr::Small(s));
            }
        }
        Int::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return Int(Repr::Small(s));
            }
            return Int::from(*a as i128 * *b as i128);
        }
        Int::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int(Repr::Small(n)),
                None => Int(Repr::Big(-BigInt::from(*v))),
            },
            Repr::Big(b) => Int::from_big(-b.clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &'a Int) -> Int {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl<'a> AddAssign<&'a Int> for Int {
    fn add_assign(&mut self, rhs: &'a Int) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                *a = s;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl<'a> SubAssign<&'a Int> for Int {
    fn sub_assign(&mut self, rhs: &'a Int) {
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                *a = s;
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl<'a> MulAssign<&'a Int> for Int {
    fn mul_assign(&mut self, rhs: &'a Int) {
        *self = &*self * rhs;
    }
}

impl Zero for Int {
    fn zero() -> Int {
        Int(Repr::Small(0))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }
}

impl One for Int {
    fn one() -> Int {
        Int(Repr::Small(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let max = Int::from(i64::MAX);
        let one = Int::one();
        let over = &max + &one;
        assert!(!over.is_small());
        assert_eq!(over.to_bigint(), BigInt::from(i64::MAX) + 1);
        let back = &over - &one;
        assert!(back.is_small());
        assert_eq!(back, max);
    }

    #[test]
    fn multiplication_overflow_is_exact() {
        let a = Int::from(3_000_000_000i64);
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "9000000000000000000");
        let cube = &sq * &a;
        assert_eq!(cube.to_string(), "27000000000000000000000000000");
        assert!(!cube.is_small());
    }

    #[test]
    fn negating_min_promotes() {
        let m = Int::from(i64::MIN);
        let n = -&m;
        assert_eq!(n.to_bigint(), -BigInt::from(i64::MIN));
        assert_eq!(-&n, m);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-17", "123456789012345678901234567890"] {
            let v: Int = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn add_assign_promotes() {
        let mut a = Int::from(i64::MAX - 1);
        a += &Int::from(5);
        assert_eq!(a.to_bigint(), BigInt::from(i64::MAX) + 4);
        a -= &Int::from(10);
        assert!(a.is_small());
    }
}
