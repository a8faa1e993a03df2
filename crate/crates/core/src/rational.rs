//! Exact rationals in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// An arbitrary-precision rational number.
///
/// The representation is always canonical: the denominator is positive and
/// coprime to the numerator, and zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ParseError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ParseError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational(BigRational::new(1.into(), 2.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// The denominator in lowest terms; integers have denominator 1.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The integer value, if this rational is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Rational(self.0.recip()))
    }

    /// True iff `lo < self < hi`.
    pub fn in_open_interval(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < self && self < hi
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseError> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Rational(whole.to_string()));
    }
    BigInt::from_str(digits).map_err(|_| ParseError::Rational(whole.to_string()))
}

impl FromStr for Rational {
    type Err = ParseError;

    /// Accepts `p`, `p/q`, with an optional leading `-` (ASCII or U+2212).
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s = input.trim();
        let (negative, body) = if let Some(rest) = s.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = s.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, s)
        };
        let (p, q) = match body.split_once('/') {
            Some((p, q)) => (parse_int(p.trim(), input)?, parse_int(q.trim(), input)?),
            None => (parse_int(body, input)?, BigInt::one()),
        };
        let p = if negative { -p } else { p };
        Rational::new(p, q)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `recip` to test first.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Convenience constructor for literals in code and tests; panics on `q == 0`.
pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominators() {
        assert_eq!(*q(5, 3).denominator(), BigInt::from(3));
        assert_eq!(*Rational::from(-7).denominator(), BigInt::from(1));
        assert_eq!(*q(-2, 6).denominator(), BigInt::from(3));
        assert_eq!(q(-2, 6), q(-1, 3));
        assert_eq!(*q(3, -6).denominator(), BigInt::from(2));
        assert!(q(3, -6).is_negative());
        assert_eq!(*Rational::zero().denominator(), BigInt::from(1));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<Rational>().unwrap(), q(3, 2));
        assert_eq!("-4/6".parse::<Rational>().unwrap().to_string(), "-2/3");
        assert_eq!("\u{2212}1/2".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert_eq!(" 0/5 ".parse::<Rational>().unwrap().to_string(), "0");
        assert_eq!("+3".parse::<Rational>().unwrap(), Rational::from(3));
        assert!(matches!("1/0".parse::<Rational>(), Err(ParseError::ZeroDenominator)));
        for bad in ["", "/", "1/", "a", "1.5", "--1", "1/-2", "1//2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn floor_ceil_interval() {
        assert_eq!(q(-1, 2).floor(), BigInt::from(-1));
        assert_eq!(q(-1, 2).ceil(), BigInt::from(0));
        assert!(q(-1, 2).in_open_interval(&Rational::from(-1), &Rational::zero()));
        assert!(!Rational::zero().in_open_interval(&Rational::from(-1), &Rational::zero()));
    }

    #[test]
    fn serde_uses_strings() {
        let json = serde_json::to_string(&q(-3, 4)).unwrap();
        assert_eq!(json, "\"-3/4\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q(-3, 4));
    }
}
