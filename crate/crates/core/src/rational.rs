//! Exact rational numbers.
//!
//! Every quotient the engine reports (ideal seats, residuals, bids,
//! multipliers) is a [`Rational`]. Hot comparisons inside the allocation
//! loops never build one; they compare integer fractions directly through
//! [`cmp_fractions`], which cross-multiplies in `u128` and cannot overflow for
//! `u64` operands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Compares `a_num / a_den` with `b_num / b_den` for positive denominators.
#[inline]
pub fn cmp_fractions(a_num: u128, a_den: u128, b_num: u128, b_den: u128) -> Ordering {
    debug_assert!(a_den > 0 && b_den > 0);
    let lhs = a_num
        .checked_mul(b_den)
        .expect("fraction comparison overflow");
    let rhs = b_num
        .checked_mul(a_den)
        .expect("fraction comparison overflow");
    lhs.cmp(&rhs)
}

/// An exact, always-normalized rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num / den`. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num.into(), den))
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

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        self.0.numer().div_ceil(self.0.denom())
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        Rational((&self.0 + &other.0) / BigInt::from(2))
    }

    /// `self / other`; panics on division by zero.
    pub fn div(&self, other: &Rational) -> Rational {
        assert!(!other.is_zero(), "rational division by zero");
        Rational(&self.0 / &other.0)
    }

    /// Decimal approximation, for human-readable output only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Renders a fixed-point approximation with `digits` decimals (round half
    /// away from zero).
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let rounded = scaled.abs().round().to_integer();
        let int_part = &rounded / &scale;
        let frac_part = &rounded % &scale;
        let sign = if self.0.is_negative() && !rounded.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
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

/// Parses `"7"`, `"-3/4"` or a plain decimal such as `"0.35"`.
impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("not a rational number: {s:?}");
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(Rational::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int: BigInt = if int.is_empty() || int == "-" {
                BigInt::zero()
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac_digits: BigInt = frac.parse().map_err(|_| bad())?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let magnitude = int.abs() * &scale + frac_digits;
            let num = if negative { -magnitude } else { magnitude };
            return Ok(Rational::new(num, scale));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: i128,
    den: i128,
}

/// Serialized as `{"num": <integer>, "den": <integer>}` in lowest terms.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let num = self
            .0
            .numer()
            .to_i128()
            .ok_or_else(|| S::Error::custom("rational numerator exceeds 128 bits"))?;
        let den = self
            .0
            .denom()
            .to_i128()
            .ok_or_else(|| S::Error::custom("rational denominator exceeds 128 bits"))?;
        Wire { num, den }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let Wire { num, den } = Wire::deserialize(deserializer)?;
        if den == 0 {
            return Err(D::Error::custom("rational with zero denominator"));
        }
        Ok(Rational::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let r = Rational::new(106, 20);
        assert_eq!(r.numer(), &BigInt::from(53));
        assert_eq!(r.denom(), &BigInt::from(10));
        assert_eq!(Rational::new(3, -6), Rational::new(-1, 2));
    }

    #[test]
    fn floor_and_ceil() {
        let r = Rational::new(53, 10);
        assert_eq!(r.floor(), BigInt::from(5));
        assert_eq!(r.ceil(), BigInt::from(6));
        let neg = Rational::new(-9, 10);
        assert_eq!(neg.floor(), BigInt::from(-1));
        assert_eq!(neg.ceil(), BigInt::from(0));
        let whole = Rational::from(6u64);
        assert_eq!(whole.floor(), whole.ceil());
    }

    #[test]
    fn fraction_comparison_at_u64_extremes() {
        let max = u64::MAX as u128;
        assert_eq!(
            cmp_fractions(max, max - 1, max - 1, max - 2),
            Ordering::Less
        );
        assert_eq!(cmp_fractions(53, 2, 106, 4), Ordering::Equal);
        assert_eq!(cmp_fractions(24, 1, 53, 2), Ordering::Less);
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/2".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("0.35".parse::<Rational>().unwrap(), Rational::new(7, 20));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!("11.4".parse::<Rational>().unwrap(), Rational::new(57, 5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Rational::new(53, 2).to_decimal(2), "26.50");
        assert_eq!(Rational::new(53, 6).to_decimal(3), "8.833");
        assert_eq!(Rational::new(-2, 3).to_decimal(2), "-0.67");
        assert_eq!(Rational::new(-1, 1000).to_decimal(2), "0.00");
        assert_eq!(Rational::from(7u64).to_decimal(0), "7");
    }

    #[test]
    fn json_shape_is_num_den() {
        let json = serde_json::to_string(&Rational::new(-6, 4)).unwrap();
        assert_eq!(json, r#"{"num":-3,"den":2}"#);
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::new(-3, 2));
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
    }
}
