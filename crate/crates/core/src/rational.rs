//! Exact rational scalars.
//!
//! Every weight, threshold and exact-mode activation is a [`RationalScalar`].
//! Values whose lowest-terms numerator and denominator fit in an `i64` are
//! stored inline and combined through `i128` intermediates; anything larger
//! is promoted to an arbitrary-precision [`BigRational`]. The representation
//! is canonical (lowest terms, positive denominator, inline whenever it
//! fits), so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    /// Lowest terms, `den > 0`.
    Small { num: i64, den: i64 },
    /// Lowest terms and does not fit `Small`.
    Big(Box<BigRational>),
}

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalScalar(Repr);

const F64_EXACT_INT: i64 = 1 << 53;

impl RationalScalar {
    pub const ZERO: RationalScalar = RationalScalar(Repr::Small { num: 0, den: 1 });
    pub const ONE: RationalScalar = RationalScalar(Repr::Small { num: 1, den: 1 });

    /// Builds `num/den`, reducing to lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        RationalScalar(Repr::Small { num: n, den: 1 })
    }

    pub fn from_bigint_ratio(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    /// Exact conversion of a finite float (every finite `f64` is dyadic).
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        BigRational::from_float(x).map(Self::from_big)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Self::ZERO;
        }
        let g = num.gcd(&den);
        if g != 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => RationalScalar(Repr::Small { num, den }),
            _ => RationalScalar(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // `BigRational::new` and arithmetic results are already reduced.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => RationalScalar(Repr::Small { num, den }),
            _ => RationalScalar(Repr::Big(Box::new(r))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    /// `(num, den)` when the value fits the inline representation.
    pub fn as_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small { num, den } => Some((num, den)),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small { den: 1, .. })
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_floor(den)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    /// Nearest `f64` (correctly rounded).
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => {
                if num.abs() <= F64_EXACT_INT && *den <= F64_EXACT_INT {
                    *num as f64 / *den as f64
                } else {
                    num_rational::Ratio::new_raw(*num, *den)
                        .to_f64()
                        .unwrap_or(f64::NAN)
                }
            }
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Parses a decimal (`0.3`, `-1.25`, `2e-3`) or a `p/q` literal exactly.
    pub fn parse_decimal(s: &str) -> Result<Self, RationalParseError> {
        let t = s.trim();
        if t.contains('/') || !t.contains(['.', 'e', 'E']) {
            return t.parse();
        }
        let invalid = || RationalParseError::Invalid(s.to_string());
        let (mantissa, exp) = match t.find(['e', 'E']) {
            Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| invalid())?),
            None => (t, 0),
        };
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(invalid());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(invalid());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: BigInt = digits.parse().map_err(|_| invalid())?;
        if neg {
            num = -num;
        }
        let scale = exp - frac_part.len() as i32;
        let ten = BigInt::from(10u32);
        let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
        Ok(if scale >= 0 {
            Self::from_bigint_ratio(num * pow, BigInt::one())
        } else {
            Self::from_bigint_ratio(num, pow)
        })
    }
}

impl Default for RationalScalar {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for RationalScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for RationalScalar {
    fn from(r: BigRational) -> Self {
        Self::from_big(r)
    }
}

impl From<&RationalScalar> for BigRational {
    fn from(r: &RationalScalar) -> Self {
        r.to_big()
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `p/q` or an integer, with an optional leading sign on `p`.
impl FromStr for RationalScalar {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let invalid = || RationalParseError::Invalid(s.to_string());
        let int = |part: &str, signed: bool| -> Result<BigInt, RationalParseError> {
            let digits = if signed {
                part.strip_prefix(['-', '+']).unwrap_or(part)
            } else {
                part
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            part.parse::<BigInt>().map_err(|_| invalid())
        };
        let (num, den) = match t.split_once('/') {
            Some((p, q)) => (int(p, true)?, int(q, false)?),
            None => (int(t, true)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Self::from_bigint_ratio(num, den))
    }
}

impl Ord for RationalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for RationalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &RationalScalar {
    type Output = RationalScalar;

    fn add(self, rhs: &RationalScalar) -> RationalScalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: 0, .. }, _) => rhs.clone(),
            (_, Repr::Small { num: 0, .. }) => self.clone(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    RationalScalar::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    RationalScalar::from_i128(a * d + c * b, b * d)
                }
            }
            _ => RationalScalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Mul for &RationalScalar {
    type Output = RationalScalar;

    fn mul(self, rhs: &RationalScalar) -> RationalScalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: 0, .. }, _) | (_, Repr::Small { num: 0, .. }) => {
                RationalScalar::ZERO
            }
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                RationalScalar::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => RationalScalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;

    fn neg(self) -> RationalScalar {
        match &self.0 {
            Repr::Small { num, den } => RationalScalar::from_i128(-(*num as i128), *den as i128),
            Repr::Big(b) => RationalScalar::from_big(-(**b).clone()),
        }
    }
}

impl Sub for &RationalScalar {
    type Output = RationalScalar;

    fn sub(self, rhs: &RationalScalar) -> RationalScalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalScalar {
            type Output = RationalScalar;
            fn $method(self, rhs: RationalScalar) -> RationalScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalScalar> for RationalScalar {
            type Output = RationalScalar;
            fn $method(self, rhs: &RationalScalar) -> RationalScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        -&self
    }
}

impl AddAssign<&RationalScalar> for RationalScalar {
    fn add_assign(&mut self, rhs: &RationalScalar) {
        *self = &*self + rhs;
    }
}

impl<'a> Sum<&'a RationalScalar> for RationalScalar {
    fn sum<I: Iterator<Item = &'a RationalScalar>>(iter: I) -> Self {
        iter.fold(RationalScalar::ZERO, |acc, x| acc + x)
    }
}

impl Sum for RationalScalar {
    fn sum<I: Iterator<Item = RationalScalar>>(iter: I) -> Self {
        iter.fold(RationalScalar::ZERO, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> RationalScalar {
        RationalScalar::new(n, d)
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(2, 4).as_small(), Some((1, 2)));
        assert_eq!(r(3, -6).as_small(), Some((-1, 2)));
        assert_eq!(r(0, -7).as_small(), Some((0, 1)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("-1/4".parse::<RationalScalar>().unwrap().as_small(), Some((-1, 4)));
        assert_eq!("2/4".parse::<RationalScalar>().unwrap().as_small(), Some((1, 2)));
        assert_eq!("7".parse::<RationalScalar>().unwrap(), r(7, 1));
        assert_eq!(r(-3, 9).to_string(), "-1/3");
        assert_eq!(r(4, 2).to_string(), "2");
        assert!("1/0".parse::<RationalScalar>().is_err());
        assert!("1/-2".parse::<RationalScalar>().is_err());
        assert!("0.5".parse::<RationalScalar>().is_err());
        assert!("".parse::<RationalScalar>().is_err());
        assert!("--1".parse::<RationalScalar>().is_err());
    }

    #[test]
    fn decimal_literals() {
        assert_eq!(RationalScalar::parse_decimal("0.3").unwrap(), r(3, 10));
        assert_eq!(RationalScalar::parse_decimal("-1.25").unwrap(), r(-5, 4));
        assert_eq!(RationalScalar::parse_decimal("2e-3").unwrap(), r(1, 500));
        assert_eq!(RationalScalar::parse_decimal("3/10").unwrap(), r(3, 10));
        assert_eq!(RationalScalar::parse_decimal("1").unwrap(), r(1, 1));
        assert!(RationalScalar::parse_decimal("1.2.3").is_err());
        assert!(RationalScalar::parse_decimal(".").is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = r(i64::MAX, 1);
        let sum = &big + &big;
        assert!(sum.as_small().is_none());
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(back.as_small().is_some());
        let tiny = r(1, i64::MAX);
        let sq = &tiny * &tiny;
        assert!(sq.as_small().is_none());
        assert_eq!(&sq * &big, tiny);
        assert_eq!(-r(i64::MIN, 1), RationalScalar::from_bigint_ratio(BigInt::from(i64::MIN).abs(), BigInt::one()));
    }

    #[test]
    fn float_conversions() {
        assert_eq!(r(1, 5).to_f64(), 0.2);
        assert_eq!(r(-1, 3).to_f64(), -1.0 / 3.0);
        let x = 0.1f64;
        let q = RationalScalar::from_f64_exact(x).unwrap();
        assert_eq!(q.to_f64(), x);
        assert!(RationalScalar::from_f64_exact(f64::NAN).is_none());
        assert_eq!(RationalScalar::from_f64_exact(0.75).unwrap(), r(3, 4));
    }

    #[test]
    fn floor_rounds_toward_negative_infinity() {
        assert_eq!(r(7, 2).floor(), BigInt::from(3));
        assert_eq!(r(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(r(4, 1).floor(), BigInt::from(4));
    }

    fn small() -> impl Strategy<Value = RationalScalar> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| RationalScalar::new(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigrational(a in small(), b in small()) {
            let (ba, bb) = (BigRational::from(&a), BigRational::from(&b));
            prop_assert_eq!(BigRational::from(&(&a + &b)), &ba + &bb);
            prop_assert_eq!(BigRational::from(&(&a - &b)), &ba - &bb);
            prop_assert_eq!(BigRational::from(&(&a * &b)), &ba * &bb);
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        #[test]
        fn display_parse_round_trip(a in small(), b in small()) {
            let c = &a * &b;
            prop_assert_eq!(c.to_string().parse::<RationalScalar>().unwrap(), c);
        }
    }
}
