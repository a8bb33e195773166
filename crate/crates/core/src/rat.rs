//! Exact rational scalars and their extension by `±∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(value: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Rat {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64`; used only by numeric paths.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    /// Exact value of a finite `f64`. Non-finite input yields `None`.
    pub fn from_f64(value: f64) -> Option<Rat> {
        BigRational::from_float(value).map(Rat)
    }

    /// Simplest continued-fraction convergent of `value` within `tol`.
    /// Non-finite input yields `None`.
    pub fn approximate(value: f64, tol: f64) -> Option<Rat> {
        if !value.is_finite() {
            return None;
        }
        let tol = tol.max(f64::EPSILON * value.abs());
        let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
        let mut x = value;
        for _ in 0..64 {
            let a = x.floor();
            let ai = BigInt::from(a as i64);
            let p2 = &ai * &p1 + &p0;
            let q2 = &ai * &q1 + &q0;
            let approx = Rat::from_big(p2.clone(), q2.clone());
            if (approx.to_f64() - value).abs() <= tol || x - a == 0.0 {
                return Some(approx);
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            x = 1.0 / (x - a);
            if !x.is_finite() || x.abs() > 1e15 {
                break;
            }
        }
        Rat::from_f64(value)
    }

    /// Arithmetic mean of a nonempty slice.
    pub fn mean(values: &[Rat]) -> Rat {
        assert!(!values.is_empty(), "mean of empty slice");
        let sum = values.iter().fold(Rat::zero(), |acc, v| &acc + v);
        sum / Rat::int(values.len() as i64)
    }

    /// Canonical text form: `p` for integers, `p/q` otherwise.
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

impl From<i64> for Rat {
    fn from(value: i64) -> Rat {
        Rat::int(value)
    }
}

impl From<u64> for Rat {
    fn from(value: u64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<BigInt> for Rat {
    fn from(value: BigInt) -> Rat {
        Rat(BigRational::from_integer(value))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = RatParseError;

    fn from_str(s: &str) -> Result<Rat, RatParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RatParseError::Empty);
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str, signed: bool| -> Result<BigInt, RatParseError> {
            let digits = if signed {
                t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t)
            } else {
                t
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(RatParseError::Malformed(s.to_string()));
            }
            t.trim_start_matches('+')
                .parse::<BigInt>()
                .map_err(|_| RatParseError::Malformed(s.to_string()))
        };
        let numer = parse_int(num, true)?;
        let denom = match den {
            Some(d) => parse_int(d, false)?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(RatParseError::ZeroDenominator(s.to_string()));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($Op:ident, $op:ident) => {
        impl $Op<&Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$op(&rhs.0))
            }
        }
        impl $Op<Rat> for Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                Rat(self.0.$op(rhs.0))
            }
        }
        impl $Op<&Rat> for Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                Rat(self.0.$op(&rhs.0))
            }
        }
        impl $Op<Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                Rat((&self.0).$op(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// Greatest common divisor of two positive machine integers.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// A point of the extended real line with a rational finite part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    fn rank(&self) -> u8 {
        match self {
            ExtRat::NegInf => 0,
            ExtRat::Finite(_) => 1,
            ExtRat::PosInf => 2,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &ExtRat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &ExtRat) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Neg for &ExtRat {
    type Output = ExtRat;
    fn neg(self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Finite(r) => ExtRat::Finite(-r),
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(value: Rat) -> ExtRat {
        ExtRat::Finite(value)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::PosInf => f.write_str("inf"),
            ExtRat::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<ExtRat, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.trim() {
            "-inf" => Ok(ExtRat::NegInf),
            "inf" | "+inf" => Ok(ExtRat::PosInf),
            other => other
                .parse()
                .map(ExtRat::Finite)
                .map_err(serde::de::Error::custom),
        }
    }
}
