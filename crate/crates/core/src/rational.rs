//! Exact rational helpers shared by the series and classification code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};
use std::str::FromStr;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "num/den" or "num".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.contains('/') {
        let r = Rational::from_str(s).ok()?;
        Some(r)
    } else {
        BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

/// Canonical string form: "num/den", or "num" for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Representative of `r` modulo 1 in [0, 1).
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // huge numerators and denominators: scale both down first
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

pub fn denominator_u64(r: &Rational) -> Option<u64> {
    r.denom().to_u64()
}

/// Reduced fraction in lowest terms is guaranteed by `BigRational`; this
/// returns the positive denominator of `frac(r)`.
pub fn reduced_denominator(r: &Rational) -> BigInt {
    frac(r).denom().clone()
}

pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn binomial_rational(alpha: &Rational, n: usize) -> Rational {
    let mut c = Rational::one();
    for j in 0..n {
        c = c * (alpha - int(j as i64)) / int(j as i64 + 1);
    }
    c
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, m| acc * BigInt::from(m))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}
