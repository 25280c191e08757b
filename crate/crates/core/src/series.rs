//! Exact truncated q-series with a rational leading exponent, together with
//! the modular forms the rest of the crate is built from.
//!
//! A [`QExpansion`] stores `q^λ · Σ_{n < order} a_n q^n`. Every operation keeps
//! track of how far its result is known and never extends that range.

use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, rat, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "QExpansionRepr", try_from = "QExpansionRepr")]
pub struct QExpansion {
    leading_exponent: Rational,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct QExpansionRepr {
    #[serde(with = "rational::serde_rational")]
    leading_exponent: Rational,
    #[serde(with = "rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
    order: usize,
}

impl From<QExpansion> for QExpansionRepr {
    fn from(s: QExpansion) -> Self {
        let order = s.coeffs.len();
        QExpansionRepr { leading_exponent: s.leading_exponent, coeffs: s.coeffs, order }
    }
}

impl TryFrom<QExpansionRepr> for QExpansion {
    type Error = String;
    fn try_from(r: QExpansionRepr) -> std::result::Result<Self, String> {
        if r.order != r.coeffs.len() {
            return Err(format!("order {} does not match {} coefficients", r.order, r.coeffs.len()));
        }
        Ok(QExpansion::new(r.leading_exponent, r.coeffs))
    }
}

impl QExpansion {
    pub fn new(leading_exponent: Rational, coeffs: Vec<Rational>) -> Self {
        QExpansion { leading_exponent, coeffs }
    }

    pub fn from_integers(leading_exponent: Rational, coeffs: &[i64]) -> Self {
        Self::new(leading_exponent, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(leading_exponent: Rational, order: usize) -> Self {
        Self::new(leading_exponent, vec![Rational::zero(); order])
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        if let Some(first) = coeffs.first_mut() {
            *first = c;
        }
        Self::new(Rational::zero(), coeffs)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn leading_exponent(&self) -> &Rational {
        &self.leading_exponent
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `q^(λ+n)`, or `None` past the valid range.
    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// First exponent at which the series is no longer known.
    pub fn end(&self) -> Rational {
        &self.leading_exponent + int(self.order() as i64)
    }

    /// Coefficient of `q^e` for an absolute exponent `e`. Returns zero below
    /// the leading exponent and `None` outside the coset or past the end.
    pub fn coeff_at(&self, e: &Rational) -> Option<Rational> {
        let offset = e - &self.leading_exponent;
        if !offset.is_integer() {
            return None;
        }
        if offset.is_negative() {
            return Some(Rational::zero());
        }
        let n = rational::to_i64(&offset)? as usize;
        self.coeffs.get(n).cloned()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.leading_exponent.clone(), self.coeffs[..n].to_vec())
    }

    /// Moves leading zero coefficients into the exponent. The end of the
    /// valid range is unchanged. An identically zero series is returned as is.
    pub fn strip_leading_zeros(&self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None | Some(0) => self.clone(),
            Some(i) => Self::new(&self.leading_exponent + int(i as i64), self.coeffs[i..].to_vec()),
        }
    }

    /// Leading coefficient scaled to 1 (zero series returned unchanged).
    pub fn normalized(&self) -> Self {
        let s = self.strip_leading_zeros();
        if s.is_zero() {
            return s;
        }
        let c0 = s.coeffs[0].clone();
        s.scale(&c0.recip())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.leading_exponent.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `q^delta`.
    pub fn shift(&self, delta: &Rational) -> Self {
        Self::new(&self.leading_exponent + delta, self.coeffs.clone())
    }

    /// True when the two series share a coset and agree wherever both are known.
    pub fn agrees_with(&self, other: &QExpansion) -> bool {
        let diff = &other.leading_exponent - &self.leading_exponent;
        if !diff.is_integer() {
            return false;
        }
        let start = self.leading_exponent.clone().min(other.leading_exponent.clone());
        let end = self.end().min(other.end());
        let mut e = start;
        while e < end {
            if self.coeff_at(&e) != other.coeff_at(&e) {
                return false;
            }
            e += Rational::one();
        }
        true
    }

    fn aligned(&self, other: &QExpansion) -> Result<(Rational, usize, i64, i64)> {
        let diff = &other.leading_exponent - &self.leading_exponent;
        if !diff.is_integer() {
            return invalid(format!(
                "exponent cosets differ: {} and {}",
                self.leading_exponent, other.leading_exponent
            ));
        }
        let start = self.leading_exponent.clone().min(other.leading_exponent.clone());
        let end = self.end().min(other.end());
        let order = rational::to_i64(&(&end - &start)).unwrap_or(0).max(0) as usize;
        let off_a = rational::to_i64(&(&self.leading_exponent - &start)).unwrap_or(0);
        let off_b = rational::to_i64(&(&other.leading_exponent - &start)).unwrap_or(0);
        Ok((start, order, off_a, off_b))
    }

    pub fn add(&self, other: &QExpansion) -> Result<Self> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &QExpansion) -> Result<Self> {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &QExpansion, sign: &Rational) -> Result<Self> {
        let (start, order, off_a, off_b) = self.aligned(other)?;
        let get = |s: &QExpansion, off: i64, n: usize| -> Rational {
            let i = n as i64 - off;
            if i < 0 {
                Rational::zero()
            } else {
                s.coeffs.get(i as usize).cloned().unwrap_or_else(Rational::zero)
            }
        };
        let coeffs = (0..order).map(|n| get(self, off_a, n) + sign * get(other, off_b, n)).collect();
        Ok(Self::new(start, coeffs))
    }

    /// Cauchy product; the result is known to the shorter of the two orders.
    pub fn mul(&self, other: &QExpansion) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(&self.leading_exponent + &other.leading_exponent, coeffs)
    }

    /// `q d/dq` applied termwise.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a * (&self.leading_exponent + int(n as i64)))
            .collect();
        Self::new(self.leading_exponent.clone(), coeffs)
    }

    /// Rational power. The series must have leading coefficient 1 unless
    /// `alpha` is an integer; any leading exponent is allowed.
    pub fn pow(&self, alpha: &Rational) -> Result<Self> {
        let a = self.strip_leading_zeros();
        if a.is_zero() {
            if alpha.is_zero() {
                return Ok(QExpansion::one(self.order()));
            }
            if alpha.is_integer() && alpha.is_positive() {
                let n = rational::to_i64(alpha).unwrap_or(0) as usize;
                return Ok(QExpansion::zero(alpha * &a.leading_exponent, a.order() * n));
            }
            return invalid("power of a series with no known nonzero coefficient");
        }
        let c0 = a.coeffs[0].clone();
        let scale = if c0.is_one() {
            Rational::one()
        } else if alpha.is_integer() {
            let e = rational::to_i64(alpha)
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
            num_traits::pow::Pow::pow(c0.clone(), e)
        } else {
            return invalid(format!(
                "fractional power {alpha} of a series with leading coefficient {c0} is not rational"
            ));
        };
        let u: Vec<Rational> = a.coeffs.iter().map(|x| x / &c0).collect();
        let n = u.len();
        let mut b = vec![Rational::zero(); n];
        b[0] = Rational::one();
        let alpha1 = alpha + Rational::one();
        for m in 1..n {
            let mut s = Rational::zero();
            for j in 1..=m {
                if u[j].is_zero() {
                    continue;
                }
                let w = &alpha1 * int(j as i64) - int(m as i64);
                s += w * &u[j] * &b[m - j];
            }
            b[m] = s / int(m as i64);
        }
        let coeffs = b.into_iter().map(|x| x * &scale).collect();
        Ok(Self::new(&a.leading_exponent * alpha, coeffs))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.pow(&-Rational::one())
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * (", self.leading_exponent)?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(first && n + 1 == self.order()) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match n {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*q")?,
                _ => write!(f, "{mag}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{}))", self.order())
    }
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        // Σ_{j ≤ m} C(m+1, j) B_j = 0
        let mut s = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            s += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / int(m as i64 + 1));
    }
    b.swap_remove(n)
}

fn divisor_power_sum(n: usize, p: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| num_traits::pow(BigInt::from(d), p as usize)).sum()
}

/// Eisenstein series normalised with constant term `-B_w / w!`.
pub fn eisenstein(weight: u32, order: usize) -> Result<QExpansion> {
    if weight < 2 || weight % 2 != 0 {
        return invalid(format!("Eisenstein weight must be even and at least 2, got {weight}"));
    }
    let w = weight as u64;
    let fact_w = rational::factorial(w);
    let fact_w1 = rational::factorial(w - 1);
    let mut coeffs = Vec::with_capacity(order);
    for n in 0..order {
        if n == 0 {
            coeffs.push(-bernoulli(weight as usize) / Rational::from_integer(fact_w.clone()));
        } else {
            let s = divisor_power_sum(n, weight - 1) * BigInt::from(2);
            coeffs.push(Rational::new(s, fact_w1.clone()));
        }
    }
    Ok(QExpansion::new(Rational::zero(), coeffs))
}

/// `∏_{n ≥ 1} (1 - q^n)` by direct multiplication.
pub fn euler_product(order: usize) -> QExpansion {
    let mut c: Vec<BigInt> = vec![BigInt::zero(); order];
    if order == 0 {
        return QExpansion::new(Rational::zero(), vec![]);
    }
    c[0] = BigInt::one();
    for m in 1..order {
        for i in (m..order).rev() {
            let t = c[i - m].clone();
            c[i] -= t;
        }
    }
    QExpansion::new(Rational::zero(), c.into_iter().map(Rational::from_integer).collect())
}

/// `η^r = q^{r/24} ∏ (1 - q^n)^r`.
pub fn eta_power(r: &Rational, order: usize) -> QExpansion {
    euler_product(order)
        .pow(r)
        .expect("unit series admits every rational power")
        .shift(&(r / int(24)))
}

fn standard_e4(order: usize) -> QExpansion {
    eisenstein(4, order).expect("weight 4").scale(&int(720))
}

fn standard_e6(order: usize) -> QExpansion {
    eisenstein(6, order).expect("weight 6").scale(&int(-30240))
}

/// `J^{-1} = 1728/j`, built from η and the weight-4 Eisenstein series.
/// The discriminant is computed both as `η^24` and from `E4`, `E6` and the
/// two are compared.
pub fn j_inverse(order: usize) -> Result<QExpansion> {
    let n = order.max(1);
    let delta = eta_power(&int(24), n);
    let e4 = standard_e4(n + 1);
    let e6 = standard_e6(n + 1);
    let e4_cubed = e4.mul(&e4).mul(&e4);
    let other = e4_cubed.sub(&e6.mul(&e6))?.scale(&rat(1, 1728));
    if !delta.agrees_with(&other) || !other.coeffs[0].is_zero() {
        return Err(Error::InternalInconsistency(
            "η^24 and (E4^3 - E6^2)/1728 disagree".into(),
        ));
    }
    let unit = delta.shift(&-Rational::one()).mul(&e4_cubed.truncate(n).inverse()?);
    Ok(unit.scale(&int(1728)).shift(&Rational::one()).truncate(order))
}

pub fn series_mul(a: &QExpansion, b: &QExpansion) -> QExpansion {
    a.mul(b)
}

pub fn series_pow_rational(a: &QExpansion, alpha: &Rational) -> Result<QExpansion> {
    a.pow(alpha)
}

/// `∂_w f = q df/dq + w E_2 f`; the result is known to one term fewer.
pub fn modular_derivative(f: &QExpansion, weight: &Rational) -> QExpansion {
    let n = f.order().saturating_sub(1);
    let e2 = eisenstein(2, n).expect("weight 2");
    let d = f.truncate(n).q_derivative();
    let corr = e2.mul(&f.truncate(n)).scale(weight);
    d.add(&corr).expect("same coset").truncate(n)
}
