//! Weight, fusion and exponent bookkeeping for affine sl(2) at level k.
//!
//! Labels are Dynkin labels `0..=k`; `μ` in an intertwiner set `Ξ_λ` indexes
//! the modules `L(k, μ)` whose traces make up a vector-valued form.

use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, rat, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Central charge `3k/(k+2)`.
pub fn central_charge(k: u32) -> Rational {
    rat(3 * k as i64, k as i64 + 2)
}

/// Conformal weight `μ(μ+2)/(4(k+2))` of the highest-weight space of `L(k, μ)`.
pub fn conformal_weight(k: u32, mu: u32) -> Rational {
    let mu = mu as i64;
    rat(mu * (mu + 2), 4 * (k as i64 + 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub level: u32,
    #[serde(with = "rational::serde_rational")]
    pub central_charge: Rational,
    #[serde(with = "rational::serde_rational_vec")]
    pub weights: Vec<Rational>,
}

impl LevelData {
    pub fn new(k: u32) -> Self {
        LevelData {
            level: k,
            central_charge: central_charge(k),
            weights: (0..=k).map(|mu| conformal_weight(k, mu)).collect(),
        }
    }
}

fn check_label(k: u32, label: u32, name: &str) -> Result<()> {
    if label > k {
        return invalid(format!("label {name} = {label} exceeds level {k}"));
    }
    Ok(())
}

fn check_even(lambda: u32) -> Result<()> {
    if lambda % 2 != 0 {
        return invalid(format!("λ = {lambda} is odd, so Ξ_λ is empty"));
    }
    Ok(())
}

/// Fusion coefficient `N_{λμ}^ν` (0 or 1).
pub fn fusion_coefficient(k: u32, lambda: u32, mu: u32, nu: u32) -> Result<u32> {
    check_label(k, lambda, "λ")?;
    check_label(k, mu, "μ")?;
    check_label(k, nu, "ν")?;
    Ok(fusion_unchecked(k, lambda, mu, nu))
}

pub(crate) fn fusion_unchecked(k: u32, a: u32, b: u32, c: u32) -> u32 {
    let (a, b, c, k) = (a as i64, b as i64, c as i64, k as i64);
    let ok = (a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c) % 2 == 0;
    ok as u32
}

/// Labels `μ` with `N_{λμ}^μ = 1`: `λ/2 ≤ μ ≤ k − λ/2` for even `λ`, empty for odd.
pub fn xi_set(k: u32, lambda: u32) -> Result<Vec<u32>> {
    check_label(k, lambda, "λ")?;
    if lambda % 2 != 0 {
        return Ok(vec![]);
    }
    Ok((lambda / 2..=k - lambda / 2).collect())
}

fn even_xi(k: u32, lambda: u32) -> Result<Vec<u32>> {
    check_label(k, lambda, "λ")?;
    check_even(lambda)?;
    xi_set(k, lambda)
}

/// Leading exponents `h_μ − c/24` for `μ ∈ Ξ_λ`, in increasing `μ`.
pub fn leading_exponents(k: u32, lambda: u32) -> Result<Vec<Rational>> {
    let c24 = central_charge(k) / int(24);
    Ok(even_xi(k, lambda)?.into_iter().map(|mu| conformal_weight(k, mu) - &c24).collect())
}

/// Diagonal data of `ρ_λ(T)` together with the multiplier weight `h_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSignature {
    pub level: u32,
    pub lambda: u32,
    pub dimension: usize,
    pub labels: Vec<u32>,
    /// `r_μ` reduced into `[0, 1)`.
    #[serde(with = "rational::serde_rational_vec")]
    pub t_exponents: Vec<Rational>,
    /// Integers with `raw r_μ = t_exponents[i] + t_offsets[i]`.
    pub t_offsets: Vec<i64>,
    #[serde(with = "rational::serde_rational")]
    pub multiplier_weight: Rational,
}

impl RepSignature {
    /// Unreduced exponents `h_μ − c/24 − h_λ/12`.
    pub fn raw_exponents(&self) -> Vec<Rational> {
        self.t_exponents.iter().zip(&self.t_offsets).map(|(r, o)| r + int(*o)).collect()
    }
}

pub fn rho_t(k: u32, lambda: u32) -> Result<RepSignature> {
    let labels = even_xi(k, lambda)?;
    let h_lambda = conformal_weight(k, lambda);
    let shift = &h_lambda / int(12);
    let raw: Vec<Rational> = leading_exponents(k, lambda)?.into_iter().map(|e| e - &shift).collect();
    let t_exponents: Vec<Rational> = raw.iter().map(rational::frac).collect();
    let t_offsets = raw
        .iter()
        .zip(&t_exponents)
        .map(|(r, f)| rational::to_i64(&(r - f)).expect("integer offset"))
        .collect();
    Ok(RepSignature {
        level: k,
        lambda,
        dimension: labels.len(),
        labels,
        t_exponents,
        t_offsets,
        multiplier_weight: h_lambda,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MultiplierGenerator {
    S,
    T,
    ST,
}

/// Phase exponent of `ν_r` on a generator: the value is `e(result)`.
/// The representative is taken in `(−1/2, 1/2]`.
pub fn multiplier(r: &Rational, generator: MultiplierGenerator) -> Rational {
    let raw = match generator {
        MultiplierGenerator::T => r / int(12),
        MultiplierGenerator::S => -r / int(4),
        MultiplierGenerator::ST => -r / int(6),
    };
    let f = rational::frac(&raw);
    if f > rat(1, 2) {
        f - int(1)
    } else {
        f
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Holomorphy {
    HolomorphicEqual,
    HolomorphicProper,
    WeaklyOnly,
}

/// True when all leading exponents are non-negative, i.e. `λ² + 4λ − 2k ≥ 0`.
pub fn is_holomorphic(k: u32, lambda: u32) -> Result<bool> {
    check_label(k, lambda, "λ")?;
    check_even(lambda)?;
    let (k, l) = (k as i64, lambda as i64);
    Ok(l * l + 4 * l - 2 * k >= 0)
}

pub fn holomorphy_classify(k: u32, lambda: u32) -> Result<Holomorphy> {
    if !is_holomorphic(k, lambda)? {
        return Ok(Holomorphy::WeaklyOnly);
    }
    let range = match k - lambda {
        0 => 2..=14,
        1 => 3..=13,
        2 => 4..=10,
        d => {
            return Err(Error::UnsupportedDimension(format!(
                "equality of holomorphic spaces is only known in dimensions 1 to 3, got {}",
                d + 1
            )))
        }
    };
    Ok(if range.contains(&k) { Holomorphy::HolomorphicEqual } else { Holomorphy::HolomorphicProper })
}

/// Checks `12 Σ_μ (h_μ − c/24)/d + 1 − d = h_λ + λ/2`.
pub fn saturation_check(k: u32, lambda: u32) -> Result<bool> {
    let exps = leading_exponents(k, lambda)?;
    let d = int(exps.len() as i64);
    let sum: Rational = exps.iter().sum();
    let lhs = int(12) * sum / &d + int(1) - &d;
    let rhs = conformal_weight(k, lambda) + rat(lambda as i64, 2);
    Ok(lhs == rhs)
}

/// Positive rational sum attached to the leading coefficient of the `μ` component.
pub fn leading_trace_sum(k: u32, lambda: u32, mu: u32) -> Result<Rational> {
    let xi = even_xi(k, lambda)?;
    if !xi.contains(&mu) {
        return invalid(format!("μ = {mu} is not in Ξ_{lambda} at level {k}"));
    }
    let f = |n: u32| Rational::from_integer(rational::factorial(n as u64));
    let half = lambda / 2;
    let mut total = Rational::zero();
    for i in 0..=(mu - half) {
        let a = f(mu - i) / (f(i) * f(mu));
        let b = f(half + i) * f(mu - half) / (f(half) * f(mu - half - i));
        total += a * b;
    }
    debug_assert!(total.is_positive());
    Ok(total)
}
