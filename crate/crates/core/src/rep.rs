//! Representation-level classification of `ρ_λ`: admissible exponents,
//! weight bounds, graded dimensions, the order of `ρ_λ(T)`, irreducibility
//! and congruence verdicts.

use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, Rational};
use crate::sl2::{holomorphy_classify, is_holomorphic, leading_exponents, rho_t, saturation_check, RepSignature};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSet {
    #[serde(with = "rational::serde_rational_vec")]
    pub exponents: Vec<Rational>,
}

/// `λ_j = frac(r_j + m/12)` where `m` is the multiplier weight reduced into `[0, 12)`.
pub fn minimal_admissible_set(sig: &RepSignature, multiplier_weight: &Rational) -> AdmissibleSet {
    let m = multiplier_weight - int(12) * (multiplier_weight / int(12)).floor();
    let shift = m / int(12);
    AdmissibleSet { exponents: sig.t_exponents.iter().map(|r| rational::frac(&(r + &shift))).collect() }
}

/// Lower bound `12 Σλ_j / d + 1 − d` on the weight of a holomorphic form.
pub fn weight_lower_bound(exponents: &[Rational]) -> Result<Rational> {
    if exponents.is_empty() {
        return invalid("weight bound needs at least one exponent");
    }
    let d = int(exponents.len() as i64);
    let sum: Rational = exponents.iter().sum();
    Ok(int(12) * sum / &d + int(1) - d)
}

/// Coefficient of `t^n` in `(1 − t^{2d}) / ((1 − t²)(1 − t⁴)(1 − t⁶))`.
pub fn hp_coefficient(d: u32, n: u32) -> Result<u64> {
    if d == 0 {
        return invalid("d must be at least 1");
    }
    let len = n as usize + 1;
    let mut c = vec![0i128; len];
    c[0] = 1;
    if 2 * d as usize <= n as usize {
        c[2 * d as usize] = -1;
    }
    for step in [2usize, 4, 6] {
        // multiply by 1/(1 − t^step)
        for i in step..len {
            c[i] += c[i - step];
        }
    }
    u64::try_from(c[n as usize]).map_err(|_| Error::InternalInconsistency("negative Hilbert-Poincaré coefficient".into()))
}

/// Closed-form graded dimensions of the holomorphic module in dimensions 1 to 3.
pub fn graded_dimension(k: u32, lambda: u32, n: u32) -> Result<u64> {
    if lambda > k || lambda % 2 != 0 {
        return invalid(format!("(k, λ) = ({k}, {lambda}) needs even λ ≤ k"));
    }
    let d = k - lambda + 1;
    let min_k = match d {
        1 => 2,
        2 => 3,
        3 => 4,
        _ => return Err(Error::UnsupportedDimension(format!("no closed form in dimension {d}"))),
    };
    if k < min_k {
        return Err(Error::Unsupported(format!("closed form in dimension {d} needs k ≥ {min_k}")));
    }
    if n % 2 == 1 {
        return Ok(0);
    }
    let n = n as u64;
    Ok(match d {
        1 if n % 12 == 2 => n / 12,
        1 => n / 12 + 1,
        2 => n / 6 + 1,
        _ => n / 4 + 1,
    })
}

/// Order of `ρ_λ(T)`: lcm of the reduced denominators of its exponents.
pub fn t_order(k: u32, lambda: u32) -> Result<u64> {
    let sig = rho_t(k, lambda)?;
    let l = sig.t_exponents.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    l.to_u64().ok_or_else(|| Error::InternalInconsistency("order of ρ(T) overflows".into()))
}

/// `2^8 · 3^4 · 5^2 · 7^2 = 25401600`.
pub const DIM3_ORDER_BOUND: [(u64, u32); 4] = [(2, 8), (3, 4), (5, 2), (7, 2)];

/// Prime factorisation by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Divisibility against a factored modulus.
pub fn divides_factored(n: u64, modulus: &[(u64, u32)]) -> bool {
    if n == 0 {
        return false;
    }
    factorize(n).into_iter().all(|(p, e)| modulus.iter().any(|&(q, f)| q == p && e <= f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Irreducible,
    Inconclusive,
}

/// Irreducible when no non-empty proper subproduct of the `T`-eigenvalues is a
/// 12th root of unity.
pub fn irreducibility_subproduct_test(sig: &RepSignature) -> Result<Irreducibility> {
    let d = sig.t_exponents.len();
    if d > 20 {
        return Err(Error::Refused(format!("subproduct test over 2^{d} subsets")));
    }
    let twelve: Vec<Rational> = sig.t_exponents.iter().map(|r| r * int(12)).collect();
    for mask in 1u32..((1u32 << d) - 1).max(1) {
        let s: Rational = (0..d).filter(|j| mask & (1 << j) != 0).map(|j| &twelve[j]).sum();
        if s.is_integer() {
            return Ok(Irreducibility::Inconclusive);
        }
    }
    Ok(Irreducibility::Irreducible)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceStatus {
    Congruence,
    Noncongruence,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceVerdict {
    pub status: CongruenceStatus,
    pub congruence_level: Option<u64>,
    /// Identifier of the rule that produced the verdict.
    pub basis: String,
}

impl CongruenceVerdict {
    fn new(status: CongruenceStatus, level: Option<u64>, basis: &str) -> Self {
        CongruenceVerdict { status, congruence_level: level, basis: basis.to_string() }
    }
}

/// `Some(p, t)` when `n = p^t` for a prime `p`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, t)] => Some((*p, *t)),
        _ => None,
    }
}

/// Rule engine over the known congruence results.
pub fn congruence_classify(k: u32, lambda: u32) -> Result<CongruenceVerdict> {
    classify_inner(k, lambda, None)
}

/// As [`congruence_classify`], with irreducibility of `ρ_λ` established by
/// other means (e.g. the categorical S-matrix).
pub fn congruence_classify_given(k: u32, lambda: u32, irreducible: bool) -> Result<CongruenceVerdict> {
    classify_inner(k, lambda, Some(irreducible))
}

fn classify_inner(k: u32, lambda: u32, certificate: Option<bool>) -> Result<CongruenceVerdict> {
    let sig = rho_t(k, lambda)?;
    use CongruenceStatus::*;
    match sig.dimension {
        1 => return Ok(CongruenceVerdict::new(Congruence, Some(t_order(k, lambda)?), "thm-dim1-congruence")),
        2 if k % 3 == 2 => return Ok(CongruenceVerdict::new(Congruence, Some(8), "thm-dim2-level8")),
        2 => return Ok(CongruenceVerdict::new(Congruence, Some(24), "thm-dim2-level24")),
        3 if !divides_factored(t_order(k, lambda)?, &DIM3_ORDER_BOUND) => {
            return Ok(CongruenceVerdict::new(Noncongruence, None, "thm-dim3-order"));
        }
        _ => {}
    }
    if let Some((p, t)) = prime_power(k as u64 + 2) {
        let lam_ok = t == 1 || (lambda as u64 + 1) > p.pow(t - 2);
        if p > 3 && lambda >= 2 && lam_ok {
            let irreducible = match certificate {
                Some(c) => c,
                None => irreducibility_subproduct_test(&sig)? == Irreducibility::Irreducible,
            };
            if irreducible {
                let tag = if certificate.is_some() { "thm-prime-power-certified" } else { "thm-prime-power" };
                return Ok(CongruenceVerdict::new(Noncongruence, None, tag));
            }
            return Ok(CongruenceVerdict::new(Undetermined, None, "thm-prime-power-needs-irreducibility"));
        }
    }
    let tag = if sig.dimension == 3 { "thm-dim3-order-divides" } else { "no-rule" };
    Ok(CongruenceVerdict::new(Undetermined, None, tag))
}

/// Everything known about `ρ_λ` from its exponents alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub level: u32,
    pub lambda: u32,
    pub dimension: usize,
    pub labels: Vec<u32>,
    #[serde(with = "rational::serde_rational_vec")]
    pub leading_exponents: Vec<Rational>,
    #[serde(with = "rational::serde_rational_vec")]
    pub t_exponents: Vec<Rational>,
    #[serde(with = "rational::serde_rational")]
    pub multiplier_weight: Rational,
    #[serde(with = "rational::serde_rational")]
    pub weight_bound: Rational,
    pub t_order: u64,
    pub irreducibility: Irreducibility,
    pub congruence: CongruenceVerdict,
    /// `holomorphic_equal`, `holomorphic_proper` or `weakly_only`; plain
    /// `holomorphic` where equality of spaces is not known.
    pub holomorphy: String,
    pub saturated: bool,
}

pub fn classify(k: u32, lambda: u32) -> Result<ClassificationReport> {
    let sig = rho_t(k, lambda)?;
    let exps = leading_exponents(k, lambda)?;
    let holomorphy = match holomorphy_classify(k, lambda) {
        Ok(h) => serde_json::to_value(h)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .ok_or_else(|| Error::InternalInconsistency("holomorphy label".into()))?,
        Err(Error::UnsupportedDimension(_)) => {
            if is_holomorphic(k, lambda)? { "holomorphic" } else { "weakly_only" }.to_string()
        }
        Err(e) => return Err(e),
    };
    Ok(ClassificationReport {
        level: k,
        lambda,
        dimension: sig.dimension,
        labels: sig.labels.clone(),
        weight_bound: weight_lower_bound(&exps)?,
        leading_exponents: exps,
        t_exponents: sig.t_exponents.clone(),
        multiplier_weight: sig.multiplier_weight.clone(),
        t_order: t_order(k, lambda)?,
        irreducibility: irreducibility_subproduct_test(&sig)?,
        congruence: congruence_classify(k, lambda)?,
        holomorphy,
        saturated: saturation_check(k, lambda)?,
    })
}

/// Even levels `4 ≤ k ≤ max_k` whose 3-dimensional representation is
/// certified non-congruence by the order test.
pub fn dim3_noncongruence_levels(max_k: u32) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for k in (4..=max_k).step_by(2) {
        if congruence_classify(k, k - 2)?.status == CongruenceStatus::Noncongruence {
            out.push(k);
        }
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::sl2::{conformal_weight, leading_exponents};

    #[test]
    fn admissible_examples() {
        let sig = rho_t(3, 2).unwrap();
        let m0 = leading_exponents(3, 2).unwrap()[0].clone();
        let w = conformal_weight(3, 2) - int(12) * m0;
        assert_eq!(minimal_admissible_set(&sig, &w).exponents, vec![int(0), rat(1, 4)]);
        let sig = rho_t(4, 2).unwrap();
        let m0 = leading_exponents(4, 2).unwrap()[0].clone();
        let w = conformal_weight(4, 2) - int(12) * m0;
        assert_eq!(minimal_admissible_set(&sig, &w).exponents, vec![int(0), rat(5, 24), rat(1, 2)]);
    }

    #[test]
    fn weight_bound_examples() {
        assert_eq!(weight_lower_bound(&[int(0), rat(1, 4)]).unwrap(), rat(1, 2));
        assert_eq!(weight_lower_bound(&[int(0), rat(5, 24), rat(1, 2)]).unwrap(), rat(5, 6));
        assert_eq!(weight_lower_bound(&[int(0)]).unwrap(), int(0));
        assert!(weight_lower_bound(&[]).is_err());
    }

    #[test]
    fn hp_examples() {
        assert_eq!(hp_coefficient(1, 2).unwrap(), 0);
        assert_eq!(hp_coefficient(1, 12).unwrap(), 2);
        assert_eq!(hp_coefficient(2, 6).unwrap(), 2);
        assert_eq!(hp_coefficient(3, 8).unwrap(), 3);
        assert!(hp_coefficient(0, 3).is_err());
    }

    #[test]
    fn graded_examples() {
        assert_eq!(graded_dimension(6, 6, 14).unwrap(), 1);
        assert_eq!(graded_dimension(3, 2, 6).unwrap(), 2);
        assert_eq!(graded_dimension(4, 2, 3).unwrap(), 0);
        assert!(matches!(graded_dimension(4, 0, 2), Err(Error::UnsupportedDimension(_))));
        assert!(matches!(graded_dimension(0, 0, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn t_order_examples() {
        assert_eq!(t_order(4, 2).unwrap(), 72);
        assert_eq!(t_order(6, 4).unwrap(), 32);
        assert_eq!(t_order(24, 24).unwrap(), 1);
    }

    #[test]
    fn irreducibility_examples() {
        let t = |k, l| irreducibility_subproduct_test(&rho_t(k, l).unwrap()).unwrap();
        assert_eq!(t(3, 2), Irreducibility::Irreducible);
        assert_eq!(t(4, 2), Irreducibility::Irreducible);
        assert_eq!(t(5, 2), Irreducibility::Inconclusive);
        assert_eq!(t(4, 4), Irreducibility::Irreducible);
    }

    #[test]
    fn congruence_examples() {
        let v = congruence_classify(5, 4).unwrap();
        assert_eq!((v.status, v.congruence_level, v.basis.as_str()), (CongruenceStatus::Congruence, Some(8), "thm-dim2-level8"));
        let v = congruence_classify(3, 2).unwrap();
        assert_eq!(v.congruence_level, Some(24));
        let v = congruence_classify(5, 2).unwrap();
        assert_eq!(v.status, CongruenceStatus::Undetermined);
        assert_eq!(v.basis, "thm-prime-power-needs-irreducibility");
        let v = congruence_classify_given(5, 2, true).unwrap();
        assert_eq!(v.status, CongruenceStatus::Noncongruence);
        let v = congruence_classify(4, 2).unwrap();
        assert_eq!(v.status, CongruenceStatus::Undetermined);
    }

    #[test]
    fn factored_divisibility() {
        assert!(divides_factored(144, &DIM3_ORDER_BOUND));
        assert!(divides_factored(25401600, &DIM3_ORDER_BOUND));
        assert!(!divides_factored(11, &DIM3_ORDER_BOUND));
        assert!(!divides_factored(512, &DIM3_ORDER_BOUND));
        let product: u64 = DIM3_ORDER_BOUND.iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(product, 25401600);
    }
}
