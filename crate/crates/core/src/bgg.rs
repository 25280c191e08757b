//! Characters of simple affine sl(2) modules `L(k, λ)` from the BGG
//! resolution, graded by `L_0` (shifted by `h_λ`) and by `h_0` weight `z`.

use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, Rational};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

type Row = BTreeMap<i64, Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ZQRepr", try_from = "ZQRepr")]
pub struct ZQCharacter {
    rows: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct ZQRepr {
    qorder: usize,
    rows: Vec<Vec<(i64, String)>>,
}

impl From<ZQCharacter> for ZQRepr {
    fn from(c: ZQCharacter) -> Self {
        ZQRepr {
            qorder: c.rows.len(),
            rows: c
                .rows
                .iter()
                .map(|r| r.iter().rev().map(|(z, v)| (*z, rational::fmt_rational(v))).collect())
                .collect(),
        }
    }
}

impl TryFrom<ZQRepr> for ZQCharacter {
    type Error = String;
    fn try_from(r: ZQRepr) -> std::result::Result<Self, String> {
        if r.qorder != r.rows.len() {
            return Err("qorder does not match the number of rows".into());
        }
        let rows = r
            .rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(z, s)| rational::parse_rational(&s).map(|v| (z, v)).ok_or(format!("bad rational {s:?}")))
                    .collect::<std::result::Result<Row, String>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ZQCharacter { rows })
    }
}

impl ZQCharacter {
    fn zero(qorder: usize) -> Self {
        ZQCharacter { rows: vec![Row::new(); qorder] }
    }

    pub fn qorder(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BTreeMap<i64, Rational>] {
        &self.rows
    }

    /// Coefficient of `z^a q^n`; `None` past the computed order.
    pub fn coeff(&self, n: usize, a: i64) -> Option<Rational> {
        self.rows.get(n).map(|r| r.get(&a).cloned().unwrap_or_else(Rational::zero))
    }

    /// Value at `z = 1` of grade `n`.
    pub fn grade_dimension(&self, n: usize) -> Option<Rational> {
        self.rows.get(n).map(|r| r.values().sum())
    }

    /// Multiplicity of the trivial sl(2) module at grade `n`: `[z^0] − [z^2]`.
    pub fn trivial_multiplicity(&self, n: usize) -> Result<u64> {
        let (Some(a), Some(b)) = (self.coeff(n, 0), self.coeff(n, 2)) else {
            return invalid(format!("grade {n} is beyond the computed order {}", self.qorder()));
        };
        let m = a - b;
        if !m.is_integer() {
            return Err(Error::InternalInconsistency(format!("non-integral multiplicity {m}")));
        }
        m.to_integer()
            .to_u64()
            .ok_or_else(|| Error::InternalInconsistency(format!("negative trivial multiplicity at grade {n}")))
    }

    fn add_term(&mut self, n: usize, z: i64, c: &Rational) {
        if let Some(row) = self.rows.get_mut(n) {
            let e = row.entry(z).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                row.remove(&z);
            }
        }
    }

    fn mul(&self, other: &ZQCharacter) -> ZQCharacter {
        let n = self.qorder().min(other.qorder());
        let mut out = ZQCharacter::zero(n);
        for i in 0..n {
            for j in 0..(n - i) {
                for (za, a) in &self.rows[i] {
                    for (zb, b) in &other.rows[j] {
                        out.add_term(i + j, za + zb, &(a * b));
                    }
                }
            }
        }
        out
    }
}

/// `∏_{m ≥ 1} ∏_{a ∈ z_powers} (1 − z^a q^m)^{-1}` through grade `qorder − 1`.
pub fn inverse_product(qorder: usize, z_powers: &[i64]) -> ZQCharacter {
    let mut c = ZQCharacter::zero(qorder);
    c.add_term(0, 0, &int(1));
    for m in 1..qorder {
        for &a in z_powers {
            // in-place division by (1 − z^a q^m)
            for n in m..qorder {
                let prev: Vec<(i64, Rational)> = c.rows[n - m].iter().map(|(z, v)| (*z, v.clone())).collect();
                for (z, v) in prev {
                    c.add_term(n, z + a, &v);
                }
            }
        }
    }
    c
}

/// Highest weights `λ_i` of the resolution and their grade offsets `h_{λ_i} − h_λ`.
pub fn resolution_terms(k: u32, lambda: u32, qorder: usize) -> Vec<(usize, i64, u64)> {
    let kk = k as i64 + 2;
    let l = lambda as i64;
    let mut out = vec![(0usize, l, 0u64)];
    for j in 1i64.. {
        let even = (l + 2 * j * kk, j * (l + j * kk + 1));
        let odd = (-l - 2 + 2 * j * kk, j * j * kk - j * (l + 1));
        if odd.1 as usize >= qorder {
            break;
        }
        out.push(((2 * j - 1) as usize, odd.0, odd.1 as u64));
        if (even.1 as usize) < qorder {
            out.push(((2 * j) as usize, even.0, even.1 as u64));
        }
    }
    out
}

/// Character of `L(k, λ)` through grade `qorder − 1`.
pub fn simple_character(k: u32, lambda: u32, qorder: usize) -> Result<ZQCharacter> {
    if lambda > k {
        return invalid(format!("λ = {lambda} exceeds level {k}"));
    }
    if qorder == 0 {
        return invalid("qorder must be at least 1");
    }
    let mut num = ZQCharacter::zero(qorder);
    for (i, mu, gap) in resolution_terms(k, lambda, qorder) {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        for n in 0..=mu {
            num.add_term(gap as usize, mu - 2 * n, &sign);
        }
    }
    Ok(num.mul(&inverse_product(qorder, &[2, 0, -2])))
}

pub fn trivial_multiplicity(k: u32, lambda: u32, n: usize) -> Result<u64> {
    if lambda % 2 != 0 {
        return invalid(format!("λ = {lambda} is odd"));
    }
    simple_character(k, lambda, n + 1)?.trivial_multiplicity(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &ZQCharacter, n: usize) -> Vec<(i64, i64)> {
        c.rows()[n].iter().map(|(z, v)| (*z, v.to_integer().to_i64().unwrap())).collect()
    }

    #[test]
    fn top_grades() {
        for k in 0..5 {
            assert_eq!(row(&simple_character(k, 0, 1).unwrap(), 0), vec![(0, 1)]);
        }
        assert_eq!(row(&simple_character(2, 2, 1).unwrap(), 0), vec![(-2, 1), (0, 1), (2, 1)]);
        let c = simple_character(1, 1, 2).unwrap();
        assert_eq!(row(&c, 0), vec![(-1, 1), (1, 1)]);
    }

    #[test]
    fn vacuum_grade_one_is_adjoint() {
        // for k ≥ 1 the weight-one space of L(k, 0) is the adjoint representation
        for k in 1..5 {
            let c = simple_character(k, 0, 2).unwrap();
            assert_eq!(row(&c, 1), vec![(-2, 1), (0, 1), (2, 1)]);
        }
        // at k = 0 the module is trivial
        let c = simple_character(0, 0, 4).unwrap();
        for n in 1..4 {
            assert!(c.rows()[n].is_empty());
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(trivial_multiplicity(4, 2, 0).unwrap(), 0);
        assert_eq!(trivial_multiplicity(4, 2, 1).unwrap(), 1);
        assert_eq!(trivial_multiplicity(3, 0, 0).unwrap(), 1);
        let c = simple_character(4, 2, 2).unwrap();
        assert!(c.trivial_multiplicity(2).is_err());
    }

    #[test]
    fn json_rows() {
        let c = simple_character(2, 2, 1).unwrap();
        let js = serde_json::to_value(&c).unwrap();
        assert_eq!(js, serde_json::json!({"qorder": 1, "rows": [[[2, "1"], [0, "1"], [-2, "1"]]]}));
        let back: ZQCharacter = serde_json::from_value(js).unwrap();
        assert_eq!(back, c);
    }
}
