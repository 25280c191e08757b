//! Modular tensor category data of sl(2) at level k in double precision:
//! quantum 6j-symbols, F/R/G matrices, twists, and the action of
//! (S^(p), T^(p)) on the one-punctured-torus coupling spaces.
//!
//! Labels are Dynkin labels `0..=k`, i.e. twice the quantum-group spin.

use crate::error::{invalid, Error, Result};
use crate::rational::{to_f64, Rational};
use crate::rep::{congruence_classify, congruence_classify_given, CongruenceVerdict, Irreducibility};
use crate::sl2::{central_charge, conformal_weight, fusion_unchecked, rho_t};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_LEVEL: u32 = 48;

/// `e(x) = exp(2πix)`.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// Quantum integer `[n] = sin(πn/(k+2)) / sin(π/(k+2))`.
pub fn quantum_integer(k: u32, n: i64) -> f64 {
    let kk = (k + 2) as f64;
    (PI * n as f64 / kk).sin() / (PI / kk).sin()
}

/// `[n]! = [1][2]…[n]` for `0 ≤ n ≤ k+1`.
pub fn quantum_factorial(k: u32, n: u32) -> Result<f64> {
    if n > k + 1 {
        return invalid(format!("[{n}]! vanishes at level {k}; only n ≤ k+1 is allowed"));
    }
    Ok((1..=n as i64).map(|m| quantum_integer(k, m)).product())
}

#[derive(Clone, Debug)]
pub struct MtcLevelData {
    pub level: u32,
    pub labels: Vec<u32>,
    pub theta: Vec<Complex64>,
    pub zeta: Complex64,
    pub s_char: DMatrix<Complex64>,
    pub qdim: Vec<f64>,
    /// `D = 1/S_00 = sqrt(Σ d_i²)`.
    pub global_dim_root: f64,
    pub f_tensor: BTreeMap<[u32; 6], f64>,
    pub r_tensor: BTreeMap<[u32; 3], Complex64>,
    pub g_tensor: BTreeMap<[u32; 6], Complex64>,
    weights: Vec<f64>,
    qfact: Vec<f64>,
}

impl MtcLevelData {
    /// Level data with the default cap on `k`; F/R/G tables are left empty.
    pub fn new(k: u32) -> Result<Self> {
        Self::with_max_level(k, DEFAULT_MAX_LEVEL)
    }

    pub fn with_max_level(k: u32, max_level: u32) -> Result<Self> {
        if k > max_level {
            return Err(Error::Refused(format!("level {k} exceeds the cap {max_level}")));
        }
        let n = k as usize + 1;
        let kk = (k + 2) as f64;
        let weights: Vec<f64> = (0..=k).map(|r| to_f64(&conformal_weight(k, r))).collect();
        let theta = weights.iter().map(|h| e(*h)).collect();
        let zeta = e(to_f64(&central_charge(k)) / 24.0);
        let s_char = DMatrix::from_fn(n, n, |i, j| {
            Complex64::new((2.0 / kk).sqrt() * (PI * ((i + 1) * (j + 1)) as f64 / kk).sin(), 0.0)
        });
        let s00 = s_char[(0, 0)].re;
        let qdim = (0..n).map(|i| s_char[(i, 0)].re / s00).collect();
        let qfact = (0..=k + 1).map(|m| quantum_factorial(k, m).expect("in range")).collect();
        Ok(MtcLevelData {
            level: k,
            labels: (0..=k).collect(),
            theta,
            zeta,
            s_char,
            qdim,
            global_dim_root: 1.0 / s00,
            f_tensor: BTreeMap::new(),
            r_tensor: BTreeMap::new(),
            g_tensor: BTreeMap::new(),
            weights,
            qfact,
        })
    }

    pub fn fusion(&self, a: u32, b: u32, c: u32) -> bool {
        a <= self.level && b <= self.level && c <= self.level && fusion_unchecked(self.level, a, b, c) == 1
    }

    fn qf(&self, n: i64) -> f64 {
        self.qfact[n as usize]
    }

    fn delta(&self, a: i64, b: i64, c: i64) -> f64 {
        (self.qf((-a + b + c) / 2) * self.qf((a - b + c) / 2) * self.qf((a + b - c) / 2)
            / self.qf((a + b + c) / 2 + 1))
        .sqrt()
    }

    /// Quantum 6j-symbol `{a b e; d c f}` with all arguments given as Dynkin
    /// labels. The triads `(a,b,e)`, `(a,c,f)`, `(c,e,d)`, `(d,b,f)` must be admissible.
    pub fn six_j(&self, a: u32, b: u32, e_: u32, d: u32, c: u32, f: u32) -> Result<f64> {
        for (x, y, z) in [(a, b, e_), (a, c, f), (c, e_, d), (d, b, f)] {
            if !self.fusion(x, y, z) {
                return invalid(format!("triad ({x}, {y}, {z}) is not admissible at level {}", self.level));
            }
        }
        Ok(self.six_j_unchecked(a, b, e_, d, c, f))
    }

    fn six_j_unchecked(&self, a: u32, b: u32, e_: u32, d: u32, c: u32, f: u32) -> f64 {
        let (a, b, e_, d, c, f) = (a as i64, b as i64, e_ as i64, d as i64, c as i64, f as i64);
        let k = self.level as i64;
        let lo = [a + b + e_, a + c + f, b + d + f, c + d + e_].into_iter().max().unwrap() / 2;
        let hi = [a + b + c + d, a + d + e_ + f, b + c + e_ + f].into_iter().min().unwrap() / 2;
        let mut total = 0.0;
        for z in lo..=hi {
            // [z+1]! contains [k+2] = 0 beyond this point
            if z + 1 > k + 1 {
                continue;
            }
            let den = self.qf(z - (a + b + e_) / 2)
                * self.qf(z - (a + c + f) / 2)
                * self.qf(z - (b + d + f) / 2)
                * self.qf(z - (d + c + e_) / 2)
                * self.qf((a + b + c + d) / 2 - z)
                * self.qf((a + d + e_ + f) / 2 - z)
                * self.qf((b + c + e_ + f) / 2 - z);
            let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
            total += sign * self.qf(z + 1) / den;
        }
        let sign = if ((a + b - c - d - 2 * e_) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * (quantum_integer(self.level, e_ + 1) * quantum_integer(self.level, f + 1)).sqrt()
            * self.delta(a, b, e_)
            * self.delta(a, c, f)
            * self.delta(c, e_, d)
            * self.delta(d, b, f)
            * total
    }

    fn admissible6(&self, x: [u32; 6], triads: [[usize; 3]; 4]) -> bool {
        triads.iter().all(|t| self.fusion(x[t[0]], x[t[1]], x[t[2]]))
    }

    /// `F^{(rst)u}_{pq} = {t s p; r u q}`; zero off the admissible set.
    pub fn f_symbol(&self, r: u32, s: u32, t: u32, u: u32, p: u32, q: u32) -> f64 {
        if !self.admissible6([t, s, p, r, u, q], [[0, 1, 2], [0, 4, 5], [4, 2, 3], [3, 1, 5]]) {
            return 0.0;
        }
        self.six_j_unchecked(t, s, p, r, u, q)
    }

    /// Braiding eigenvalue `R^{(rs)t} = (−1)^{(r+s−t)/2} e((h_r + h_s − h_t)/2)`.
    pub fn r_symbol(&self, r: u32, s: u32, t: u32) -> Complex64 {
        if !self.fusion(r, s, t) {
            return Complex64::new(0.0, 0.0);
        }
        let sign = if ((r + s - t) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let (hr, hs, ht) = (self.weights[r as usize], self.weights[s as usize], self.weights[t as usize]);
        e((hr + hs - ht) / 2.0) * sign
    }

    /// `G^{(ijk)l}_{pq} = R^{(jk)q} R^{(iq)l} / (R^{(ij)p} R^{(pk)l}) · F^{(kji)l}_{pq}`.
    pub fn g_symbol(&self, i: u32, j: u32, k: u32, l: u32, p: u32, q: u32) -> Complex64 {
        if !(self.fusion(i, j, p) && self.fusion(p, k, l) && self.fusion(j, k, q) && self.fusion(i, q, l)) {
            return Complex64::new(0.0, 0.0);
        }
        self.r_symbol(j, k, q) * self.r_symbol(i, q, l) / (self.r_symbol(i, j, p) * self.r_symbol(p, k, l))
            * self.f_symbol(k, j, i, l, p, q)
    }

    /// Fills the F, R and G tables over all admissible label tuples.
    pub fn with_tensors(mut self) -> Self {
        let labels = self.labels.clone();
        let mut f_tensor = BTreeMap::new();
        let mut r_tensor = BTreeMap::new();
        let mut g_tensor = BTreeMap::new();
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    if self.fusion(a, b, c) {
                        r_tensor.insert([a, b, c], self.r_symbol(a, b, c));
                    }
                }
            }
        }
        for &r in &labels {
            for &s in &labels {
                for &t in &labels {
                    for &u in &labels {
                        for &p in &labels {
                            if !(self.fusion(t, s, p) && self.fusion(u, p, r)) {
                                continue;
                            }
                            for &q in &labels {
                                if self.fusion(t, u, q) && self.fusion(r, s, q) {
                                    f_tensor.insert([r, s, t, u, p, q], self.f_symbol(r, s, t, u, p, q));
                                }
                            }
                        }
                    }
                }
            }
        }
        for &i in &labels {
            for &j in &labels {
                for &k in &labels {
                    for &l in &labels {
                        for &p in &labels {
                            if !(self.fusion(i, j, p) && self.fusion(p, k, l)) {
                                continue;
                            }
                            for &q in &labels {
                                if self.fusion(j, k, q) && self.fusion(i, q, l) {
                                    g_tensor.insert([i, j, k, l, p, q], self.g_symbol(i, j, k, l, p, q));
                                }
                            }
                        }
                    }
                }
            }
        }
        self.f_tensor = f_tensor;
        self.r_tensor = r_tensor;
        self.g_tensor = g_tensor;
        self
    }

    /// `Σ_m S_{am} S_{bm} conj(S_{cm}) / S_{0m}`.
    pub fn verlinde(&self, a: u32, b: u32, c: u32) -> f64 {
        let s = &self.s_char;
        (0..self.labels.len())
            .map(|m| s[(a as usize, m)] * s[(b as usize, m)] * s[(c as usize, m)].conj() / s[(0, m)])
            .sum::<Complex64>()
            .re
    }

    /// Labels `p` with `N_{p i}^i = 1` for some `i`.
    pub fn adjoint_members(&self) -> Vec<u32> {
        self.labels.iter().copied().filter(|&p| self.labels.iter().any(|&i| self.fusion(p, i, i))).collect()
    }

    pub fn gen_modular_pair(&self, p: u32, tolerance: f64) -> Result<GenModularPair> {
        if p > self.level {
            return invalid(format!("label p = {p} exceeds level {}", self.level));
        }
        if p % 2 != 0 {
            return invalid(format!("p = {p} is odd and not in the adjoint subcategory"));
        }
        let basis: Vec<u32> = self.labels.iter().copied().filter(|&i| self.fusion(p, i, i)).collect();
        let n = basis.len();
        let d = &self.qdim;
        let big_d = self.global_dim_root;
        let th = &self.theta;
        let mut s = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (a, &i) in basis.iter().enumerate() {
            for (b, &j) in basis.iter().enumerate() {
                let mut total = Complex64::new(0.0, 0.0);
                for &r in &self.labels {
                    if !self.fusion(i, j, r) {
                        continue;
                    }
                    let phase = th[r as usize] / (th[i as usize] * th[j as usize]);
                    total += phase
                        * self.g_symbol(i, i, j, j, 0, r)
                        * self.f_symbol(i, i, j, j, r, 0)
                        * self.g_symbol(p, i, r, j, i, j);
                }
                s[(a, b)] = total * (d[i as usize] * d[j as usize] / big_d);
            }
        }
        let t = DMatrix::from_fn(n, n, |a, b| {
            if a == b {
                th[basis[a] as usize] / self.zeta
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let st = &s * &t;
        let st_cubed = &st * &st * &st;
        let s2 = &s * &s;
        let s4 = &s2 * &s2;
        let theta_inv = DMatrix::identity(n, n) * (Complex64::new(1.0, 0.0) / th[p as usize]);
        let residuals = RelationResiduals {
            st_cubed_minus_s_squared: inf_norm(&(st_cubed - &s2)),
            s_fourth_minus_twist: inf_norm(&(s4 - theta_inv)),
        };
        let worst = residuals.st_cubed_minus_s_squared.max(residuals.s_fourth_minus_twist);
        if !(worst < tolerance) {
            return Err(Error::RelationViolation(format!(
                "braid relations fail at (k, p) = ({}, {p}) with residual {worst:e}",
                self.level
            )));
        }
        Ok(GenModularPair { level: self.level, p_label: p, basis, s_matrix: s, t_matrix: t, residuals })
    }
}

/// Operator ∞-norm (largest absolute row sum).
pub fn inf_norm(m: &DMatrix<Complex64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn six_j(k: u32, a: u32, b: u32, e_: u32, d: u32, c: u32, f: u32) -> Result<f64> {
    MtcLevelData::new(k)?.six_j(a, b, e_, d, c, f)
}

/// Level data with all F, R and G entries tabulated.
pub fn f_r_g_matrices(k: u32) -> Result<MtcLevelData> {
    Ok(MtcLevelData::new(k)?.with_tensors())
}

pub fn adjoint_members(k: u32) -> Vec<u32> {
    (0..=k).filter(|&p| (0..=k).any(|i| fusion_unchecked(k, p, i, i) == 1)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationResiduals {
    pub st_cubed_minus_s_squared: f64,
    pub s_fourth_minus_twist: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenModularPair {
    pub level: u32,
    pub p_label: u32,
    pub basis: Vec<u32>,
    pub s_matrix: DMatrix<Complex64>,
    pub t_matrix: DMatrix<Complex64>,
    pub residuals: RelationResiduals,
}

fn rows(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    m.row_iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

impl Serialize for GenModularPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            level: u32,
            p_label: u32,
            basis: &'a [u32],
            s_matrix: Vec<Vec<[f64; 2]>>,
            t_matrix: Vec<Vec<[f64; 2]>>,
            residuals: RelationResiduals,
        }
        Repr {
            level: self.level,
            p_label: self.p_label,
            basis: &self.basis,
            s_matrix: rows(&self.s_matrix),
            t_matrix: rows(&self.t_matrix),
            residuals: self.residuals,
        }
        .serialize(s)
    }
}

pub fn gen_modular_pair(k: u32, p: u32) -> Result<GenModularPair> {
    MtcLevelData::new(k)?.gen_modular_pair(p, DEFAULT_TOLERANCE)
}

/// Irreducibility from the zero pattern of `S^(p)` in the `T^(p)` eigenbasis.
pub fn irreducibility_probe(pair: &GenModularPair, multiplier_weight: &Rational, tolerance: f64) -> Result<Irreducibility> {
    let n = pair.basis.len();
    if n > 20 {
        return Err(Error::Refused(format!("probe over 2^{n} subsets")));
    }
    let nu = e(to_f64(multiplier_weight) / 12.0);
    let t: Vec<Complex64> = (0..n).map(|i| pair.t_matrix[(i, i)] / nu).collect();
    for i in 0..n {
        for j in 0..i {
            if (t[i] - t[j]).norm() <= tolerance {
                return Ok(Irreducibility::Inconclusive);
            }
        }
    }
    for mask in 1u32..((1u32 << n) - 1).max(1) {
        let inside = |j: usize| mask & (1 << j) != 0;
        let coupled = (0..n).any(|j| inside(j) && (0..n).any(|i| !inside(i) && pair.s_matrix[(i, j)].norm() > tolerance));
        if !coupled {
            return Ok(Irreducibility::Inconclusive);
        }
    }
    Ok(Irreducibility::Irreducible)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TComparison {
    pub mu: u32,
    pub categorical: Complex64,
    pub analytic: Complex64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyticComparison {
    pub level: u32,
    pub lambda: u32,
    pub t_entries: Vec<TComparison>,
    pub max_residual: f64,
    /// `S^(λ) / ν_{h_λ}(S)`, reported for inspection only.
    pub s_over_multiplier: Vec<Vec<[f64; 2]>>,
}

impl AnalyticComparison {
    pub fn passed(&self, tolerance: f64) -> bool {
        self.max_residual < tolerance
    }
}

/// Compares `T^(λ) / ν_{h_λ}(T)` with `e(r_μ)` from the exact exponents.
pub fn compare_with_analytic(k: u32, lambda: u32) -> Result<AnalyticComparison> {
    let pair = gen_modular_pair(k, lambda)?;
    let sig = rho_t(k, lambda)?;
    let h = to_f64(&sig.multiplier_weight);
    let nu_t = e(h / 12.0);
    let nu_s = e(-h / 4.0);
    let raw = sig.raw_exponents();
    let mut t_entries = Vec::new();
    for (a, &mu) in pair.basis.iter().enumerate() {
        let idx = sig.labels.iter().position(|&m| m == mu).ok_or_else(|| {
            Error::InternalInconsistency(format!("label {mu} missing from the analytic basis"))
        })?;
        let categorical = pair.t_matrix[(a, a)] / nu_t;
        let analytic = e(to_f64(&raw[idx]));
        t_entries.push(TComparison { mu, categorical, analytic, residual: (categorical - analytic).norm() });
    }
    let max_residual = t_entries.iter().map(|t| t.residual).fold(0.0, f64::max);
    Ok(AnalyticComparison {
        level: k,
        lambda,
        t_entries,
        max_residual,
        s_over_multiplier: rows(&pair.s_matrix.map(|z| z / nu_s)),
    })
}

/// The 1×1 pair at `p = k` next to closed-form candidates for its value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneDimensionalReport {
    pub level: u32,
    pub s_computed: Complex64,
    /// `e(−3k/32)`.
    pub s_candidate_half: Complex64,
    /// `ν_{3k/4}(S) = e(−3k/16)`.
    pub s_candidate_multiplier: Complex64,
    pub t_computed: Complex64,
    /// `e(k/16)`.
    pub t_expected: Complex64,
}

pub fn one_dimensional_report(k: u32) -> Result<OneDimensionalReport> {
    if k % 2 != 0 {
        return invalid(format!("level {k} is odd, so p = k is not in the adjoint subcategory"));
    }
    let pair = gen_modular_pair(k, k)?;
    let kf = k as f64;
    Ok(OneDimensionalReport {
        level: k,
        s_computed: pair.s_matrix[(0, 0)],
        s_candidate_half: e(-3.0 * kf / 32.0),
        s_candidate_multiplier: e(-3.0 * kf / 16.0),
        t_computed: pair.t_matrix[(0, 0)],
        t_expected: e(kf / 16.0),
    })
}

/// Congruence verdict with irreducibility supplied by the categorical probe
/// when the exponent test alone is inconclusive.
pub fn certified_congruence(k: u32, lambda: u32, tolerance: f64) -> Result<(Irreducibility, CongruenceVerdict)> {
    let pair = MtcLevelData::new(k)?.gen_modular_pair(lambda, tolerance)?;
    let probe = irreducibility_probe(&pair, &conformal_weight(k, lambda), tolerance)?;
    let verdict = match probe {
        Irreducibility::Irreducible => congruence_classify_given(k, lambda, true)?,
        Irreducibility::Inconclusive => congruence_classify(k, lambda)?,
    };
    Ok((probe, verdict))
}
