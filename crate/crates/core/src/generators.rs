//! Cyclic generators of the spaces of torus 1-point functions in dimensions
//! 1 to 3, built from η, J^{-1} and hypergeometric series, plus their
//! modular differential equations and the embedded reference tables.

use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, rat, Rational};
use crate::rep::weight_lower_bound;
use crate::series::{eisenstein, eta_power, j_inverse, modular_derivative, QExpansion};
use crate::sl2::{conformal_weight, leading_exponents, xi_set};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeomSpec {
    #[serde(with = "rational::serde_rational_vec")]
    pub upper: Vec<Rational>,
    #[serde(with = "rational::serde_rational_vec")]
    pub lower: Vec<Rational>,
}

impl HypergeomSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        for b in &lower {
            if b.is_integer() && !b.is_positive() {
                return invalid(format!("lower parameter {b} is a non-positive integer"));
            }
        }
        Ok(HypergeomSpec { upper, lower })
    }

    /// Series coefficients `c_0, …, c_{n-1}` of `pF_q(upper; lower; x)`.
    pub fn coefficients(&self, n: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n);
        let mut c = Rational::one();
        for m in 0..n {
            if m > 0 {
                let shift = int(m as i64 - 1);
                let num: Rational = self.upper.iter().map(|a| a + &shift).product();
                let den: Rational = self.lower.iter().map(|b| b + &shift).product();
                c = c * num / (den * int(m as i64));
            }
            out.push(c.clone());
        }
        out
    }
}

/// `Σ c_n arg^n` truncated to `order`. The argument must vanish at the cusp
/// to a positive integral order.
pub fn hypergeom_series(spec: &HypergeomSpec, arg: &QExpansion, order: usize) -> Result<QExpansion> {
    HypergeomSpec::new(spec.upper.clone(), spec.lower.clone())?;
    let arg = arg.strip_leading_zeros();
    if arg.is_zero() {
        return Ok(QExpansion::one(order));
    }
    let lead = arg.leading_exponent();
    if !lead.is_positive() || !lead.is_integer() {
        return invalid(format!("hypergeometric argument has leading exponent {lead}; need a positive integer"));
    }
    let end = rational::to_i64(&arg.end()).unwrap_or(0).max(0) as usize;
    let n = order.min(end);
    let e = rational::to_i64(lead).unwrap_or(1) as usize;
    let mut dense = vec![Rational::zero(); n];
    for (i, c) in arg.coeffs().iter().enumerate() {
        if e + i < n {
            dense[e + i] = c.clone();
        }
    }
    let dense = QExpansion::new(Rational::zero(), dense);
    let terms = if e == 0 { 0 } else { n.div_ceil(e) };
    let coeffs = spec.coefficients(terms.max(1));
    let mut total = QExpansion::one(n);
    let mut power = QExpansion::one(n);
    for c in coeffs.iter().skip(1) {
        power = power.mul(&dense);
        total = total.add(&power.scale(c))?;
    }
    Ok(total)
}

/// `η^{eta_exponent} · J^{j_exponent} · F(J^{-1})` with the constant
/// `1728^{-j_exponent}` dropped and leading coefficient scaled to 1.
pub fn eta_j_hypergeometric(
    eta_exponent: &Rational,
    j_exponent: &Rational,
    spec: &HypergeomSpec,
    order: usize,
) -> Result<QExpansion> {
    let jinv = j_inverse(order)?;
    eta_j_hypergeometric_with(&jinv, eta_exponent, j_exponent, spec, order)
}

fn eta_j_hypergeometric_with(
    jinv: &QExpansion,
    eta_exponent: &Rational,
    j_exponent: &Rational,
    spec: &HypergeomSpec,
    order: usize,
) -> Result<QExpansion> {
    // J^{-1} = 1728 q V with V a unit series, so J^a = 1728^{-a} q^{-a} V^{-a}
    let unit = jinv.shift(&-Rational::one()).scale(&rat(1, 1728));
    let j_part = unit.pow(&-j_exponent)?.shift(&-j_exponent);
    let f = hypergeom_series(spec, jinv, order)?;
    Ok(eta_power(eta_exponent, order).mul(&j_part).mul(&f).normalized())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub mu: u32,
    pub series: QExpansion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VvmfVector {
    pub level: u32,
    pub weight_label: u32,
    #[serde(with = "rational::serde_rational")]
    pub form_weight: Rational,
    pub components: Vec<Component>,
}

impl VvmfVector {
    pub fn component(&self, mu: u32) -> Option<&QExpansion> {
        self.components.iter().find(|c| c.mu == mu).map(|c| &c.series)
    }
}

/// How one generator component is assembled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecipe {
    pub mu: u32,
    #[serde(with = "rational::serde_rational")]
    pub eta_exponent: Rational,
    #[serde(with = "rational::serde_rational")]
    pub j_exponent: Rational,
    pub spec: HypergeomSpec,
}

fn dimension_guard(k: u32, lambda: u32) -> Result<usize> {
    if lambda > k {
        return invalid(format!("λ = {lambda} exceeds level {k}"));
    }
    if lambda % 2 != 0 {
        return invalid(format!("λ = {lambda} is odd, so Ξ_λ is empty"));
    }
    let d = (k - lambda + 1) as usize;
    if d > 3 {
        return Err(Error::UnsupportedDimension(format!(
            "generators are implemented for dimensions 1 to 3, (k, λ) = ({k}, {lambda}) has dimension {d}"
        )));
    }
    Ok(d)
}

/// Exponents of `η^{-24 μ_min}` times the generator, starting at 0.
fn shifted_exponents(k: u32, lambda: u32) -> Result<(Rational, Vec<Rational>)> {
    let exps = leading_exponents(k, lambda)?;
    let m0 = exps[0].clone();
    Ok((m0.clone(), exps.into_iter().map(|e| e - &m0).collect()))
}

/// Parameters of the hypergeometric fundamental system attached to the
/// shifted exponents `λ_1 < … < λ_d` at weight `w`: component `i` is
/// `η^{2w} J^{-t} F(t, t+1/3, …; 1+λ_i−λ_j (j ≠ i); J^{-1})`, `t = λ_i − w/12`.
pub fn generator_recipes(k: u32, lambda: u32) -> Result<Vec<ComponentRecipe>> {
    let d = dimension_guard(k, lambda)?;
    let (m0, lams) = shifted_exponents(k, lambda)?;
    let w = weight_lower_bound(&lams)?;
    let eta_exponent = int(24) * &m0 + int(2) * &w;
    let labels = xi_set(k, lambda)?;
    let mut out = Vec::with_capacity(d);
    for (i, mu) in labels.into_iter().enumerate() {
        let t = &lams[i] - &w / int(12);
        let spec = if d == 1 {
            HypergeomSpec::new(vec![], vec![])?
        } else {
            let upper = (0..d as i64).map(|m| &t + rat(m, 3)).collect();
            let lower = lams
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, l)| &lams[i] - l + int(1))
                .collect();
            HypergeomSpec::new(upper, lower)?
        };
        let j_exponent = if d == 1 { Rational::zero() } else { -t };
        out.push(ComponentRecipe { mu, eta_exponent: eta_exponent.clone(), j_exponent, spec });
    }
    Ok(out)
}

/// Normalised cyclic generator for `k − λ ∈ {0, 1, 2}`.
pub fn cyclic_generator(k: u32, lambda: u32, order: usize) -> Result<VvmfVector> {
    if order == 0 {
        return invalid("order must be at least 1");
    }
    let recipes = generator_recipes(k, lambda)?;
    let expected = leading_exponents(k, lambda)?;
    let jinv = j_inverse(order)?;
    let mut components = Vec::with_capacity(recipes.len());
    for (r, e) in recipes.iter().zip(&expected) {
        let series = if r.spec.upper.is_empty() {
            eta_power(&r.eta_exponent, order)
        } else {
            eta_j_hypergeometric_with(&jinv, &r.eta_exponent, &r.j_exponent, &r.spec, order)?
        };
        if series.leading_exponent() != e || series.order() != order {
            return Err(Error::InternalInconsistency(format!(
                "component μ = {} has leading exponent {}, expected {e}",
                r.mu,
                series.leading_exponent()
            )));
        }
        components.push(Component { mu: r.mu, series });
    }
    Ok(VvmfVector {
        level: k,
        weight_label: lambda,
        form_weight: conformal_weight(k, lambda) + rat(lambda as i64, 2),
        components,
    })
}

/// Coefficients and residuals of the monic modular differential equation
/// satisfied by the η-rescaled generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MldeReport {
    pub level: u32,
    pub lambda: u32,
    #[serde(with = "rational::serde_rational")]
    pub weight: Rational,
    #[serde(with = "rational::serde_rational_vec")]
    pub exponents: Vec<Rational>,
    /// `κ_1` (dimension 2) or `κ_1, κ_2` (dimension 3).
    #[serde(with = "rational::serde_rational_vec")]
    pub kappa: Vec<Rational>,
    pub residuals: Vec<Component>,
}

impl MldeReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|c| c.series.is_zero())
    }
}

fn iterated_derivative(f: &QExpansion, weight: &Rational, times: usize) -> Vec<QExpansion> {
    let mut out = vec![f.clone()];
    let mut w = weight.clone();
    for _ in 0..times {
        let next = modular_derivative(out.last().unwrap(), &w);
        out.push(next);
        w += int(2);
    }
    out
}

pub fn mlde_solve(k: u32, lambda: u32, order: usize) -> Result<MldeReport> {
    let d = dimension_guard(k, lambda)?;
    if d == 1 {
        return Err(Error::UnsupportedDimension("no differential equation is attached to dimension 1".into()));
    }
    if order < 4 {
        return invalid("order must be at least 4");
    }
    let work = order + d;
    let gen = cyclic_generator(k, lambda, work)?;
    let (m0, lams) = shifted_exponents(k, lambda)?;
    let w = weight_lower_bound(&lams)?;
    let rescale = eta_power(&(int(-24) * &m0), work);
    let fs: Vec<(u32, QExpansion)> =
        gen.components.iter().map(|c| (c.mu, c.series.mul(&rescale))).collect();
    let e4 = eisenstein(4, work)?;
    let e6 = eisenstein(6, work)?;

    let (kappa, residuals) = if d == 2 {
        let diff = &lams[0] - &lams[1];
        let k1 = int(180) * &diff * &diff - int(5);
        let res = fs
            .iter()
            .map(|(mu, f)| {
                let ds = iterated_derivative(f, &w, 2);
                let r = ds[2].sub(&e4.mul(f).scale(&k1)).expect("same coset");
                Component { mu: *mu, series: r.truncate(order) }
            })
            .collect();
        (vec![k1], res)
    } else {
        let parts: Vec<(u32, QExpansion, QExpansion, QExpansion)> = fs
            .iter()
            .map(|(mu, f)| {
                let ds = iterated_derivative(f, &w, 3);
                (*mu, ds[3].clone(), e4.mul(&ds[1]), e6.mul(f))
            })
            .collect();
        let (_, a, b, c) = &parts[0];
        let at = |s: &QExpansion, n: usize| s.coeff(n).cloned().unwrap_or_else(Rational::zero);
        let det = at(b, 0) * at(c, 1) - at(b, 1) * at(c, 0);
        if det.is_zero() {
            return Err(Error::DegenerateMlde(format!(
                "singular system for (κ_1, κ_2) at (k, λ) = ({k}, {lambda})"
            )));
        }
        let k1 = (-at(a, 0) * at(c, 1) + at(a, 1) * at(c, 0)) / &det;
        let k2 = (-at(b, 0) * at(a, 1) + at(b, 1) * at(a, 0)) / &det;
        let res = parts
            .iter()
            .map(|(mu, a, b, c)| {
                let r = a.add(&b.scale(&k1)).and_then(|s| s.add(&c.scale(&k2))).expect("same coset");
                Component { mu: *mu, series: r.truncate(order) }
            })
            .collect();
        (vec![k1, k2], res)
    };
    Ok(MldeReport { level: k, lambda, weight: w, exponents: lams, kappa, residuals })
}

pub fn mlde_residual(k: u32, lambda: u32, order: usize) -> Result<Vec<QExpansion>> {
    Ok(mlde_solve(k, lambda, order)?.residuals.into_iter().map(|c| c.series).collect())
}

const TABLES_JSON: &str = include_str!("../data/generator_tables.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureTable {
    Dim2,
    Dim3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureComponent {
    pub mu: u32,
    #[serde(with = "rational::serde_rational")]
    pub leading_exponent: Rational,
    #[serde(with = "rational::serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub level: u32,
    pub lambda: u32,
    pub components: Vec<FixtureComponent>,
}

#[derive(Deserialize)]
struct FixtureFile {
    version: u32,
    tables: std::collections::BTreeMap<String, Vec<FixtureRow>>,
}

/// Reference expansions shipped with the crate.
pub fn fixture_rows(which: FixtureTable) -> Vec<FixtureRow> {
    let file: FixtureFile = serde_json::from_str(TABLES_JSON).expect("embedded fixture file parses");
    assert_eq!(file.version, 1, "unexpected fixture file version");
    let key = match which {
        FixtureTable::Dim2 => "dim2",
        FixtureTable::Dim3 => "dim3",
    };
    file.tables.get(key).cloned().unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub level: u32,
    pub mu: u32,
    /// `None` for the leading exponent, `Some(n)` for the coefficient of `q^{λ+n}`.
    pub term: Option<usize>,
    #[serde(with = "rational::serde_rational")]
    pub expected: Rational,
    #[serde(with = "rational::serde_rational")]
    pub actual: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureReport {
    pub table: FixtureTable,
    pub entries: Vec<FixtureEntry>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<&FixtureEntry> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

pub fn table_fixture_check(which: FixtureTable) -> Result<FixtureReport> {
    let mut entries = Vec::new();
    for row in fixture_rows(which) {
        let n = row.components.iter().map(|c| c.coeffs.len()).max().unwrap_or(1);
        let gen = cyclic_generator(row.level, row.lambda, n)?;
        for fc in &row.components {
            let series = gen.component(fc.mu).ok_or_else(|| {
                Error::InternalInconsistency(format!("generator has no component μ = {}", fc.mu))
            })?;
            let actual = series.leading_exponent().clone();
            entries.push(FixtureEntry {
                level: row.level,
                mu: fc.mu,
                term: None,
                pass: actual == fc.leading_exponent,
                expected: fc.leading_exponent.clone(),
                actual,
            });
            for (i, expected) in fc.coeffs.iter().enumerate() {
                let actual = series.coeff(i).cloned().unwrap_or_else(Rational::zero);
                entries.push(FixtureEntry {
                    level: row.level,
                    mu: fc.mu,
                    term: Some(i),
                    pass: &actual == expected,
                    expected: expected.clone(),
                    actual,
                });
            }
        }
    }
    Ok(FixtureReport { table: which, entries })
}
