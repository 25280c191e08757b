//! Verification suites shared by the CLI. Each suite returns one [`Check`]
//! per item so failures can be itemised.

use crate::bgg::trivial_multiplicity;
use crate::generators::{mlde_solve, table_fixture_check, FixtureTable};
use crate::mtc::{self, MtcLevelData};
use crate::rational::int;
use crate::rep::{congruence_classify, graded_dimension, hp_coefficient, t_order, Irreducibility};
use crate::sl2::{fusion_unchecked, rho_t, saturation_check};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Mlde,
    Bgg,
    Dims,
    Mtc,
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { suite: suite.into(), name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub tolerance: f64,
    /// Highest level swept by the categorical suite.
    pub mtc_max_level: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { tolerance: mtc::DEFAULT_TOLERANCE, mtc_max_level: 10 }
    }
}

/// Reference entries of `S^(2)` at level 5, rounded to two decimals.
pub const LEVEL5_S2_REFERENCE: [[(f64, f64); 4]; 4] = [
    [(-0.16, -0.33), (-0.26, -0.55), (-0.26, -0.55), (-0.16, -0.33)],
    [(-0.26, -0.55), (-0.16, -0.33), (0.16, 0.33), (0.26, 0.55)],
    [(-0.26, -0.55), (0.16, 0.33), (0.16, 0.33), (-0.26, -0.55)],
    [(-0.16, -0.33), (0.26, 0.55), (-0.26, -0.55), (0.16, 0.33)],
];

pub fn run(suite: Suite, config: &VerifyConfig) -> Vec<Check> {
    match suite {
        Suite::Tables => tables(),
        Suite::Mlde => mlde(),
        Suite::Bgg => bgg(),
        Suite::Dims => dims(),
        Suite::Mtc => categorical(config),
        Suite::All => {
            let mut out = tables();
            out.extend(mlde());
            out.extend(bgg());
            out.extend(dims());
            out.extend(categorical(config));
            out
        }
    }
}

fn tables() -> Vec<Check> {
    let mut out = Vec::new();
    for (which, name) in [(FixtureTable::Dim2, "dim2"), (FixtureTable::Dim3, "dim3")] {
        match table_fixture_check(which) {
            Err(e) => out.push(Check::new("tables", name, false, e.to_string())),
            Ok(report) => {
                let mut keys: Vec<(u32, u32)> = report.entries.iter().map(|e| (e.level, e.mu)).collect();
                keys.dedup();
                for (level, mu) in keys {
                    let bad: Vec<String> = report
                        .entries
                        .iter()
                        .filter(|e| e.level == level && e.mu == mu && !e.pass)
                        .map(|e| match e.term {
                            None => format!("exponent expected {} got {}", e.expected, e.actual),
                            Some(n) => format!("q^{n}: expected {} got {}", e.expected, e.actual),
                        })
                        .collect();
                    out.push(Check::new(
                        "tables",
                        format!("{name} k={level} mu={mu}"),
                        bad.is_empty(),
                        bad.join("; "),
                    ));
                }
            }
        }
    }
    out
}

fn mlde() -> Vec<Check> {
    let cases: Vec<(u32, u32)> =
        (3..=13).step_by(2).map(|k| (k, k - 1)).chain((4..=10).step_by(2).map(|k| (k, k - 2))).collect();
    cases
        .par_iter()
        .map(|&(k, lambda)| {
            let name = format!("k={k} lambda={lambda}");
            match mlde_solve(k, lambda, 10) {
                Ok(r) => {
                    let kappa: Vec<String> = r.kappa.iter().map(|x| x.to_string()).collect();
                    Check::new("mlde", name, r.all_zero(), format!("kappa = [{}]", kappa.join(", ")))
                }
                Err(e) => Check::new("mlde", name, false, e.to_string()),
            }
        })
        .collect()
}

fn bgg() -> Vec<Check> {
    let cases: Vec<(u32, u32)> =
        (2..=12).flat_map(|k| (2..=k).step_by(2).map(move |l| (k, l))).collect();
    cases
        .par_iter()
        .map(|&(k, lambda)| {
            let half = (lambda / 2) as usize;
            let mut bad = Vec::new();
            for n in 0..=half {
                match trivial_multiplicity(k, lambda, n) {
                    Ok(m) => {
                        let want = u64::from(n == half);
                        if m != want {
                            bad.push(format!("n={n}: {m} (want {want})"));
                        }
                    }
                    Err(e) => bad.push(e.to_string()),
                }
            }
            Check::new("bgg", format!("k={k} lambda={lambda}"), bad.is_empty(), bad.join("; "))
        })
        .collect()
}

fn dims() -> Vec<Check> {
    let mut out = Vec::new();
    let mut bad = Vec::new();
    for k in 0..=20u32 {
        for lambda in (0..=k).step_by(2) {
            if saturation_check(k, lambda) != Ok(true) {
                bad.push(format!("({k},{lambda})"));
            }
        }
    }
    out.push(Check::new("dims", "weight bound saturation, k <= 20", bad.is_empty(), bad.join(" ")));

    let mut bad = Vec::new();
    for k in 2..=20u32 {
        for lambda in (0..=k).step_by(2).filter(|l| k - l <= 2) {
            let d = k - lambda + 1;
            if (d == 2 && k < 3) || (d == 3 && k < 4) {
                continue;
            }
            for n in 0..=60 {
                let closed = graded_dimension(k, lambda, n);
                let series = hp_coefficient(d, n);
                if closed.is_err() || closed != series {
                    bad.push(format!("({k},{lambda},{n})"));
                }
            }
        }
    }
    out.push(Check::new("dims", "graded dimensions vs Hilbert-Poincare, k <= 20", bad.is_empty(), bad.join(" ")));

    let mut bad = Vec::new();
    for k in (4..=100u32).step_by(2) {
        let want = if k % 6 == 4 { 12 * (k as u64 + 2) } else { 4 * (k as u64 + 2) };
        match t_order(k, k - 2) {
            Ok(o) if o == want => {}
            other => bad.push(format!("k={k}: {other:?}")),
        }
    }
    out.push(Check::new("dims", "order of rho_{k-2}(T), even k <= 100", bad.is_empty(), bad.join(" ")));

    let mut bad = Vec::new();
    for k in (3..=25u32).step_by(2) {
        let want = if k % 3 == 2 { 8 } else { 24 };
        match congruence_classify(k, k - 1) {
            Ok(v) if v.congruence_level == Some(want) => {}
            other => bad.push(format!("k={k}: {other:?}")),
        }
    }
    out.push(Check::new("dims", "dimension-2 congruence levels, odd k <= 25", bad.is_empty(), bad.join(" ")));

    let mut bad = Vec::new();
    for k in (0..=96u32).step_by(2) {
        let trivial = rho_t(k, k).map(|s| s.t_exponents == vec![int(0)]).unwrap_or(false);
        if trivial != (k % 24 == 0) {
            bad.push(format!("k={k}"));
        }
    }
    out.push(Check::new("dims", "rho_k trivial iff 24 | k", bad.is_empty(), bad.join(" ")));
    out
}

fn categorical(config: &VerifyConfig) -> Vec<Check> {
    let tol = config.tolerance;
    let levels: Vec<u32> = (0..=config.mtc_max_level).collect();
    let mut out: Vec<Check> = levels
        .par_iter()
        .flat_map(|&k| {
            let mut checks = Vec::new();
            let data = match MtcLevelData::with_max_level(k, config.mtc_max_level.max(mtc::DEFAULT_MAX_LEVEL)) {
                Ok(d) => d,
                Err(e) => return vec![Check::new("mtc", format!("k={k}"), false, e.to_string())],
            };
            for p in (0..=k).step_by(2) {
                let name = format!("braid relations k={k} p={p}");
                match data.gen_modular_pair(p, tol) {
                    Ok(pair) => {
                        let r = pair.residuals;
                        checks.push(Check::new(
                            "mtc",
                            name,
                            true,
                            format!("{:.1e} / {:.1e}", r.st_cubed_minus_s_squared, r.s_fourth_minus_twist),
                        ));
                        if p == 0 {
                            let diff = mtc::inf_norm(&(&pair.s_matrix - &data.s_char));
                            checks.push(Check::new("mtc", format!("S^(0) = S k={k}"), diff < tol, format!("{diff:.1e}")));
                        }
                    }
                    Err(e) => checks.push(Check::new("mtc", name, false, e.to_string())),
                }
                let name = format!("T^(p)/nu vs e(r) k={k} p={p}");
                match mtc::compare_with_analytic(k, p) {
                    Ok(c) => checks.push(Check::new("mtc", name, c.passed(tol), format!("{:.1e}", c.max_residual))),
                    Err(e) => checks.push(Check::new("mtc", name, false, e.to_string())),
                }
            }
            if k <= 8 {
                let mut bad = Vec::new();
                for a in 0..=k {
                    for b in 0..=k {
                        for c in 0..=k {
                            let v = data.verlinde(a, b, c);
                            if (v.round() - fusion_unchecked(k, a, b, c) as f64).abs() > 0.0 || (v - v.round()).abs() > 1e-6 {
                                bad.push(format!("({a},{b},{c})"));
                            }
                        }
                    }
                }
                checks.push(Check::new("mtc", format!("Verlinde k={k}"), bad.is_empty(), bad.join(" ")));
            }
            checks
        })
        .collect();
    if config.mtc_max_level >= 5 {
        out.push(level5_check(tol));
    }
    out
}

fn level5_check(tol: f64) -> Check {
    let name = "S^(2) at k=5 against the reference matrix";
    let pair = match mtc::gen_modular_pair(5, 2) {
        Ok(p) => p,
        Err(e) => return Check::new("mtc", name, false, e.to_string()),
    };
    let mut bad = Vec::new();
    for (i, row) in LEVEL5_S2_REFERENCE.iter().enumerate() {
        for (j, &(re, im)) in row.iter().enumerate() {
            let z: Complex64 = pair.s_matrix[(i, j)];
            if (z.re - re).abs() > 0.005 + 1e-12 || (z.im - im).abs() > 0.005 + 1e-12 || z.norm() < 1e-6 {
                bad.push(format!("({i},{j}) = {:.4}{:+.4}i", z.re, z.im));
            }
        }
    }
    let probe = mtc::irreducibility_probe(&pair, &crate::sl2::conformal_weight(5, 2), tol);
    if probe != Ok(Irreducibility::Irreducible) {
        bad.push(format!("probe: {probe:?}"));
    }
    Check::new("mtc", name, bad.is_empty(), bad.join("; "))
}
