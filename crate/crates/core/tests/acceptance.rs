//! Acceptance criteria. Each criterion prints one PASS/FAIL line.

use std::time::Instant;

use num_traits::Zero;
use sl2torus::bgg::trivial_multiplicity;
use sl2torus::generators::{
    cyclic_generator, eta_j_hypergeometric, mlde_solve, table_fixture_check, FixtureTable, HypergeomSpec,
};
use sl2torus::mtc::{
    certified_congruence, compare_with_analytic, irreducibility_probe, inf_norm, MtcLevelData, DEFAULT_TOLERANCE,
};
use sl2torus::rational::{int, rat, Rational};
use sl2torus::rep::{congruence_classify, graded_dimension, hp_coefficient, t_order, CongruenceStatus, Irreducibility};
use sl2torus::series::{eisenstein, eta_power, modular_derivative, QExpansion};
use sl2torus::sl2::{conformal_weight, leading_exponents, saturation_check, xi_set};
use sl2torus::verify::LEVEL5_S2_REFERENCE;

/// Double-precision categorical data. Observed residuals for k ≤ 10 stay
/// below 1e-13, so this leaves four orders of headroom.
const MTC_TOL: f64 = 1e-9;
/// Half a unit in the second decimal of the rounded reference matrix.
const REFERENCE_TOL: f64 = 0.005;
/// Entries below this count as structural zeros.
const TINY_ENTRY: f64 = 1e-6;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn run(id: u32, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let ms = start.elapsed().as_millis();
    let tag = if o.passed { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{tag}] {name} ({ms} ms): {}", o.detail);
    o.passed
}

fn table_reproduction(which: FixtureTable) -> Outcome {
    let report = table_fixture_check(which).expect("fixture check runs");
    let fails = report.failures();
    let mut comps: Vec<(u32, u32)> = fails.iter().map(|e| (e.level, e.mu)).collect();
    comps.dedup();
    let detail = format!(
        "{} of {} entries exact{}",
        report.entries.len() - fails.len(),
        report.entries.len(),
        if comps.is_empty() { String::new() } else { format!(", mismatched (k, μ): {comps:?}") }
    );
    outcome(fails.is_empty(), detail)
}

fn criterion1() -> Outcome {
    table_reproduction(FixtureTable::Dim2)
}

/// Hypergeometric data that accompanies the dimension-3 reference rows for
/// the two components below the top one, as `(J exponent, upper, lower)`.
fn reference_dim3_recipe(k: u32, which: usize) -> (Rational, Vec<Rational>, Vec<Rational>) {
    let kk = k as i64;
    let big = kk + 2;
    if which == 0 {
        (
            rat(kk + 1, 12 * big),
            vec![rat(-(kk + 1), 12 * big), rat(11 * kk + 14, 24 * big), rat(19 * kk + 30, 24 * big)],
            vec![rat(3 * kk + 7, 4 * big), rat(1, 2)],
        )
    } else {
        (
            rat(-(kk + 1), 6 * big),
            vec![rat(kk + 1, 6 * big), rat(3 * kk + 5, 6 * big), rat(5 * kk + 9, 6 * big)],
            vec![rat(5 * kk + 9, 4 * big), rat(5, 8)],
        )
    }
}

/// Third-order residual of `f` (after η-rescaling) with the coefficients of
/// the generator's own equation.
fn dim3_residual(k: u32, f: &QExpansion, order: usize) -> QExpansion {
    let report = mlde_solve(k, k - 2, order).expect("mlde solves");
    let m0 = leading_exponents(k, k - 2).unwrap()[0].clone();
    let work = order + 3;
    let g = f.mul(&eta_power(&(int(-24) * &m0), work));
    let w = report.weight.clone();
    let d1 = modular_derivative(&g, &w);
    let d2 = modular_derivative(&d1, &(&w + int(2)));
    let d3 = modular_derivative(&d2, &(&w + int(4)));
    let e4 = eisenstein(4, work).unwrap();
    let e6 = eisenstein(6, work).unwrap();
    d3.add(&e4.mul(&d1).scale(&report.kappa[0]))
        .and_then(|s| s.add(&e6.mul(&g).scale(&report.kappa[1])))
        .unwrap()
        .truncate(order)
}

fn criterion2() -> Outcome {
    let base = table_reproduction(FixtureTable::Dim3);
    if base.passed {
        return base;
    }
    // The mismatching rows agree with the reference hypergeometric data, which
    // does not solve the generator's differential equation.
    let mut notes = Vec::new();
    for k in [4u32, 6, 8, 10] {
        let eta_exp = rat(3 * (k as i64).pow(2) - 2 * k as i64 - 8, 2 * (k as i64 + 2));
        let labels = xi_set(k, k - 2).unwrap();
        let row = sl2torus::generators::fixture_rows(FixtureTable::Dim3)
            .into_iter()
            .find(|r| r.level == k)
            .unwrap();
        for which in 0..2 {
            let (a, up, lo) = reference_dim3_recipe(k, which);
            let spec = HypergeomSpec::new(up, lo).unwrap();
            let f = eta_j_hypergeometric(&eta_exp, &a, &spec, 6).unwrap();
            let fc = &row.components[which];
            let matches_table = f.leading_exponent() == &fc.leading_exponent && f.coeffs()[..5] == fc.coeffs[..];
            let res = dim3_residual(k, &f, 6);
            let first = (0..res.order()).find(|&n| !res.coeffs()[n].is_zero());
            notes.push(format!(
                "k={k} μ={}: reference data reproduces rows={matches_table}, residual first nonzero at q-offset {first:?}",
                labels[which]
            ));
        }
    }
    outcome(false, format!("{}; {}", base.detail, notes.join("; ")))
}

fn criterion3() -> Outcome {
    for k in (2..=20u32).step_by(2) {
        let g = cyclic_generator(k, k, 30).unwrap();
        let expected = eta_power(&rat(3 * k as i64, 2), 30);
        if g.components.len() != 1 || g.components[0].series != expected {
            return outcome(false, format!("k = {k} differs from η^(3k/2)"));
        }
    }
    outcome(true, "η^(3k/2) exact through q^29 for even k in 2..=20")
}

fn criterion4() -> Outcome {
    for k in (3..=13u32).step_by(2) {
        let r = mlde_solve(k, k - 1, 10).unwrap();
        if r.kappa != vec![rat(25, 4)] || r.weight != rat(1, 2) || !r.all_zero() {
            return outcome(false, format!("dimension 2 fails at k = {k}: κ = {:?}", r.kappa));
        }
    }
    let mut kappas = Vec::new();
    for k in (4..=10u32).step_by(2) {
        let r = mlde_solve(k, k - 2, 10).unwrap();
        if !r.all_zero() {
            return outcome(false, format!("dimension 3 residual nonzero at k = {k}"));
        }
        kappas.push(format!("k={k}: ({}, {})", r.kappa[0], r.kappa[1]));
    }
    outcome(true, format!("all residuals exactly zero through order 10; dim-3 κ {}", kappas.join(", ")))
}

fn criterion5() -> Outcome {
    let mut checked = 0;
    for k in 2..=12u32 {
        for lambda in (2..=k).step_by(2) {
            let half = (lambda / 2) as usize;
            for n in 0..half {
                if trivial_multiplicity(k, lambda, n).unwrap() != 0 {
                    return outcome(false, format!("(k, λ, n) = ({k}, {lambda}, {n}) has invariants"));
                }
            }
            let m = trivial_multiplicity(k, lambda, half).unwrap();
            if m != 1 {
                return outcome(false, format!("(k, λ) = ({k}, {lambda}) has multiplicity {m} at n = λ/2"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} pairs: zero below λ/2, one at λ/2"))
}

fn criterion6() -> Outcome {
    let mut checked = 0;
    for k in 0..=20u32 {
        for lambda in (0..=k).step_by(2) {
            if !saturation_check(k, lambda).unwrap() {
                return outcome(false, format!("(k, λ) = ({k}, {lambda}) not saturated"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} pairs saturate the weight bound"))
}

fn criterion7() -> Outcome {
    let mut checked = 0;
    for k in 0..=20u32 {
        for lambda in (0..=k).step_by(2) {
            let d = k - lambda + 1;
            if d > 3 {
                continue;
            }
            for n in 0..=60u32 {
                match graded_dimension(k, lambda, n) {
                    Ok(g) if g == hp_coefficient(d, n).unwrap() => checked += 1,
                    Ok(g) => return outcome(false, format!("(k, λ, n) = ({k}, {lambda}, {n}): {g}")),
                    // below the range where the free-module description holds
                    Err(sl2torus::Error::Unsupported(_)) => {}
                    Err(e) => return outcome(false, format!("(k, λ, n) = ({k}, {lambda}, {n}): {e}")),
                }
            }
        }
    }
    outcome(checked > 0, format!("{checked} graded dimensions agree with the Hilbert-Poincaré series"))
}

fn criterion8() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for k in 0..=10u32 {
        let data = MtcLevelData::new(k).unwrap().with_tensors();
        for p in (0..=k).step_by(2) {
            let pair = match data.gen_modular_pair(p, MTC_TOL) {
                Ok(pair) => pair,
                Err(e) => return outcome(false, format!("(k, p) = ({k}, {p}): {e}")),
            };
            worst = worst.max(pair.residuals.st_cubed_minus_s_squared).max(pair.residuals.s_fourth_minus_twist);
            pairs += 1;
        }
    }
    outcome(worst < MTC_TOL, format!("{pairs} pairs, worst ∞-norm residual {worst:.2e}"))
}

fn criterion9() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..=10u32 {
        let data = MtcLevelData::new(k).unwrap();
        let pair = data.gen_modular_pair(0, MTC_TOL).unwrap();
        worst = worst.max(inf_norm(&(&pair.s_matrix - &data.s_char)));
        if k <= 8 {
            for a in 0..=k {
                for b in 0..=k {
                    for c in 0..=k {
                        let v = data.verlinde(a, b, c).round() as u32;
                        let f = sl2torus::sl2::fusion_coefficient(k, a, b, c).unwrap();
                        if v != f {
                            return outcome(false, format!("Verlinde N_{{{a}{b}}}^{c} = {v} at k = {k}, expected {f}"));
                        }
                    }
                }
            }
        }
    }
    outcome(worst < MTC_TOL, format!("‖S^(0) − S‖_∞ ≤ {worst:.2e}; Verlinde exact for k ≤ 8"))
}

fn criterion10() -> Outcome {
    let pair = MtcLevelData::new(5).unwrap().gen_modular_pair(2, MTC_TOL).unwrap();
    let mut worst: f64 = 0.0;
    let mut smallest = f64::INFINITY;
    for (i, row) in LEVEL5_S2_REFERENCE.iter().enumerate() {
        for (j, &(re, im)) in row.iter().enumerate() {
            let z = pair.s_matrix[(i, j)];
            worst = worst.max((z.re - re).abs()).max((z.im - im).abs());
            smallest = smallest.min(z.norm());
        }
    }
    let probe = irreducibility_probe(&pair, &conformal_weight(5, 2), MTC_TOL).unwrap();
    let (_, verdict) = certified_congruence(5, 2, MTC_TOL).unwrap();
    let ok = pair.basis.len() == 4
        && worst < REFERENCE_TOL
        && smallest > TINY_ENTRY
        && probe == Irreducibility::Irreducible
        && verdict.status == CongruenceStatus::Noncongruence;
    outcome(
        ok,
        format!(
            "dim {}, max entry deviation {worst:.4}, min |entry| {smallest:.3}, probe {probe:?}, verdict {:?} ({})",
            pair.basis.len(),
            verdict.status,
            verdict.basis
        ),
    )
}

fn criterion11() -> Outcome {
    for k in (3..=25u32).step_by(2) {
        let v = congruence_classify(k, k - 1).unwrap();
        let expected = if k % 3 == 2 { 8 } else { 24 };
        if v.status != CongruenceStatus::Congruence || v.congruence_level != Some(expected) {
            return outcome(false, format!("dimension 2 at k = {k}: {v:?}"));
        }
    }
    for k in (4..=100u32).step_by(2) {
        let expected = if k % 6 == 4 { 12 * (k as u64 + 2) } else { 4 * (k as u64 + 2) };
        let got = t_order(k, k - 2).unwrap();
        if got != expected {
            return outcome(false, format!("t_order({k}, {}) = {got}, expected {expected}", k - 2));
        }
    }
    for k in (2..=96u32).step_by(2) {
        if (t_order(k, k).unwrap() == 1) != (k % 24 == 0) {
            return outcome(false, format!("ρ_k triviality wrong at k = {k}"));
        }
    }
    outcome(true, "dim-2 levels, dim-3 order closed form (k ≤ 100), trivial ρ_k iff 24 | k")
}

fn criterion12() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for k in 0..=10u32 {
        for lambda in (0..=k).step_by(2) {
            let c = compare_with_analytic(k, lambda).unwrap();
            worst = worst.max(c.max_residual);
            count += c.t_entries.len();
        }
    }
    outcome(worst < MTC_TOL, format!("{count} diagonal entries, worst residual {worst:.2e}"))
}

fn main() {
    assert_eq!(MTC_TOL, DEFAULT_TOLERANCE);
    let results = [
        run(1, "dimension-2 reference expansions", criterion1),
        run(2, "dimension-3 reference expansions", criterion2),
        run(3, "dimension-1 identity", criterion3),
        run(4, "MLDE annihilation", criterion4),
        run(5, "BGG multiplicities", criterion5),
        run(6, "saturation", criterion6),
        run(7, "graded dimensions", criterion7),
        run(8, "B3 relations", criterion8),
        run(9, "S^(0) and Verlinde", criterion9),
        run(10, "level-5 S^(2) matrix", criterion10),
        run(11, "classification fixtures", criterion11),
        run(12, "categorical/analytic T", criterion12),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &p)| !p).map(|(i, _)| i + 1).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
