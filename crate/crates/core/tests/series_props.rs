use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sl2torus::rational::{binomial_rational, int, rat, Rational};
use sl2torus::series::{bernoulli, eisenstein, eta_power, euler_product, j_inverse, modular_derivative, QExpansion};

fn sigma(n: usize, p: u32) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as i64).pow(p)).sum()
}

/// Eisenstein series with constant term 1, from divisor sums.
fn standard_eisenstein(weight: u32, order: usize) -> QExpansion {
    let c: i64 = match weight {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => unreachable!(),
    };
    let coeffs = (0..order).map(|n| if n == 0 { int(1) } else { int(c * sigma(n, weight - 1)) }).collect();
    QExpansion::new(int(0), coeffs)
}

/// Euler's pentagonal number theorem.
fn pentagonal(order: usize) -> QExpansion {
    let mut c = vec![Rational::zero(); order];
    for m in -(order as i64)..=(order as i64) {
        let e = m * (3 * m - 1) / 2;
        if e >= 0 && (e as usize) < order {
            c[e as usize] += if m % 2 == 0 { int(1) } else { int(-1) };
        }
    }
    QExpansion::new(int(0), c)
}

/// `(1 + x)^α = Σ C(α, n) x^n` by repeated multiplication.
fn binomial_oracle(a: &QExpansion, alpha: &Rational) -> QExpansion {
    let n = a.order();
    let mut x = a.coeffs().to_vec();
    x[0] = Rational::zero();
    let x = QExpansion::new(int(0), x);
    let mut total = QExpansion::zero(int(0), n);
    let mut power = QExpansion::one(n);
    for m in 0..n {
        total = total.add(&power.scale(&binomial_rational(alpha, m))).unwrap();
        power = power.mul(&x);
    }
    total
}

#[test]
fn euler_product_matches_pentagonal_theorem() {
    assert_eq!(euler_product(80), pentagonal(80));
}

#[test]
fn eisenstein_matches_divisor_sums() {
    for (w, c) in [(2u32, rat(-1, 12)), (4, rat(1, 720)), (6, rat(-1, 30240))] {
        assert_eq!(eisenstein(w, 30).unwrap(), standard_eisenstein(w, 30).scale(&c));
    }
}

#[test]
fn bernoulli_recurrence_and_odd_vanishing() {
    for n in 2..24usize {
        let mut s = Rational::zero();
        for j in 0..n {
            let binom: BigInt = (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1));
            s += Rational::from_integer(binom) * bernoulli(j);
        }
        assert!(s.is_zero(), "n = {n}");
    }
    for n in (3..41).step_by(2) {
        assert!(bernoulli(n).is_zero());
    }
}

#[test]
fn ramanujan_derivative_identities() {
    let n = 25;
    let e4 = eisenstein(4, n).unwrap();
    let e6 = eisenstein(6, n).unwrap();
    assert!(modular_derivative(&e4, &int(4)).agrees_with(&e6.scale(&int(14))));
    assert!(modular_derivative(&e6, &int(6)).agrees_with(&e4.mul(&e4).scale(&rat(60, 7))));
    // standard normalisation: q dE4/dq = (E2 E4 − E6)/3
    let (s2, s4, s6) = (standard_eisenstein(2, n), standard_eisenstein(4, n), standard_eisenstein(6, n));
    let lhs = s4.q_derivative();
    let rhs = s2.mul(&s4).sub(&s6).unwrap().scale(&rat(1, 3));
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn j_inverse_matches_classical_j() {
    // 1728/j with j = E4^3 / Δ and Δ from the pentagonal product
    let n = 12;
    let e4 = standard_eisenstein(4, n);
    let delta = pentagonal(n).pow(&int(24)).unwrap();
    let expected = delta.mul(&e4.mul(&e4).mul(&e4).inverse().unwrap()).scale(&int(1728)).shift(&int(1));
    assert_eq!(j_inverse(n).unwrap(), expected);
    // j = 1/q + 744 + 196884 q + 21493760 q^2 + …
    let j = j_inverse(4).unwrap().scale(&rat(1, 1728)).inverse().unwrap();
    assert_eq!(j, QExpansion::from_integers(int(-1), &[1, 744, 196884, 21493760]));
}

#[test]
fn eta_is_killed_by_its_modular_derivative() {
    for r in [int(1), int(3), rat(5, 2), rat(-7, 3)] {
        let f = eta_power(&r, 21);
        assert!(modular_derivative(&f, &(&r / int(2))).is_zero(), "r = {r}");
    }
}

#[test]
fn delta_from_eta_is_a_cusp_form() {
    let d = eta_power(&int(24), 10);
    let tau = [1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920];
    assert_eq!(d, QExpansion::from_integers(int(1), &tau));
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn series(len: usize) -> impl Strategy<Value = QExpansion> {
    prop::collection::vec(small_rational(), len).prop_map(|c| QExpansion::new(int(0), c))
}

fn unit_series(len: usize) -> impl Strategy<Value = QExpansion> {
    prop::collection::vec(small_rational(), len - 1).prop_map(|mut c| {
        c.insert(0, int(1));
        QExpansion::new(int(0), c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in series(7), b in series(7), c in series(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let left = a.mul(&b.add(&c).unwrap());
        let right = a.mul(&b).add(&a.mul(&c)).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn eta_powers_add(r in small_rational(), s in small_rational()) {
        let n = 9;
        let lhs = eta_power(&r, n).mul(&eta_power(&s, n));
        prop_assert!(lhs.agrees_with(&eta_power(&(&r + &s), n)));
    }

    #[test]
    fn powers_add(a in unit_series(7), p in small_rational(), q in small_rational()) {
        let lhs = a.pow(&p).unwrap().mul(&a.pow(&q).unwrap());
        prop_assert_eq!(lhs, a.pow(&(&p + &q)).unwrap());
    }

    #[test]
    fn power_matches_binomial_oracle(a in unit_series(7), alpha in small_rational()) {
        prop_assert_eq!(a.pow(&alpha).unwrap(), binomial_oracle(&a, &alpha));
    }

    #[test]
    fn inverse_round_trip(a in unit_series(8)) {
        prop_assert_eq!(a.inverse().unwrap().inverse().unwrap(), a.clone());
        prop_assert_eq!(a.mul(&a.inverse().unwrap()), QExpansion::one(8));
    }

    #[test]
    fn modular_derivative_is_a_derivation(
        f in series(8), g in series(8), k in small_rational(), l in small_rational(),
        ef in small_rational(), eg in small_rational(),
    ) {
        let f = f.shift(&ef);
        let g = g.shift(&eg);
        let lhs = modular_derivative(&f.mul(&g), &(&k + &l));
        let rhs = modular_derivative(&f, &k).mul(&g).add(&f.mul(&modular_derivative(&g, &l))).unwrap();
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn json_round_trip(a in series(6), e in small_rational()) {
        let a = a.shift(&e);
        let js = serde_json::to_string(&a).unwrap();
        let back: QExpansion = serde_json::from_str(&js).unwrap();
        prop_assert_eq!(back, a);
    }
}
