//! Randomized invariants of the core algebra.

use proptest::collection::vec;
use proptest::prelude::*;
use qell::chromatic::leibniz_defects;
use qell::exact_algebra::{parse_poly, rat, v2};
use qell::group_cohomology::{coboundary, Cochain, C4};
use qell::hopf::right_unit;
use qell::rings::{A, XY};
use qell::weierstrass::tate_round_trip;
use qell::{Poly, Rat};

fn poly_in(table: &std::sync::Arc<qell::GeneratorTable>, names: &[&str], terms: &[(i64, Vec<u32>)]) -> Poly<Rat> {
    let mut out = Poly::zero(table);
    for (c, exps) in terms {
        let mono: Vec<String> = names.iter().zip(exps).map(|(n, e)| format!("{n}^{e}")).collect();
        out = out.add(&parse_poly::<Rat>(table, &format!("{c}*{}", mono.join("*"))).expect("monomial"));
    }
    out
}

fn a_poly() -> impl Strategy<Value = Poly<Rat>> {
    vec((-3i64..=3, vec(0u32..=2, 5)), 0..4).prop_map(|t| poly_in(&A, &["a1", "a2", "a3", "a4", "a6"], &t))
}

/// A homogeneous element of A of weight 1 to 4.
fn small_a_poly() -> impl Strategy<Value = Poly<Rat>> {
    (1i64..=4, vec(-2i64..=2, 12)).prop_map(|(w, coeffs)| {
        let mut monos = Vec::new();
        for e4 in 0..=w / 4 {
            for e3 in 0..=w / 3 {
                for e2 in 0..=w / 2 {
                    let e1 = w - 2 * e2 - 3 * e3 - 4 * e4;
                    if e1 >= 0 {
                        monos.push(vec![e1 as u32, e2 as u32, e3 as u32, e4 as u32, 0]);
                    }
                }
            }
        }
        let terms: Vec<_> = coeffs.into_iter().zip(monos).filter(|(c, _)| *c != 0).collect();
        poly_in(&A, &["a1", "a2", "a3", "a4", "a6"], &terms)
    })
}

fn xy_poly() -> impl Strategy<Value = Poly<Rat>> {
    vec((-3i64..=3, vec(0u32..=3, 2)), 0..4).prop_map(|t| poly_in(&XY, &["x", "y"], &t))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=50).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(x in a_poly(), y in a_poly(), z in a_poly()) {
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn display_parses_back(x in a_poly()) {
        prop_assert_eq!(parse_poly::<Rat>(&A, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn two_adic_valuation_is_additive(p in nonzero_rat(), q in nonzero_rat()) {
        prop_assert_eq!(v2(&(&p * &q)), Some(v2(&p).unwrap() + v2(&q).unwrap()));
    }

    #[test]
    fn right_unit_is_a_ring_map(x in small_a_poly(), y in small_a_poly()) {
        let (ex, ey) = (right_unit(&x).unwrap(), right_unit(&y).unwrap());
        prop_assert_eq!(right_unit(&x.mul(&y)).unwrap(), ex.mul(&ey));
        prop_assert_eq!(right_unit(&x.add(&y)).unwrap(), ex.add(&ey));
    }

    #[test]
    fn leibniz_and_doubling(x in small_a_poly(), y in small_a_poly(), five in any::<bool>()) {
        let bad = leibniz_defects(&x, &y, if five { 5 } else { 3 }).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn coboundary_squares_to_zero(values in vec(xy_poly(), 16)) {
        let a = &*C4;
        let one = Cochain::from_values(a, values[..4].to_vec()).unwrap();
        let two = Cochain::from_fn(a, 2, |g| values[4 * g[0] + g[1]].clone());
        prop_assert!(coboundary(a, &coboundary(a, &one).unwrap()).unwrap().is_zero());
        prop_assert!(coboundary(a, &coboundary(a, &two).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn tate_normal_form_recovers_b(seed in any::<u64>(), b in nonzero_rat()) {
        let r = tate_round_trip(seed, &[b], 3).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
    }
}
