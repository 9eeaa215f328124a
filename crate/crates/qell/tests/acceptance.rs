//! The ten acceptance criteria, one PASS/FAIL line each, timed against their budgets.
//!
//! Two lines are expected to read FAIL. Criterion 9 fails on three weight-22
//! entries of the published ℓ = 5 table that contradict the table's own pattern
//! (one has the wrong weight). Criterion 10 fails on the literal squaring rule,
//! which breaks exactly when two staircase terms collide in the same 2-adic digit.
//! For both, the run asserts that the failure has precisely that shape and
//! nothing else; the process exits nonzero only on an unexpected outcome.

use std::process::ExitCode;
use std::time::Instant;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRunner};
use qell::charts::{composite_zero_failures, compare_with_fixture, d1_fixture, d1_table};
use qell::chromatic::{
    beta_table, coface, d_component, digits, displayed_congruences, expansion_rules_check, k_function, later_displays,
    leibniz_defects, square_collision, staircase, verify_cocycle, BetaFamily, ChromaticFraction, Component, Expr,
};
use qell::exact_algebra::{parse_poly, Modulus};
use qell::group_cohomology::verify_e2_relations;
use qell::hopf::right_unit;
use qell::level_maps::{
    check_map_table, composite_identity_check, level, nu2_three_power_minus_one, tmf_basis, tmf_monomial, TMF_TO_A,
};
use qell::rings::A;
use qell::velu::velu_report;
use qell::weierstrass::{default_tate_parameters, order_five_certificate, tate_round_trip};
use qell::{AlgResult, Poly, Rat};

/// A ring map under test, as a closure on polynomials.
type Map<'a> = Box<dyn Fn(&Poly<Rat>) -> AlgResult<Poly<Rat>> + 'a>;

const SEED: u64 = 20_240_501;
const CASES: usize = 1000;

/// What a criterion produced.
struct Outcome {
    pass: bool,
    /// The outcome is the documented one (equal to `pass` except for criteria 9 and 10).
    expected: bool,
    detail: String,
}

impl Outcome {
    fn plain(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, expected: pass, detail: detail.into() }
    }
}

/// Run one criterion, print its line and report whether the outcome was the expected one.
fn criterion(n: usize, budget: f64, f: impl FnOnce() -> AlgResult<Outcome>) -> bool {
    let start = Instant::now();
    let out = f().unwrap_or_else(|e| Outcome::plain(false, format!("error: {e}")));
    let secs = start.elapsed().as_secs_f64();
    let in_time = secs < budget;
    let pass = out.pass && in_time;
    let timing = if in_time { String::new() } else { " over budget".to_string() };
    println!(
        "criterion {n}: {} ({secs:.2}s of {budget}s{timing}) {}",
        if pass { "PASS" } else { "FAIL" },
        out.detail
    );
    out.expected && in_time
}

fn a_monomials(w: i64) -> Vec<Poly<Rat>> {
    let mut out = Vec::new();
    for e6 in 0..=w / 6 {
        for e4 in 0..=w / 4 {
            for e3 in 0..=w / 3 {
                for e2 in 0..=w / 2 {
                    let e1 = w - 2 * e2 - 3 * e3 - 4 * e4 - 6 * e6;
                    if e1 >= 0 {
                        let s = format!("a1^{e1}*a2^{e2}*a3^{e3}*a4^{e4}*a6^{e6}");
                        out.push(parse_poly::<Rat>(&A, &s).expect("monomial of A"));
                    }
                }
            }
        }
    }
    out
}

fn combination(basis: &[Poly<Rat>], coeffs: &[i64], zero: Poly<Rat>) -> Poly<Rat> {
    basis.iter().zip(coeffs).fold(zero, |acc, (b, &c)| acc.add(&b.scale(&Rat::from_integer(c.into()))))
}

/// A random homogeneous element of A of weight w.
fn a_element(w: i64, coeffs: &[i64]) -> Poly<Rat> {
    combination(&a_monomials(w), coeffs, Poly::zero(&A))
}

/// Draw `CASES` values from a strategy with a fixed seed.
fn sample<S: Strategy>(strategy: S) -> Vec<S::Value> {
    let mut runner = TestRunner::new_with_rng(
        Config { cases: CASES as u32, ..Config::default() },
        proptest::test_runner::TestRng::from_seed(proptest::test_runner::RngAlgorithm::ChaCha, &seed_bytes()),
    );
    (0..CASES).map(|_| strategy.new_tree(&mut runner).expect("value").current()).collect()
}

fn seed_bytes() -> [u8; 32] {
    let mut out = [0u8; 32];
    out[..8].copy_from_slice(&SEED.to_le_bytes());
    out
}

fn coefficients() -> impl Strategy<Value = Vec<i64>> {
    vec(-2i64..=2, 24)
}

fn tate() -> AlgResult<Outcome> {
    let b = default_tate_parameters();
    let r = tate_round_trip(SEED, &b, 100)?;
    let detail = format!("{} trials over {} values of b0, {} failures", r.trials, b.len(), r.failures.len());
    Ok(Outcome::plain(r.passed() && r.trials == 1000, detail))
}

fn order_five() -> AlgResult<Outcome> {
    let c = order_five_certificate()?;
    let detail = format!("5(0,0) = infinity: {}, psi5(0,0) = {}", c.five_p_is_infinity, c.psi5_at_origin);
    Ok(Outcome::plain(c.passed(), detail))
}

fn velu() -> AlgResult<Outcome> {
    let r = velu_report()?;
    let detail = format!("T1 quotient matches: {}, level-3 quotient matches q*: {}", r.t1_matches, r.level3_matches);
    Ok(Outcome::plain(r.passed(), detail))
}

fn map_tables() -> AlgResult<Outcome> {
    let mut total = 0;
    let mut bad = Vec::new();
    let mut named = 0;
    for ell in [3, 5] {
        for c in check_map_table(ell)? {
            total += 1;
            let row = &c.expected;
            let key = (row.ell, row.map.as_str(), row.source.as_str(), row.image.as_str());
            if key == (5, "q", "c4", "b2^2 + 228*b4 + 492*delta") || key == (5, "t", "delta", "1/5*(b2^2 - 22*b4 + 117*delta)")
            {
                named += c.matches as usize;
            }
            if !c.matches {
                bad.push(format!("{}*({}) = {} but computed {}", row.map, row.source, row.image, c.computed));
            }
        }
    }
    let detail = format!("{}/{total} rows verbatim, named images {named}/2 {}", total - bad.len(), bad.join("; "));
    Ok(Outcome::plain(bad.is_empty() && named == 2, detail))
}

fn composites() -> AlgResult<Outcome> {
    let mut total = 0;
    let mut failed = Vec::new();
    for ell in [3, 5] {
        for line in composite_identity_check(ell)? {
            total += 1;
            if !line.holds {
                failed.push(format!("ell={ell} {} on {}", line.identity, line.input));
            }
        }
    }
    Ok(Outcome::plain(failed.is_empty(), format!("{}/{total} identities hold {}", total - failed.len(), failed.join("; "))))
}

fn e2() -> AlgResult<Outcome> {
    let r = verify_e2_relations(24)?;
    let holding = r.relations.iter().filter(|c| c.holds()).count();
    let detail = format!(
        "{holding}/{} relations, witness table {} coboundary {}, {} bidegrees with {} rank mismatches",
        r.relations.len(),
        r.witness.table_matches,
        r.witness.coboundary_matches,
        r.ranks.bidegrees,
        r.ranks.mismatches.len()
    );
    Ok(Outcome::plain(r.passed() && r.relations.len() == 15, detail))
}

fn chromatic_displays() -> AlgResult<Outcome> {
    let checks = displayed_congruences(&[1, 3], 4, 5)?;
    let failed: Vec<String> = checks.iter().filter(|c| !c.holds).map(|c| format!("{} (ell={})", c.name, c.ell)).collect();
    let corrected = later_displays(&[1, 3], 4, 5)?;
    let corrected_ok = corrected.iter().all(|(_, c)| c.holds);
    let detail = format!(
        "{}/{} displays hold, corrected reductions hold: {corrected_ok} {}",
        checks.len() - failed.len(),
        checks.len(),
        failed.join("; ")
    );
    Ok(Outcome::plain(failed.is_empty() && corrected_ok, detail))
}

fn beta() -> AlgResult<Outcome> {
    let (i_max, j_max, k_max) = (64, 256, 8);
    let keys = |f| -> AlgResult<std::collections::BTreeSet<_>> {
        Ok(beta_table(f, i_max, j_max, k_max)?.into_iter().map(|x| x.key()).collect())
    };
    let (sphere, q3, q5) = (keys(BetaFamily::Sphere)?, keys(BetaFamily::Q3)?, keys(BetaFamily::Q5)?);
    let same = sphere == q3;
    let sphere1: std::collections::BTreeSet<_> = sphere.iter().filter(|k| k.3 == 1).copied().collect();
    let q51: std::collections::BTreeSet<_> = q5.iter().filter(|k| k.3 == 1).copied().collect();
    let strict = q51.is_superset(&sphere1) && q51.len() > sphere1.len();
    let witness = (1, 2, 8, 1);
    let witnessed = q51.contains(&witness) && !sphere1.contains(&witness);
    let x2 = [ChromaticFraction::new("x2", 1, 8)?];
    let spot5 = verify_cocycle(&x2, 5)?;
    let spot3 = !verify_cocycle(&x2, 3)?;
    let da4: Vec<_> = displayed_congruences(&[1, 3], 2, 3)?
        .into_iter()
        .filter(|c| c.name.contains("(a4 + a2^2)^2") || c.name.contains("a3^(4m)/8v1^2"))
        .collect();
    let da4_ok = da4.len() >= 3 && da4.iter().all(|c| c.holds);
    let detail = format!(
        "Q3 = sphere: {same}, Q5 k=1 strict superset: {strict}, a3^4/v1^8 witness: {witnessed}, \
         x2/(2 v1^8) cocycle for ell=5: {spot5} and not for ell=3: {spot3}, {} a4-square displays hold: {da4_ok}",
        da4.len()
    );
    Ok(Outcome::plain(same && strict && witnessed && spot5 && spot3 && da4_ok, detail))
}

/// Mismatches are expected only on the three published weight-22 entries.
const WEIGHT_22_ERRATA: [(&str, &str); 3] =
    [("b2*delta^5", "b2*b4*delta^4"), ("b2^3*delta^4", "b2*delta^5"), ("b2^5*delta^3", "b2^6*b4*delta^3")];

fn differential_tables() -> AlgResult<Outcome> {
    let mut parts = Vec::new();
    let mut all_match = true;
    let mut shape_ok = true;
    for ell in [3, 5] {
        let table = d1_table(ell, 24)?;
        let cmp = compare_with_fixture(&table, &d1_fixture(ell)?);
        let zeros = composite_zero_failures(ell, 24)?;
        all_match &= cmp.mismatches.is_empty() && zeros.is_empty();
        shape_ok &= zeros.is_empty();
        let seen: Vec<(&str, &str)> = cmp
            .mismatches
            .iter()
            .map(|m| (m.expected.source_monomial.as_str(), m.expected.target_monomial.as_str()))
            .collect();
        let errata: &[(&str, &str)] = if ell == 5 { &WEIGHT_22_ERRATA } else { &[] };
        shape_ok &= seen == errata && cmp.mismatches.iter().all(|m| m.expected.weight == 22);
        parts.push(format!("ell={ell}: {}/{} rules", cmp.matched, cmp.matched + cmp.mismatches.len()));
        for m in &cmp.mismatches {
            let got = m.computed.as_ref().map_or("none".to_string(), |c| {
                format!("2^{} {}", c.two_exponent, c.target_monomial)
            });
            parts.push(format!(
                "w={} {} -> listed 2^{} {}, computed {got}",
                m.expected.weight, m.expected.source_monomial, m.expected.two_exponent, m.expected.target_monomial
            ));
        }
        parts.push(format!("composite zero in every weight: {}", zeros.is_empty()));
    }
    if !all_match && shape_ok {
        parts.push("(the listed weight-22 entries are inconsistent with the table; all other rules reproduce)".into());
    }
    Ok(Outcome { pass: all_match, expected: all_match || shape_ok, detail: parts.join(", ") })
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.cases += 1;
        self.failures += (!ok) as usize;
    }
}

fn leibniz_suite() -> AlgResult<Tally> {
    let mut t = Tally::default();
    let cases = sample((1i64..=4, coefficients(), 1i64..=4, coefficients(), prop::bool::ANY));
    for (wx, cx, wy, cy, five) in cases {
        let (x, y) = (a_element(wx, &cx), a_element(wy, &cy));
        t.record(leibniz_defects(&x, &y, if five { 5 } else { 3 })?.is_empty());
    }
    Ok(t)
}

/// Squaring-rule and odd-power tallies from one batch of random x ≡ a₃ᵉ mod (2, a₁).
struct ExpansionTallies {
    literal_square: Tally,
    literal_non_collision: usize,
    corrected_square: Tally,
    odd_power: Tally,
}

fn expansion_suite() -> AlgResult<ExpansionTallies> {
    let m = Modulus::new(4, 12);
    let mut out = ExpansionTallies {
        literal_square: Tally::default(),
        literal_non_collision: 0,
        corrected_square: Tally::default(),
        odd_power: Tally::default(),
    };
    for (e, cq, cr, five, b1) in sample((1i64..=2, coefficients(), coefficients(), prop::bool::ANY, prop::bool::ANY)) {
        let w = 3 * e;
        let a3e = parse_poly::<Rat>(&A, &format!("a3^{e}"))?;
        let a1 = parse_poly::<Rat>(&A, "a1")?;
        let two = Poly::from_int(&A, 2);
        let x = Expr::leaf(a3e.add(&a1.mul(&a_element(w - 1, &cq))).add(&two.mul(&a_element(w, &cr))));
        let (ell, c) = (if five { 5 } else { 3 }, if b1 { Component::B1 } else { Component::Gamma });
        let literal = expansion_rules_check(&x, c, ell, 3, &[3, 5], m, false)?;
        let square_bad = literal.iter().any(|s| s.starts_with("square"));
        out.literal_square.record(!square_bad);
        out.odd_power.record(!literal.iter().any(|s| s.starts_with("power")));
        if square_bad {
            let mut stair = staircase(&digits(&d_component(&x, &coface(c, ell)?, m)?, m.k));
            stair.truncate(3);
            out.literal_non_collision += !square_collision(&stair) as usize;
        }
        out.corrected_square.record(expansion_rules_check(&x, c, ell, 3, &[], m, true)?.is_empty());
    }
    Ok(out)
}

/// Ring-map laws φ(x + y) = φx + φy, φ(xy) = φxφy, φ(1) = 1 for f*, q*, η_R, c₄c₆Δ ↦ A, t* on forms and ψ^ℓ.
fn ring_map_suite() -> AlgResult<Tally> {
    let mut t = Tally::default();
    let (l3, l5) = (level(3)?, level(5)?);
    for (map, wx, cx, wy, cy) in sample((0usize..10, 1i64..=6, coefficients(), 1i64..=6, coefficients())) {
        let (x, y, phi): (Poly<Rat>, Poly<Rat>, Map) = match map {
            0..=4 | 8 | 9 => {
                let f: Map = match map {
                    0 => Box::new(|p| l3.f_star(p)),
                    1 => Box::new(|p| l3.q_star(p)),
                    2 => Box::new(|p| l5.f_star(p)),
                    3 => Box::new(|p| l5.q_star(p)),
                    4 => Box::new(right_unit),
                    8 => Box::new(|p| l3.psi(p)),
                    _ => Box::new(|p| l5.psi(p)),
                };
                (a_element(wx, &cx), a_element(wy, &cy), f)
            }
            5 => {
                let tmf = |w: i64, c: &[i64]| {
                    let basis: Vec<_> = tmf_basis(4 * w).into_iter().map(|(a, b, c)| tmf_monomial(a, b, c)).collect();
                    combination(&basis, c, Poly::zero(&qell::rings::TMF))
                };
                (tmf(wx, &cx), tmf(wy, &cy), Box::new(|p| TMF_TO_A.eval(p)))
            }
            _ => {
                let l = if map == 6 { l3 } else { l5 };
                let form = |w: i64, c: &[i64]| combination(&l.mf_basis(2 * w), c, Poly::zero(&l.mf));
                // Compared in B¹: products of normal forms need not be normal forms.
                (form(wx, &cx), form(wy, &cy), Box::new(move |p| l.mf_to_b1(&l.t_star_mf(p)?)))
            }
        };
        let (px, py) = (phi(&x)?, phi(&y)?);
        let additive = map >= 8 && wx != wy || phi(&x.add(&y))? == px.add(&py);
        let multiplicative = phi(&x.mul(&y))? == px.mul(&py);
        let one = Poly::one(&x.table().clone());
        let unital = phi(&one)? == Poly::one(&px.table().clone());
        t.record(additive && multiplicative && unital);
    }
    Ok(t)
}

fn nu2_suite() -> Tally {
    let mut t = Tally::default();
    for s in sample(1u32..=64) {
        t.record(nu2_three_power_minus_one(s) == k_function(s as u64) as u64);
    }
    for s in 1..=64u32 {
        t.record(nu2_three_power_minus_one(s) == k_function(s as u64) as u64);
    }
    t
}

fn properties() -> AlgResult<Outcome> {
    let leibniz = leibniz_suite()?;
    let exp = expansion_suite()?;
    let maps = ring_map_suite()?;
    let nu2 = nu2_suite();
    let others_clean = leibniz.failures == 0 && exp.odd_power.failures == 0 && maps.failures == 0 && nu2.failures == 0;
    let pass = others_clean && exp.literal_square.failures == 0;
    let expected = others_clean && exp.literal_non_collision == 0 && exp.corrected_square.failures == 0;
    let detail = format!(
        "Leibniz/doubling {}/{}, squaring (literal rule) {}/{}, squaring (collision-corrected) {}/{}, odd powers {}/{}, \
         ring-map laws {}/{}, nu2(3^t-1) = k(t) {}/{}; literal failures outside digit collisions: {}",
        leibniz.cases - leibniz.failures,
        leibniz.cases,
        exp.literal_square.cases - exp.literal_square.failures,
        exp.literal_square.cases,
        exp.corrected_square.cases - exp.corrected_square.failures,
        exp.corrected_square.cases,
        exp.odd_power.cases - exp.odd_power.failures,
        exp.odd_power.cases,
        maps.cases - maps.failures,
        maps.cases,
        nu2.cases - nu2.failures,
        nu2.cases,
        exp.literal_non_collision
    );
    Ok(Outcome { pass, expected, detail })
}

fn main() -> ExitCode {
    let results = [
        criterion(1, 5.0, tate),
        criterion(2, 10.0, order_five),
        criterion(3, 1.0, velu),
        criterion(4, 1.0, map_tables),
        criterion(5, 5.0, composites),
        criterion(6, 30.0, e2),
        criterion(7, 60.0, chromatic_displays),
        criterion(8, 10.0, beta),
        criterion(9, 120.0, differential_tables),
        criterion(10, 60.0, properties),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome");
        ExitCode::FAILURE
    }
}
