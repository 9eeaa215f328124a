//! The displayed D-computations of the chromatic argument, each checked as
//! an exact statement about 2-adic digits modulo the stated ideal.
//!
//! A congruence "D(x) ≡ y mod (2ᵏ, v₁ʲ)" compares every digit below the ideal.
//! A leading-term display "D(x) = 2ⁱv₁ʲc + ⋯" compares, per component and
//! per listed row i, every digit at v₁-exponent up to the largest one listed.

use super::cocycle::{verify_cocycle, ChromaticFraction};
use super::{coface, d_component, digits, reduce_in_a, Component, Expr};
use crate::exact_algebra::{parse_poly, to_dyadic, AlgResult, Modulus, Poly, Rat, F2};
use crate::rings::A;
use serde::Serialize;
use std::collections::BTreeMap;

/// The outcome of one displayed statement.
#[derive(Clone, Debug, Serialize)]
pub struct DisplayCheck {
    pub name: String,
    pub ell: u32,
    pub statement: String,
    pub holds: bool,
    pub mismatches: Vec<String>,
}

type DigitMap = BTreeMap<(u32, i32), Poly<F2>>;

fn compare(tag: &str, expected: &DigitMap, actual: &DigitMap, windows: &BTreeMap<u32, i32>) -> Vec<String> {
    let mut bad = Vec::new();
    for (&i, &jmax) in windows {
        let keys: std::collections::BTreeSet<i32> = expected
            .range((i, i32::MIN)..=(i, jmax))
            .chain(actual.range((i, i32::MIN)..=(i, jmax)))
            .map(|(k, _)| k.1)
            .collect();
        for j in keys {
            let (e, a) = (expected.get(&(i, j)), actual.get(&(i, j)));
            if e != a {
                let show = |p: Option<&Poly<F2>>| p.map_or("0".to_string(), |p| p.to_string());
                bad.push(format!("{tag} 2^{i} v1^{j}: expected {}, found {}", show(e), show(a)));
            }
        }
    }
    bad
}

fn full_windows(m: Modulus) -> BTreeMap<u32, i32> {
    (0..m.k).map(|i| (i, m.j.map_or(i32::MAX, |j| j - 1))).collect()
}

fn listed_windows(d: &DigitMap) -> BTreeMap<u32, i32> {
    let mut w = BTreeMap::new();
    for &(i, j) in d.keys() {
        let e = w.entry(i).or_insert(j);
        *e = (*e).max(j);
    }
    w
}

fn expected_digits(c: Component, ell: u32, src: &str, k: u32) -> AlgResult<DigitMap> {
    let table = coface(c, ell)?.target;
    Ok(digits(&to_dyadic(&parse_poly::<Rat>(&table, src)?)?, k))
}

fn modulus_text(m: Modulus) -> String {
    match (m.k, m.j) {
        (k, Some(j)) => format!("mod (2^{k}, v1^{j})"),
        (k, None) => format!("mod 2^{k}"),
    }
}

fn finish(name: String, ell: u32, statement: String, mismatches: Vec<String>) -> DisplayCheck {
    DisplayCheck { name, ell, statement, holds: mismatches.is_empty(), mismatches }
}

/// D(x) ≡ (γ, b) modulo m, on both the Γ and B¹ components.
pub fn congruence(name: &str, ell: u32, x: &str, m: Modulus, gamma: &str, b1: &str) -> AlgResult<DisplayCheck> {
    let e = Expr::parse(x)?;
    let mut bad = Vec::new();
    for (c, want) in [(Component::Gamma, gamma), (Component::B1, b1)] {
        let actual = digits(&d_component(&e, &coface(c, ell)?, m)?, m.k);
        bad.extend(compare(&c.to_string(), &expected_digits(c, ell, want, m.k)?, &actual, &full_windows(m)));
    }
    let statement = format!("D({x}) = [Gamma: {gamma}] + [B1: {b1}] {}", modulus_text(m));
    Ok(finish(name.into(), ell, statement, bad))
}

/// D(x) = (γ + ⋯, b + ⋯) as ordered leading terms; an empty string makes no claim.
pub fn leading(name: &str, ell: u32, x: &str, gamma: &str, b1: &str) -> AlgResult<DisplayCheck> {
    let e = Expr::parse(x)?;
    let mut want = Vec::new();
    for (c, src) in [(Component::Gamma, gamma), (Component::B1, b1)] {
        if !src.is_empty() {
            want.push((c, expected_digits(c, ell, src, 64)?));
        }
    }
    let k = want.iter().flat_map(|(_, d)| d.keys().map(|k| k.0 + 1)).max().unwrap_or(1);
    let j = want.iter().flat_map(|(_, d)| d.keys().map(|k| k.1 + 1)).max().unwrap_or(1);
    let m = Modulus::new(k, j);
    let mut bad = Vec::new();
    for (c, d) in &want {
        let actual = digits(&d_component(&e, &coface(*c, ell)?, m)?, m.k);
        bad.extend(compare(&c.to_string(), d, &actual, &listed_windows(d)));
    }
    let statement = format!("D({x}) = [Gamma: {gamma} + ...] + [B1: {b1} + ...]");
    Ok(finish(name.into(), ell, statement, bad))
}

/// x ≡ y in A modulo m.
pub fn reduction(name: &str, x: &str, m: Modulus, want: &str) -> AlgResult<DisplayCheck> {
    let actual = digits(&reduce_in_a(&Expr::parse(x)?, m)?, m.k);
    let expected = digits(&to_dyadic(&parse_poly::<Rat>(&A, want)?)?, m.k);
    let bad = compare("A", &expected, &actual, &full_windows(m));
    Ok(finish(name.into(), 3, format!("{x} = {want} {}", modulus_text(m)), bad))
}

/// x ≡ y + ⋯ in A modulo 2ᵏ, as leading terms.
pub fn reduction_leading(name: &str, x: &str, k: u32, want: &str) -> AlgResult<DisplayCheck> {
    let expected = digits(&to_dyadic(&parse_poly::<Rat>(&A, want)?)?, k);
    let windows = listed_windows(&expected);
    let j = windows.values().copied().max().unwrap_or(0) + 1;
    let actual = digits(&reduce_in_a(&Expr::parse(x)?, Modulus::new(k, j))?, k);
    let bad = compare("A", &expected, &actual, &windows);
    Ok(finish(name.into(), 3, format!("{x} = {want} + ... mod 2^{k}"), bad))
}

/// An identity of exact polynomials: d₀(x) and d₀(x) − d₁(x) per component.
fn exact(name: &str, x: &str, side_only: bool, gamma: &str, b1: &str) -> AlgResult<DisplayCheck> {
    let p = parse_poly::<Rat>(&A, x)?;
    let mut bad = Vec::new();
    for (c, want) in [(Component::Gamma, gamma), (Component::B1, b1)] {
        if want.is_empty() {
            continue;
        }
        let cf = coface(c, 3)?;
        let got = if side_only { cf.d0.eval(&p)? } else { cf.d0.eval(&p)?.sub(&cf.d1.eval(&p)?) };
        let want_p = parse_poly::<Rat>(&cf.target, want)?;
        if got != want_p {
            bad.push(format!("{c}: expected {want_p}, found {got}"));
        }
    }
    let f = if side_only { "eta_R" } else { "D" };
    Ok(finish(name.into(), 3, format!("{f}({x}) = {gamma}"), bad))
}

fn cocycle(name: &str, ell: u32, terms: &[(String, u32, i32)]) -> AlgResult<DisplayCheck> {
    let fr: Vec<ChromaticFraction> =
        terms.iter().map(|(x, k, j)| ChromaticFraction::new(x, *k, *j)).collect::<AlgResult<_>>()?;
    let ok = verify_cocycle(&fr, ell)?;
    let text: Vec<String> = fr.iter().map(|f| f.to_string()).collect();
    let bad = if ok { Vec::new() } else { vec!["D_tot is nonzero".to_string()] };
    Ok(finish(name.into(), ell, format!("D_tot({}) = 0", text.join(" + ")), bad))
}

/// x₀ ≡ a₃, x₁ ≡ a₃², x₂ ≡ a₃⁴ modulo (2, v₁).
pub fn x_generator_checks() -> AlgResult<Vec<DisplayCheck>> {
    let m = Modulus::new(1, 1);
    Ok(vec![
        reduction("x0 mod (2, v1)", "x0", m, "a3")?,
        reduction("x1 mod (2, v1)", "x1", m, "a3^2")?,
        reduction("x2 mod (2, v1)", "x2", m, "a3^4")?,
    ])
}

/// The generators x₀, x₁, x₂, each verified against its residue mod (2, v₁).
pub fn x_generators() -> AlgResult<[Poly<Rat>; 3]> {
    for c in x_generator_checks()? {
        if !c.holds {
            return Err(crate::exact_algebra::AlgebraError::Other(format!("{}: {:?}", c.name, c.mismatches)));
        }
    }
    Ok([super::X0.clone(), super::X1.clone(), super::X2.clone()])
}

/// Every displayed computation from the v₁-BSS for Q(3) through the
/// certification of a₃^{4m}/8v₁², the Q(5) v₁-BSS congruences, and the n- and
/// k-parametrized families D(x₂^{m2ⁿ⁻²}) and D(a₁^{2^{k−2}}).
///
/// `ms` are odd multiplicities; n runs over 2..=n_max and k over 3..=k_max.
pub fn displayed_congruences(ms: &[u32], n_max: u32, k_max: u32) -> AlgResult<Vec<DisplayCheck>> {
    let mut out = Vec::new();
    let m2 = |j| Modulus::new(1, j);

    out.push(congruence("D(x0) mod (2, v1^2)", 3, "x0", m2(2), "a1*s^2", "0")?);
    out.push(congruence("D(x1) mod (2, v1^3)", 3, "x1", m2(3), "a1^2*a3*s", "0")?);
    out.push(congruence("D(x2) mod (2, v1^7)", 3, "x2", m2(7), "0", "a1^6*a3^2")?);
    for n in 2..=n_max {
        let (h, e) = (3 << (n - 1), 1 << (n - 1));
        out.push(congruence(
            &format!("D(x2^(2^(n-2))) mod 2, n={n}"),
            3,
            &format!("x2^{}", 1 << (n - 2)),
            m2(h + 1),
            "0",
            &format!("a1^{h}*a3^{e}"),
        )?);
    }
    for &m in ms {
        out.push(congruence(
            &format!("D(x0^m) mod (2, v1^2), m={m}"),
            3,
            &format!("x0^{m}"),
            m2(2),
            &format!("a1*s^2*a3^{}", m - 1),
            "0",
        )?);
        out.push(congruence(
            &format!("D(x1^m) mod (2, v1^3), m={m}"),
            3,
            &format!("x1^{m}"),
            m2(3),
            &format!("a1^2*a3^{}*s", 2 * m - 1),
            "0",
        )?);
        for n in 2..=n_max {
            let h = 3 << (n - 1);
            out.push(congruence(
                &format!("D(x2^(m 2^(n-2))) mod 2, m={m} n={n}"),
                3,
                &format!("x2^{}", m << (n - 2)),
                m2(h + 1),
                "0",
                &format!("a1^{h}*a3^{}", (m << n) - (1 << (n - 1))),
            )?);
        }
    }

    out.push(leading("D(x0) leading terms", 3, "x0", "a1*s^2 + 2*(t + r*s + s^3 + a2*s)", "2*a3")?);
    for &m in ms {
        let e = m - 1;
        out.push(leading(
            &format!("D(x0^m) leading terms, m={m}"),
            3,
            &format!("x0^{m}"),
            &format!("a1*a3^{e}*s^2 + 2*a3^{e}*(t + r*s + s^3 + a2*s)"),
            &format!("2*a3^{m}"),
        )?);
    }
    out.push(exact("eta_R(a1)", "a1", true, "a1 + 2*s", "")?);
    for &m in ms {
        let e = m - 1;
        out.push(leading(
            &format!("D(a1 x0^m) leading terms, m={m}"),
            3,
            &format!("a1*x0^{m}"),
            &format!("a1^2*a3^{e}*s^2 + 2*a3^{m}*s + 2*a1*a3^{e}*(t + r*s)"),
            &format!("2*a1*a3^{m}"),
        )?);
    }
    out.push(leading("D(x1) leading terms", 3, "x1", "a1^2*a3*s + a1^3*(t + r*s) + 2*a1*a3*s^2", "2*a1^3*a3")?);
    for &m in ms {
        out.push(leading(
            &format!("D(x1^m) leading terms, m={m}"),
            3,
            &format!("x1^{m}"),
            &format!("a1^2*a3^{}*s + a1^3*a3^{}*(t + r*s) + 2*a1*a3^{}*s^2", 2 * m - 1, 2 * m - 2, 2 * m - 1),
            &format!("2*a1^3*a3^{}", 2 * m - 1),
        )?);
    }
    for &m in ms.iter().filter(|&&m| m % 4 == 1) {
        out.push(leading(
            &format!("D(a1^3 x0^m + 2 x1^((m+1)/2)) leading terms, m={m}"),
            3,
            &format!("a1^3*x0^{m} + 2*x1^{}", m.div_ceil(2)),
            &format!("a1^4*a3^{}*s^2", m - 1),
            &format!("2*a1^3*a3^{m}"),
        )?);
    }
    out.push(leading("D(x2) leading terms", 3, "x2", "", "a1^6*a3^2 + 2*a1^3*a3^3")?);
    for &m in ms {
        out.push(leading(
            &format!("D(x2^m) leading terms, m={m}"),
            3,
            &format!("x2^{m}"),
            "",
            &format!("a1^6*a3^{} + 2*a1^3*a3^{}", 4 * m - 2, 4 * m - 1),
        )?);
    }
    out.push(exact("D(a1^2)", "a1^2", false, "4*s^2 + 4*s*a1", "0")?);
    out.push(reduction("x2 mod (4, v1^4)", "x2", Modulus::new(2, 4), "a3^4 + 2*a1^2*a3^2*a4 + a3^3*a1^3")?);
    for &m in ms {
        let (a, b) = (4 * m, 4 * m - 1);
        out.push(leading(
            &format!("D(a1^2 x2^m) leading terms, m={m}"),
            3,
            &format!("a1^2*x2^{m}"),
            &format!("4*a3^{a}*s^2 + 4*a1*a3^{a}*s + 4*a1^3*a3^{b}*s^2"),
            &format!("a1^8*a3^{} + 2*a1^5*a3^{b}", 4 * m - 2),
        )?);
        out.push(congruence(
            &format!("D(a1^2 x2^m) mod (8, v1^4), m={m}"),
            3,
            &format!("a1^2*x2^{m}"),
            Modulus::new(3, 4),
            &format!("4*a3^{a}*s^2 + 4*a1*a3^{a}*s + 4*a1^3*a3^{b}*s^2"),
            "0",
        )?);
    }
    out.push(congruence("D(x0) mod 2", 3, "x0", Modulus::two_power(1), "a1*s^2 + s*a1^2", "0")?);
    out.push(congruence("D(x0^4) mod (2, v1^5)", 3, "x0^4", m2(5), "a1^4*s^8", "0")?);
    for &m in ms {
        out.push(reduction(
            &format!("x0^(4m) mod (2, v1^4), m={m}"),
            &format!("x0^{}", 4 * m),
            Modulus::new(1, 4),
            &format!("a3^{}", 4 * m),
        )?);
        out.push(congruence(
            &format!("D(x0^(4m+1)) mod (2, v1^5), m={m}"),
            3,
            &format!("x0^{}", 4 * m + 1),
            m2(5),
            &format!("a1*a3^{0}*s^2 + a1^2*a3^{0}*s + a1^4*a3^{1}*s^8", 4 * m, 4 * m - 3),
            "0",
        )?);
    }
    out.push(congruence("D((a4 + a2^2)^2) mod (2, v1)", 3, "(a4 + a2^2)^2", m2(1), "s^8 + a3^2*s^2", "0")?);
    for &m in ms {
        out.push(cocycle(
            &format!("a3^(4m)/8v1^2 cocycle, m={m}"),
            3,
            &[
                (format!("x2^{m}"), 3, 2),
                (format!("x0^{}", 4 * m + 1), 1, 5),
                (format!("a3^{}*(a4 + a2^2)^2", 4 * m - 3), 1, 1),
            ],
        )?);
    }

    out.push(congruence("Q(5): D(x0) mod (2, v1^2)", 5, "x0", m2(2), "a1*s^2", "0")?);
    out.push(congruence("Q(5): D(x1) mod (2, v1^3)", 5, "x1", m2(3), "a1^2*a3*s", "0")?);
    out.push(congruence("Q(5): D(x2) mod (2, v1^9)", 5, "x2", m2(9), "0", "a1^8*u^4")?);
    for n in 2..=n_max {
        let h: u32 = 1 << (n + 1);
        out.push(congruence(
            &format!("Q(5): D(x2^(2^(n-2))) mod 2, n={n}"),
            5,
            &format!("x2^{}", 1 << (n - 2)),
            m2(h as i32 + 1),
            "0",
            &format!("a1^{h}*u^{}", 1 << n),
        )?);
    }
    for &m in ms {
        out.push(congruence(
            &format!("Q(5): D(x0^m) mod (2, v1^2), m={m}"),
            5,
            &format!("x0^{m}"),
            m2(2),
            &format!("a1*s^2*a3^{}", m - 1),
            "0",
        )?);
        out.push(congruence(
            &format!("Q(5): D(x1^m) mod (2, v1^3), m={m}"),
            5,
            &format!("x1^{m}"),
            m2(3),
            &format!("a1^2*a3^{}*s", 2 * m - 1),
            "0",
        )?);
        for n in 2..=n_max {
            let h: u32 = 1 << (n + 1);
            out.push(congruence(
                &format!("Q(5): D(x2^(m 2^(n-2))) mod 2, m={m} n={n}"),
                5,
                &format!("x2^{}", m << (n - 2)),
                m2(h as i32 + 1),
                "0",
                &format!("a1^{h}*u^{}", 3 * (m << n) - h),
            )?);
        }
    }

    for &m in ms {
        for n in 2..=n_max {
            let terms: Vec<String> = (0..n)
                .map(|r| format!("{}*a1^{}*a3^{}", 1 << r, 3 << (n - 1 - r), (m << n) - (1 << (n - 1 - r))))
                .collect();
            out.push(leading(
                &format!("D(x2^(m 2^(n-2))) leading terms, m={m} n={n}"),
                3,
                &format!("x2^{}", m << (n - 2)),
                "",
                &terms.join(" + "),
            )?);
        }
    }
    for k in 3..=k_max {
        let (c, e) = (1u64 << (k - 1), 1u32 << (k - 2));
        out.push(congruence(
            &format!("D(a1^(2^(k-2))) mod 2^k, k={k}"),
            3,
            &format!("a1^{e}"),
            Modulus::two_power(k),
            &format!("{c}*a1^{}*s^2 + {c}*a1^{}*s", e - 2, e - 1),
            "0",
        )?);
    }
    Ok(out)
}

/// The three later displays whose printed exponents are only right for
/// m = 1 (and, in the a₁-power case, k = 3). Returns (printed, corrected) pairs.
pub fn later_displays(ms: &[u32], n_max: u32, k_max: u32) -> AlgResult<Vec<(DisplayCheck, DisplayCheck)>> {
    let mut out = Vec::new();
    for &m in ms {
        for n in 2..=n_max {
            let (q, top) = (1u32 << (n - 2), m << n);
            let x = format!("x2^{}", m * q);
            out.push((
                reduction_leading(
                    &format!("x2^(m 2^(n-2)) mod 2 as printed, m={m} n={n}"),
                    &x,
                    1,
                    &format!("a3^{top} + a1^{}*a3^{}", 3 * q, (m + 2) * q),
                )?,
                reduction_leading(
                    &format!("x2^(m 2^(n-2)) mod 2 corrected, m={m} n={n}"),
                    &x,
                    1,
                    &format!("a3^{top} + a1^{}*a3^{}", 3 * q, (4 * m - 1) * q),
                )?,
            ));
            for k in 3..=k_max.min(n) {
                let (c, e) = (1u64 << (k - 1), 1u32 << (k - 2));
                let b1: Vec<String> = (0..k)
                    .map(|r| format!("{}*a1^{}*a3^{}", 1u64 << r, (3 << (n - 1 - r)) + e, top - (1 << (n - 1 - r))))
                    .collect();
                let head = format!("{c}*a1^{}*a3^{top}*s^2 + {c}*a1^{}*a3^{top}*s", e - 2, e - 1);
                let x = format!("a1^{e}*x2^{}", m * q);
                out.push((
                    leading(
                        &format!("D(a1^(2^(k-2)) x2^(m 2^(n-2))) as printed, m={m} n={n} k={k}"),
                        3,
                        &x,
                        &format!("{head} + {c}*a1^{}*a3^{}*s^2", 3 * q, 2 * q + m * q),
                        &b1.join(" + "),
                    )?,
                    leading(
                        &format!("D(a1^(2^(k-2)) x2^(m 2^(n-2))) corrected, m={m} n={n} k={k}"),
                        3,
                        &x,
                        &format!("{head} + {c}*a1^{}*a3^{}*s^2", 3 * q + e - 2, (4 * m - 1) * q),
                        &b1.join(" + "),
                    )?,
                ));
            }
        }
        for n in 1..=n_max {
            let top = m << n;
            let x = format!("x0^{}", top + 1);
            let base = format!("a1*a3^{top}*s^2 + a1^2*a3^{top}*s");
            out.push((
                leading(
                    &format!("D(x0^(m 2^n + 1)) mod 2 as printed, m={m} n={n}"),
                    3,
                    &x,
                    &format!("{base} + a1^{top}*a3*s^{}", 2 * top),
                    "",
                )?,
                leading(
                    &format!("D(x0^(m 2^n + 1)) mod 2 corrected, m={m} n={n}"),
                    3,
                    &x,
                    &format!("{base} + a1^{}*a3^{}*s^{}", 1 << n, ((m - 1) << n) + 1, 2 << n),
                    "",
                )?,
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_reduce_to_a3_powers() {
        assert_eq!(x_generators().unwrap()[0], super::super::X0.clone());
    }

    #[test]
    fn all_displays_hold() {
        let all = displayed_congruences(&[1, 3], 4, 5).unwrap();
        let bad: Vec<_> = all.iter().filter(|c| !c.holds).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn later_displays_errata() {
        for (printed, corrected) in later_displays(&[1, 3], 4, 5).unwrap() {
            assert!(corrected.holds, "{corrected:#?}");
            let m3 = printed.name.contains("m=3");
            let k4 = printed.name.contains("k=4") || printed.name.contains("k=5");
            // The printed form is wrong exactly when m ≠ 1, or the a₁ factor is missing (k ≥ 4).
            assert_eq!(printed.holds, !(m3 || k4), "{printed:#?}");
        }
    }

    #[test]
    fn a_wrong_claim_is_rejected() {
        let c = congruence("wrong", 3, "x0", Modulus::new(1, 2), "a1*s", "0").unwrap();
        assert!(!c.holds);
    }
}
