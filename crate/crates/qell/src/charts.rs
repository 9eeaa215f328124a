//! Degree-wise matrices of D_tot on holomorphic modular forms, 2-local
//! leading-term extraction, and the d₁ tables of torsion-free classes.

use crate::exact_algebra::{AlgResult, AlgebraError, Poly, Rat};
use crate::level_maps::{level, tmf_basis, tmf_monomial, LevelData, TMF_TO_A};
use crate::linalg::{invariant_factors_2local, val2, Matrix};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Golden d₁ table for ℓ = 3, transcribed from the published table.
pub const D1_Q3_FIXTURE: &str = include_str!("../../../fixtures/d1_q3.csv");
/// Golden d₁ table for ℓ = 5, transcribed from the published table.
pub const D1_Q5_FIXTURE: &str = include_str!("../../../fixtures/d1_q5.csv");

/// Which factor of C¹_tot = B¹ ⊕ A a basis element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BasisKind {
    /// A Γ₀(ℓ) form (B¹ part).
    Gamma0,
    /// A level-one form c₄^a c₆^b Δ^c (A part).
    Level1,
}

/// One labelled basis monomial.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub kind: BasisKind,
    /// The monomial, in the Γ₀(ℓ) table or the TMF table.
    pub mono: Poly<Rat>,
    /// Canonical label: v₁ = a₁, v₂ = a₃ for ℓ = 3; b₂, b₄, δ for ℓ = 5.
    pub label: String,
    /// Power of v₁ modulo 2 used to order leading terms.
    pub jexp: i64,
}

impl BasisElement {
    fn gamma0(ell: u32, mono: Poly<Rat>) -> Self {
        let e = exponents(&mono);
        let (names, jexp): (&[&str], i64) = if ell == 3 {
            (&["v1", "v2"], e[0] as i64)
        } else {
            (&["b2", "b4", "delta"], 2 * (e[0] + e[1]) as i64)
        };
        BasisElement { kind: BasisKind::Gamma0, label: mono_label(names, &e), mono, jexp }
    }

    fn level1((a, b, c): (u32, u32, u32)) -> Self {
        BasisElement {
            kind: BasisKind::Level1,
            mono: tmf_monomial(a, b, c),
            label: mono_label(&["c4", "c6", "Delta"], &[a as i32, b as i32, c as i32]),
            jexp: 4 * a as i64 + 6 * b as i64,
        }
    }
}

fn exponents(mono: &Poly<Rat>) -> Vec<i32> {
    mono.terms().next().map(|(m, _)| m.to_vec()).unwrap_or_default()
}

fn mono_label(names: &[&str], e: &[i32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(e)
        .filter(|(_, &k)| k != 0)
        .map(|(n, &k)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A source basis element, possibly replaced by a multiple of itself.
#[derive(Clone, Debug)]
pub struct SourceElement {
    pub element: BasisElement,
    /// The source is `multiplier` times the basis monomial.
    pub multiplier: i64,
}

impl SourceElement {
    pub fn label(&self) -> String {
        if self.multiplier == 1 {
            self.element.label.clone()
        } else {
            format!("{}*{}", self.multiplier, self.element.label)
        }
    }
}

/// The matrix of D_tot from cosimplicial level s in internal weight w.
///
/// Row i is the image of `sources[i]` in the coordinates of `targets`.
#[derive(Clone, Debug)]
pub struct DegreewiseMatrix {
    pub ell: u32,
    pub s: u32,
    pub w: i64,
    pub sources: Vec<SourceElement>,
    pub targets: Vec<BasisElement>,
    pub entries: Matrix,
}

/// A leading-term statement d₁(source) = 2^e · target + (higher terms).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DifferentialRule {
    pub ell: u32,
    pub weight: i64,
    pub source_line: u32,
    pub source_monomial: String,
    pub two_exponent: i64,
    pub target_monomial: String,
}

/// A list of rules together with the 2-parts of the elementary divisors per weight.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialTable {
    pub ell: u32,
    pub rules: Vec<DifferentialRule>,
    /// Weight ↦ sorted exponents n of the elementary divisors (orders ℤ/2ⁿ).
    pub divisors: BTreeMap<i64, Vec<i64>>,
}

impl DifferentialTable {
    pub fn empty(ell: u32) -> Self {
        DifferentialTable { ell, rules: Vec::new(), divisors: BTreeMap::new() }
    }

    fn sort(&mut self) {
        self.rules.sort_by(|a, b| (a.weight, &a.source_monomial).cmp(&(b.weight, &b.source_monomial)));
    }
}

fn gamma0_basis(l: &LevelData, w: i64) -> Vec<BasisElement> {
    l.mf_basis(w).into_iter().map(|m| BasisElement::gamma0(l.ell, m)).collect()
}

fn level1_basis(w: i64) -> Vec<BasisElement> {
    tmf_basis(w).into_iter().map(BasisElement::level1).collect()
}

fn plain(e: BasisElement) -> SourceElement {
    SourceElement { element: e, multiplier: 1 }
}

/// f* and q* of a level-one monomial, as elements of B¹.
fn level0_images(l: &LevelData, e: &BasisElement) -> AlgResult<(Poly<Rat>, Poly<Rat>)> {
    let x = TMF_TO_A.eval(&e.mono)?;
    Ok((l.f_star(&x)?, l.q_star(&x)?))
}

/// Image of a level-1 source element in Γ₀(ℓ) coordinates.
fn level1_row(l: &LevelData, e: &BasisElement, w: i64) -> AlgResult<Vec<Rat>> {
    match e.kind {
        BasisKind::Gamma0 => {
            let x = l.mf_to_b1(&e.mono)?;
            l.coordinates(&l.t_star(&x)?.add(&x), w)
        }
        BasisKind::Level1 => Ok(l.coordinates(&level0_images(l, e)?.0, w)?.into_iter().map(|c| -c).collect()),
    }
}

fn ell_power_minus_one(ell: u32, w: i64) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(ell).pow(w as u32)) - Rat::one()
}

/// The matrix of the alternating coface sum on weight-w holomorphic forms.
///
/// Level 0 sends a level-one form x to ((q* − f*)x, (ψ^ℓ − 1)x) in B¹ ⊕ A.
/// Level 1 sends (y, x) ∈ B¹ ⊕ A to t*y + y − f*x in B¹.
pub fn degree_matrix(ell: u32, s: u32, w: i64) -> AlgResult<DegreewiseMatrix> {
    let l = level(ell)?;
    let g = gamma0_basis(l, w);
    let t = level1_basis(w);
    match s {
        0 => {
            let mut entries = Vec::with_capacity(t.len());
            for (i, e) in t.iter().enumerate() {
                let (f, q) = level0_images(l, e)?;
                let mut row = l.coordinates(&q.sub(&f), w)?;
                row.extend((0..t.len()).map(|k| if k == i { ell_power_minus_one(ell, w) } else { Rat::zero() }));
                entries.push(row);
            }
            let targets = g.into_iter().chain(t.iter().cloned()).collect();
            Ok(DegreewiseMatrix { ell, s, w, sources: t.into_iter().map(plain).collect(), targets, entries })
        }
        1 => {
            let sources: Vec<SourceElement> = g.iter().cloned().chain(t).map(plain).collect();
            let entries = sources.iter().map(|e| level1_row(l, &e.element, w)).collect::<AlgResult<_>>()?;
            Ok(DegreewiseMatrix { ell, s, w, sources, targets: g, entries })
        }
        _ => Err(AlgebraError::Other(format!("source line {s} is not 0 or 1"))),
    }
}

/// Index of the lattice of level-one forms c₄^a c₆^b Δ^c that lift to π₀tmf:
/// 1 for c₄^a (a > 0) and for 1, 2 for c₆ multiples, 8/gcd(8, c) for Δ^c.
pub fn level1_multiplier(a: u32, b: u32, c: u32) -> i64 {
    if b == 1 {
        2
    } else if a > 0 || c == 0 {
        1
    } else {
        8 / num_integer::gcd(8, c as i64)
    }
}

/// Multiplier of δ^k for ℓ = 5 in the line-1 lattice: 4 for k ∈ {3, 5, 7}.
pub fn gamma0_multiplier(ell: u32, e: &BasisElement) -> i64 {
    let x = exponents(&e.mono);
    if ell == 5 && x[0] == 0 && x[1] == 0 && matches!(x[2], 3 | 5 | 7) {
        4
    } else {
        1
    }
}

fn multiplier(ell: u32, e: &BasisElement) -> i64 {
    match e.kind {
        BasisKind::Gamma0 => gamma0_multiplier(ell, e),
        BasisKind::Level1 => {
            let x = exponents(&e.mono);
            level1_multiplier(x[0] as u32, x[1] as u32, x[2] as u32)
        }
    }
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn eliminate(rows: &mut [Vec<Rat>], active: &[usize], r: usize, col: usize) {
    let pivot = rows[r][col].clone();
    let prow = rows[r].clone();
    for &o in active {
        if o != r && !rows[o][col].is_zero() {
            let f = &rows[o][col] / &pivot;
            for (x, y) in rows[o].iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
    }
}

/// The line-1 basis elements hit by line-0 classes: for each level-one source
/// one pivot, chosen greedily by (2-adic valuation, A before B¹, v₁-power).
fn line0_pivots(l: &LevelData, w: i64) -> AlgResult<Vec<(BasisKind, String)>> {
    let m0 = degree_matrix(l.ell, 0, w)?;
    let ng = m0.targets.iter().filter(|t| t.kind == BasisKind::Gamma0).count();
    let mut rows: Vec<Vec<Rat>> = m0
        .entries
        .iter()
        .zip(&m0.sources)
        .map(|(row, src)| {
            let mult = rat(multiplier(l.ell, &src.element));
            row.iter()
                .enumerate()
                .map(|(c, x)| if c < ng { x * &mult / rat(multiplier(l.ell, &m0.targets[c])) } else { x.clone() })
                .collect()
        })
        .collect();
    let key = |c: usize, x: &Rat| (val2(x), (m0.targets[c].kind == BasisKind::Gamma0) as u8, m0.targets[c].jexp);
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut used = vec![false; m0.targets.len()];
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<((i64, u8, i64), usize, usize)> = None;
        for &r in &active {
            for (c, x) in rows[r].iter().enumerate() {
                if x.is_zero() || used[c] {
                    continue;
                }
                let k = key(c, x);
                if best.as_ref().is_none_or(|b| k < b.0) {
                    best = Some((k, r, c));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        eliminate(&mut rows, &active, r, c);
        pivots.push((m0.targets[c].kind, m0.targets[c].label.clone()));
        used[c] = true;
        active.retain(|&x| x != r);
    }
    Ok(pivots)
}

/// The level-1 matrix on torsion-free line-1 classes of weight w: line-0
/// pivots removed, lattice multipliers applied to the remaining sources.
pub fn d1_matrix(ell: u32, w: i64) -> AlgResult<DegreewiseMatrix> {
    let l = level(ell)?;
    let mut m = degree_matrix(ell, 1, w)?;
    let pivots = line0_pivots(l, w)?;
    let mut sources = Vec::new();
    let mut entries = Vec::new();
    for (src, row) in m.sources.iter().zip(m.entries.iter()) {
        if pivots.iter().any(|(k, lab)| *k == src.element.kind && *lab == src.element.label) {
            continue;
        }
        let mult = multiplier(ell, &src.element);
        sources.push(SourceElement { element: src.element.clone(), multiplier: mult });
        entries.push(row.iter().map(|x| x * rat(mult)).collect());
    }
    m.sources = sources;
    m.entries = entries;
    Ok(m)
}

/// Row echelon reduction over ℤ₍₂₎ that records each pivot as a leading-term
/// rule, plus the 2-parts of the elementary divisors.
///
/// A row's leading entry is the one of least (2-adic valuation, v₁-power);
/// among rows with equal leading keys, level-one sources and then higher
/// v₁-powers go first.
pub fn smith_leading_terms(m: &DegreewiseMatrix) -> (Vec<DifferentialRule>, Vec<i64>) {
    let divisors = invariant_factors_2local(&m.entries, m.targets.len());
    let mut rows = m.entries.clone();
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut used = vec![false; m.targets.len()];
    let mut rules = Vec::new();
    loop {
        let mut best: Option<((i64, i64), (bool, i64), usize, usize)> = None;
        for &r in &active {
            let lead = rows[r]
                .iter()
                .enumerate()
                .filter(|(c, x)| !x.is_zero() && !used[*c])
                .map(|(c, x)| ((val2(x), m.targets[c].jexp), c))
                .min();
            let Some((k, c)) = lead else { continue };
            let src = &m.sources[r].element;
            let cand = (k, (src.kind != BasisKind::Level1, -src.jexp), r, c);
            if best.as_ref().is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best = Some(cand);
            }
        }
        let Some(((e, _), _, r, c)) = best else { break };
        eliminate(&mut rows, &active, r, c);
        rules.push(DifferentialRule {
            ell: m.ell,
            weight: m.w,
            source_line: m.s,
            source_monomial: m.sources[r].label(),
            two_exponent: e,
            target_monomial: m.targets[c].label.clone(),
        });
        used[c] = true;
        active.retain(|&x| x != r);
    }
    (rules, divisors)
}

/// The weights carrying holomorphic Γ₀(ℓ) forms, up to w_max.
pub fn chart_weights(ell: u32, w_max: i64) -> Vec<i64> {
    (1..=w_max).filter(|w| !(ell == 5 && w % 2 == 1)).collect()
}

/// The d₁ leading terms on torsion-free line-1 classes of weights 1..=w_max.
pub fn d1_table(ell: u32, w_max: i64) -> AlgResult<DifferentialTable> {
    let l = level(ell)?;
    let per_weight: Vec<(i64, Vec<DifferentialRule>, Vec<i64>)> = chart_weights(ell, w_max)
        .into_par_iter()
        .filter(|&w| !l.mf_basis(w).is_empty())
        .map(|w| {
            let (rules, div) = smith_leading_terms(&d1_matrix(ell, w)?);
            Ok((w, rules, div))
        })
        .collect::<AlgResult<_>>()?;
    let mut t = DifferentialTable::empty(ell);
    for (w, rules, div) in per_weight {
        t.rules.extend(rules);
        t.divisors.insert(w, div);
    }
    t.sort();
    Ok(t)
}

/// Weights w ≤ w_max where the level-0 matrix times the level-1 matrix is nonzero.
///
/// Empty means the cosimplicial identity holds at the matrix level.
pub fn composite_zero_failures(ell: u32, w_max: i64) -> AlgResult<Vec<i64>> {
    let mut bad = Vec::new();
    for w in 0..=w_max {
        let m0 = degree_matrix(ell, 0, w)?;
        let m1 = degree_matrix(ell, 1, w)?;
        let zero = m0.entries.iter().all(|row| {
            (0..m1.targets.len()).all(|c| row.iter().zip(&m1.entries).map(|(x, r)| x * &r[c]).sum::<Rat>().is_zero())
        });
        if !zero {
            bad.push(w);
        }
    }
    Ok(bad)
}

/// Parse a d₁ fixture in the CSV schema of `emit_chart`.
pub fn parse_d1_csv(src: &str) -> AlgResult<Vec<DifferentialRule>> {
    csv::Reader::from_reader(src.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| AlgebraError::Parse(format!("d1 table: {e}")))
}

/// The golden d₁ rules for ℓ.
pub fn d1_fixture(ell: u32) -> AlgResult<Vec<DifferentialRule>> {
    match ell {
        3 => parse_d1_csv(D1_Q3_FIXTURE),
        5 => parse_d1_csv(D1_Q5_FIXTURE),
        _ => Err(AlgebraError::Other(format!("no fixture for level {ell}"))),
    }
}

/// A fixture rule whose computed counterpart differs.
#[derive(Clone, Debug, Serialize)]
pub struct RuleMismatch {
    pub expected: DifferentialRule,
    pub computed: Option<DifferentialRule>,
}

/// Result of matching a fixture against a computed table.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureComparison {
    pub ell: u32,
    pub matched: usize,
    pub mismatches: Vec<RuleMismatch>,
}

/// Compare fixture rules with computed ones up to odd units.
///
/// Rules are leading terms, so targets are compared as monomials and sources
/// by monomial and 2-part of their multiplier; the 2-exponents must agree.
pub fn compare_with_fixture(table: &DifferentialTable, fixture: &[DifferentialRule]) -> FixtureComparison {
    let mut matched = 0;
    let mut mismatches = Vec::new();
    for r in fixture {
        let computed = table
            .rules
            .iter()
            .find(|c| c.weight == r.weight && c.source_line == r.source_line && c.source_monomial == r.source_monomial);
        if computed.is_some_and(|c| c.two_exponent == r.two_exponent && c.target_monomial == r.target_monomial) {
            matched += 1;
        } else {
            mismatches.push(RuleMismatch { expected: r.clone(), computed: computed.cloned() });
        }
    }
    FixtureComparison { ell: table.ell, matched, mismatches }
}

/// Output formats of `emit_chart`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartFormat {
    Csv,
    Json,
    SvgText,
}

impl std::str::FromStr for ChartFormat {
    type Err = AlgebraError;
    fn from_str(s: &str) -> AlgResult<Self> {
        match s {
            "csv" => Ok(ChartFormat::Csv),
            "json" => Ok(ChartFormat::Json),
            "svg" | "svg-text" => Ok(ChartFormat::SvgText),
            _ => Err(AlgebraError::Other(format!("unknown chart format `{s}`"))),
        }
    }
}

/// CSV header shared by the fixtures and `emit_chart`.
pub const D1_CSV_HEADER: &str = "ell,weight,source_line,source_monomial,two_exponent,target_monomial";

#[derive(Serialize)]
struct JsonRule<'a> {
    #[serde(flatten)]
    rule: &'a DifferentialRule,
    /// The stem t − s of the source class.
    stem: i64,
    provenance: &'static str,
}

/// Render tables as CSV, JSON or an SVG dot chart, deterministically.
///
/// The chart is Adams-indexed (stem t − s = 2w − s horizontally, line s
/// vertically) and shows torsion-free classes and d₁ only.
pub fn emit_chart(tables: &[DifferentialTable], format: ChartFormat) -> String {
    let mut rules: Vec<&DifferentialRule> = tables.iter().flat_map(|t| &t.rules).collect();
    rules.sort_by(|a, b| (a.ell, a.weight, &a.source_monomial).cmp(&(b.ell, b.weight, &b.source_monomial)));
    match format {
        ChartFormat::Csv => {
            let mut out = String::from(D1_CSV_HEADER);
            out.push('\n');
            for r in rules {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.ell, r.weight, r.source_line, r.source_monomial, r.two_exponent, r.target_monomial
                );
            }
            out
        }
        ChartFormat::Json => {
            let rows: Vec<JsonRule> = rules
                .into_iter()
                .map(|r| JsonRule { rule: r, stem: 2 * r.weight - r.source_line as i64, provenance: "computed" })
                .collect();
            serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
        }
        ChartFormat::SvgText => svg_chart(&rules),
    }
}

fn svg_chart(rules: &[&DifferentialRule]) -> String {
    const STEP: i64 = 12;
    const DOT: i64 = 4;
    const MARGIN: i64 = 24;
    let mut panels: BTreeMap<u32, Vec<&DifferentialRule>> = BTreeMap::new();
    for r in rules {
        panels.entry(r.ell).or_default().push(r);
    }
    let max_stem = rules.iter().map(|r| 2 * r.weight).max().unwrap_or(0);
    let width = 2 * MARGIN + STEP * (max_stem + 1);
    let mut body = String::new();
    let mut top = 0;
    for (ell, rs) in &panels {
        // Classes sharing a stem on one line are stacked upwards.
        let mut stack: BTreeMap<(i64, u32), i64> = BTreeMap::new();
        let placed: Vec<(&DifferentialRule, i64)> = rs
            .iter()
            .map(|r| {
                let k = stack.entry((2 * r.weight - r.source_line as i64, r.source_line)).or_insert(0);
                *k += 1;
                (*r, *k - 1)
            })
            .collect();
        let band = DOT * stack.values().copied().max().unwrap_or(1) + STEP;
        let base = top + MARGIN + 2 * band;
        let y = |line: i64, k: i64| base - (line - 1) * band - DOT * k;
        let x = |stem: i64| MARGIN + STEP * stem;
        let _ = writeln!(body, r#"<text x="{MARGIN}" y="{}">ell = {ell}</text>"#, top + MARGIN - 8);
        for (r, k) in placed {
            let s = r.source_line as i64;
            let stem = 2 * r.weight - s;
            let _ = writeln!(
                body,
                r#"<circle cx="{}" cy="{}" r="1.5"><title>{}</title></circle>"#,
                x(stem),
                y(s, k),
                r.source_monomial
            );
            let _ = writeln!(
                body,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"><title>2^{} {}</title></line>"#,
                x(stem),
                y(s, k),
                x(stem - 1),
                y(s + 1, k),
                r.two_exponent,
                r.target_monomial
            );
        }
        top = base + MARGIN;
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{}">"#, top.max(2 * MARGIN));
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degree_matrices() {
        let m = degree_matrix(3, 1, 2).unwrap();
        assert_eq!(m.targets.len(), 1);
        assert_eq!(m.entries[0][0], rat(-2));
        let m = degree_matrix(5, 1, 2).unwrap();
        assert_eq!(m.entries[0][0], rat(-4));
        let m = degree_matrix(3, 0, 0).unwrap();
        assert!(m.entries[0].iter().all(|x| x.is_zero()));
        assert!(degree_matrix(3, 2, 0).is_err());
    }

    #[test]
    fn identity_matrix_rules() {
        let mut m = degree_matrix(3, 1, 6).unwrap();
        let n = m.targets.len();
        m.sources.truncate(n);
        m.entries = (0..n).map(|i| (0..n).map(|j| rat((i == j) as i64)).collect()).collect();
        let (rules, div) = smith_leading_terms(&m);
        assert!(rules.iter().all(|r| r.two_exponent == 0));
        assert_eq!(div, vec![0; n]);
    }

    #[test]
    fn weight_four_for_q3() {
        let (rules, div) = smith_leading_terms(&d1_matrix(3, 4).unwrap());
        let got: Vec<_> = rules.iter().map(|r| (r.source_monomial.as_str(), r.two_exponent, r.target_monomial.as_str())).collect();
        assert_eq!(got, vec![("v1*v2", 0, "v1^4"), ("v1^4", 4, "v1*v2")]);
        assert_eq!(div, vec![0, 4]);
    }

    #[test]
    fn divisors_ignore_basis_order() {
        let m = d1_matrix(5, 12).unwrap();
        let (_, d) = smith_leading_terms(&m);
        let mut p = m.clone();
        p.entries.reverse();
        for row in &mut p.entries {
            row.reverse();
        }
        assert_eq!(invariant_factors_2local(&p.entries, p.targets.len()), d);
    }

    #[test]
    fn fixtures_parse() {
        assert_eq!(d1_fixture(3).unwrap().len(), 21);
        assert_eq!(d1_fixture(5).unwrap().len(), 34);
        assert_eq!(emit_chart(&[DifferentialTable::empty(3)], ChartFormat::Csv), format!("{D1_CSV_HEADER}\n"));
        assert!("png".parse::<ChartFormat>().is_err());
    }
}
