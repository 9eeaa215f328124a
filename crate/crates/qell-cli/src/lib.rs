//! Argument parsing and command execution for the `qell` binary.
//!
//! Every command builds a [`Report`] that renders deterministically as text,
//! CSV or JSON; `ok` is false when a verification failed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qell::charts::{self, ChartFormat, DifferentialTable};
use qell::chromatic::cocycle::ElementInput;
use qell::chromatic::{beta_table, bss_differentials, certified_cocycles, verify_cocycle_report, BetaFamily};
use qell::exact_algebra::{parse_rat, Poly};
use qell::level_maps::{check_map_table, composite_identity_check};
use qell::rings::QQ;
use qell::weierstrass::{
    default_tate_parameters, order_five_certificate, tate_normal_form, tate_parameters, tate_round_trip, CurvePoint,
    WeierstrassCurve,
};
use qell::{group_cohomology, velu, AlgResult, AlgebraError, Rat};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::path::PathBuf;

/// Seed used by randomized checks when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Debug, Parser)]
#[command(name = "qell", version, about = "Exact computations for the Q(3) and Q(5) spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `svg` is accepted by `chart` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct Levels {
    /// Level ℓ; repeatable, both levels by default.
    #[arg(long = "ell", value_parser = clap::value_parser!(u32).range(3..=5))]
    pub ell: Vec<u32>,
}

impl Levels {
    fn get(&self) -> Result<Vec<u32>, String> {
        if self.ell.is_empty() {
            return Ok(vec![3, 5]);
        }
        if let Some(bad) = self.ell.iter().find(|&&l| l != 3 && l != 5) {
            return Err(format!("unsupported level {bad}"));
        }
        Ok(self.ell.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tate normal form: round trip and order-5 certificate, or one curve with --curve/--point.
    TateNormalForm {
        /// Parameter b₀ of T(b₀); repeatable.
        #[arg(long = "b", allow_hyphen_values = true)]
        b: Vec<String>,
        /// Random coordinate changes per b₀.
        #[arg(long, default_value_t = 100)]
        perturbations: usize,
        /// Coefficients a1,a2,a3,a4,a6 of a curve over ℚ.
        #[arg(long, allow_hyphen_values = true, requires = "point")]
        curve: Option<String>,
        /// The point x,y to move to (0, 0).
        #[arg(long, allow_hyphen_values = true, requires = "curve")]
        point: Option<String>,
    },
    /// Vélu quotients of T¹ and of the ℓ = 3 curve against the displayed formulas.
    Velu,
    /// Generator images of f*, q*, t* against the golden map tables.
    Maps(Levels),
    /// t*f* = q*, t*q* = f*ψ^ℓ and t*t* = ψ^ℓ.
    Identities(Levels),
    /// E₂ chart of the 𝔽₅ˣ cohomology and the check of its relations.
    E2 {
        #[arg(long, default_value_t = 24)]
        max_weight: i64,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
    },
    /// Divided β-family index sets.
    BetaTable {
        /// sphere, q3 or q5; repeatable.
        #[arg(long = "family", required = true)]
        family: Vec<String>,
        /// Bound on the a₃-exponent m2ⁿ.
        #[arg(long, default_value_t = 64)]
        max_i: u64,
        #[arg(long, default_value_t = 64)]
        max_j: u64,
        #[arg(long, default_value_t = 5)]
        max_k: u32,
        /// Compare exactly two families.
        #[arg(long)]
        diff: bool,
    },
    /// D_tot of a chromatic element given as JSON, or the certified Q(3) cocycles.
    VerifyCocycle {
        /// Inline JSON: {"ell":3,"terms":[{"numerator":"x2","k":3,"j":2}, …]}.
        #[arg(long, conflicts_with_all = ["input", "certified"])]
        element: Option<String>,
        /// File holding the JSON element.
        #[arg(long, conflicts_with = "certified")]
        input: Option<PathBuf>,
        /// Verify the certified cocycles instead.
        #[arg(long)]
        certified: bool,
        #[arg(long = "m", default_values_t = [1, 3])]
        m: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
        #[arg(long, default_value_t = 5)]
        max_k: u32,
    },
    /// v₁-BSS differentials on a₃^{m2ⁿ}/v₁ʲ.
    Bss {
        #[command(flatten)]
        levels: Levels,
        #[arg(long = "m", default_values_t = [1, 3])]
        m: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
    },
    /// d₁ leading terms; --check compares with the golden tables.
    D1Table {
        #[command(flatten)]
        levels: Levels,
        #[arg(long, default_value_t = 24)]
        max_weight: i64,
        /// Compare with the fixtures and check the level-0∘level-1 composite.
        #[arg(long)]
        check: bool,
    },
    /// Chart of the d₁ tables (text and svg give svg-text).
    Chart {
        #[command(flatten)]
        levels: Levels,
        #[arg(long, default_value_t = 24)]
        max_weight: i64,
    },
}

/// A rendered-agnostic command result.
#[derive(Debug, Default)]
pub struct Report {
    pub ok: bool,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: Vec<String>,
    pub json: Value,
    /// Preformatted output that bypasses the other fields.
    pub raw: Option<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        match format {
            Format::Text | Format::Svg => self.text.iter().map(|l| format!("{l}\n")).collect(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "FAIL"
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn rationals(src: &str, n: usize) -> AlgResult<Vec<Rat>> {
    let v: Vec<Rat> = src.split(',').map(|s| parse_rat(s.trim())).collect::<AlgResult<_>>()?;
    if v.len() != n {
        return Err(AlgebraError::Parse(format!("expected {n} comma-separated rationals, got `{src}`")));
    }
    Ok(v)
}

fn tate_command(b: &[String], perturbations: usize, curve: Option<&str>, point: Option<&str>, seed: u64) -> AlgResult<Report> {
    if let (Some(c), Some(p)) = (curve, point) {
        let q = |x: &Rat| Poly::constant(&QQ, x.clone());
        let a = rationals(c, 5)?;
        let xy = rationals(p, 2)?;
        let curve = WeierstrassCurve::new([q(&a[0]), q(&a[1]), q(&a[2]), q(&a[3]), q(&a[4])]);
        let pt = CurvePoint::Affine(q(&xy[0]), q(&xy[1]));
        if !curve.contains(&pt) {
            return Err(AlgebraError::Other(format!("({p}) is not on the curve [{c}]")));
        }
        let r = tate_normal_form(&curve, &pt)?;
        let (bb, cc) = tate_parameters(&r.curve);
        let names = ["a1", "a2", "a3", "a4", "a6"];
        let coeffs = r.curve.coefficients().map(|x| x.to_string());
        let t = &r.transformation;
        let phi = [&t.r, &t.s, &t.t, &t.lambda].map(|x| x.to_string());
        let mut rows: Vec<Vec<String>> =
            names.iter().zip(&coeffs).map(|(n, v)| vec![(*n).to_string(), v.clone()]).collect();
        for (n, v) in ["r", "s", "t", "lambda"].iter().zip(&phi) {
            rows.push(vec![(*n).to_string(), v.clone()]);
        }
        rows.push(vec!["b".into(), bb.to_string()]);
        rows.push(vec!["c".into(), cc.to_string()]);
        let text = vec![
            format!("normal form = [{}]", coeffs.join(", ")),
            format!("b = {bb}, c = {cc}"),
            format!("(r, s, t, lambda) = ({})", phi.join(", ")),
        ];
        let json = json!({"curve": coeffs, "transformation": phi, "b": bb.to_string(), "c": cc.to_string(),
            "homogeneous_rescaling": r.nonhomogeneous});
        return Ok(Report { ok: true, header: vec!["quantity", "value"], rows, text, json, raw: None });
    }
    let bs = if b.is_empty() {
        default_tate_parameters()
    } else {
        b.iter().map(|s| parse_rat(s)).collect::<AlgResult<_>>()?
    };
    let rt = tate_round_trip(seed, &bs, perturbations)?;
    let cert = order_five_certificate()?;
    let ok = rt.passed() && cert.passed();
    let mut rows = vec![vec![
        "round_trip".into(),
        format!("{}/{}", rt.trials - rt.failures.len(), rt.b_values.len() * perturbations),
        rt.passed().to_string(),
    ]];
    for (k, m) in cert.multiples.iter().enumerate() {
        rows.push(vec![format!("{}P", k + 1), m.clone(), "true".into()]);
    }
    rows.push(vec!["psi5(0,0)".into(), cert.psi5_at_origin.clone(), (cert.psi5_at_origin == "0").to_string()]);
    rows.push(vec!["psi2..psi4(0,0) nonzero".into(), cert.lower_psi_nonzero.to_string(), cert.lower_psi_nonzero.to_string()]);
    let mut text = vec![format!(
        "round trip (seed {}): {} parameters x {} perturbations, {} recovered: {}",
        seed,
        rt.b_values.len(),
        perturbations,
        rt.trials - rt.failures.len(),
        verdict(rt.passed())
    )];
    text.extend(rt.failures.iter().map(|f| format!("  failed: {f}")));
    for (k, m) in cert.multiples.iter().enumerate() {
        text.push(format!("{}P = {m}", k + 1));
    }
    text.push(format!("psi5(0,0) = {}; psi2, psi3, psi4 nonzero at (0,0): {}", cert.psi5_at_origin, cert.lower_psi_nonzero));
    text.push(format!("order 5 certificate: {}", verdict(cert.passed())));
    let json = json!({"round_trip": to_json(&rt), "order_five": to_json(&cert), "ok": ok});
    Ok(Report { ok, header: vec!["check", "value", "holds"], rows, text, json, raw: None })
}

fn velu_command() -> AlgResult<Report> {
    let r = velu::velu_report()?;
    let names = ["a1", "a2", "a3", "a4", "a6"];
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for (label, coeffs, ok) in [("T1/<(0,0)>", &r.t1_quotient, r.t1_matches), ("ell=3 normalized", &r.level3_quotient, r.level3_matches)] {
        text.push(format!("{label}: {}", verdict(ok)));
        for (n, c) in names.iter().zip(coeffs.iter()) {
            rows.push(vec![label.to_string(), (*n).to_string(), c.clone(), ok.to_string()]);
            text.push(format!("  {n} = {c}"));
        }
    }
    Ok(Report { ok: r.passed(), header: vec!["quotient", "coefficient", "value", "matches"], rows, text, json: to_json(&r), raw: None })
}

fn maps_command(levels: &[u32]) -> AlgResult<Report> {
    let mut rep = Report { ok: true, header: vec!["ell", "map", "source", "image", "expected", "matches"], ..Default::default() };
    let mut all = Vec::new();
    for &ell in levels {
        for c in check_map_table(ell)? {
            rep.ok &= c.matches;
            let e = &c.expected;
            rep.text.push(format!("ell={} {}*({}) = {}  [{}]", ell, e.map, e.source, c.computed, verdict(c.matches)));
            if !c.matches {
                rep.text.push(format!("  expected {}", e.image));
            }
            rep.rows.push(vec![ell.to_string(), e.map.clone(), e.source.clone(), c.computed.clone(), e.image.clone(), c.matches.to_string()]);
            all.push(c);
        }
    }
    rep.json = to_json(&all);
    Ok(rep)
}

fn identities_command(levels: &[u32]) -> AlgResult<Report> {
    let mut rep = Report { ok: true, header: vec!["ell", "identity", "input", "lhs", "rhs", "holds"], ..Default::default() };
    let mut all = Vec::new();
    for &ell in levels {
        let lines = composite_identity_check(ell)?;
        let mut names: Vec<String> = Vec::new();
        for l in &lines {
            let n = l.identity.replace(' ', "");
            if !names.contains(&n) {
                names.push(n);
            }
        }
        let summary: Vec<String> = names
            .iter()
            .map(|n| {
                let ok = lines.iter().filter(|l| l.identity.replace(' ', "") == *n).all(|l| l.holds);
                format!("{n}: {}", verdict(ok))
            })
            .collect();
        rep.text.push(format!("ell={ell}: {}", summary.join("; ")));
        for l in &lines {
            rep.ok &= l.holds;
            if !l.holds {
                rep.text.push(format!("  {} fails on {}: {} vs {}", l.identity, l.input, l.lhs, l.rhs));
            }
            rep.rows.push(vec![ell.to_string(), l.identity.clone(), l.input.clone(), l.lhs.clone(), l.rhs.clone(), l.holds.to_string()]);
        }
        all.push(json!({"ell": ell, "lines": to_json(&lines)}));
    }
    rep.json = Value::Array(all);
    Ok(rep)
}

fn e2_command(max_weight: i64, max_s: usize) -> AlgResult<Report> {
    let chart = group_cohomology::e2_chart(max_weight, max_s)?;
    let check = group_cohomology::verify_e2_relations(max_weight)?;
    let mut text: Vec<String> = chart
        .iter()
        .map(|e| format!("(t-s, s) = ({}, {}): {} <{}>", e.stem, e.s, e.group, e.generators.join(", ")))
        .collect();
    for r in &check.relations {
        text.push(format!("{}: {}", r.relation, verdict(r.holds())));
    }
    text.push(format!(
        "b4*xi witness: table {}, coboundary {}",
        verdict(check.witness.table_matches),
        verdict(check.witness.coboundary_matches)
    ));
    text.push(format!("ranks: {} bidegrees, {} mismatches", check.ranks.bidegrees, check.ranks.mismatches.len()));
    let rows = chart
        .iter()
        .map(|e| vec![e.stem.to_string(), e.s.to_string(), e.t.to_string(), e.group.clone(), e.generators.join(" ")])
        .collect();
    Ok(Report {
        ok: check.passed(),
        header: vec!["stem", "s", "t", "group", "generators"],
        rows,
        text,
        json: json!({"chart": to_json(&chart), "verification": to_json(&check)}),
        raw: None,
    })
}

fn beta_command(families: &[String], max_i: u64, max_j: u64, max_k: u32, diff: bool) -> AlgResult<Report> {
    let fams: Vec<BetaFamily> = families.iter().map(|f| f.parse()).collect::<AlgResult<_>>()?;
    let tables = fams.iter().map(|&f| beta_table(f, max_i, max_j, max_k)).collect::<AlgResult<Vec<_>>>()?;
    if diff {
        let [a, b] = tables.as_slice() else {
            return Err(AlgebraError::Other("--diff needs exactly two --family values".into()));
        };
        let ka: BTreeSet<_> = a.iter().map(|x| x.key()).collect();
        let kb: BTreeSet<_> = b.iter().map(|x| x.key()).collect();
        let mut rep = Report { ok: true, header: vec!["only_in", "name", "m", "n", "k", "j"], ..Default::default() };
        let mut only = Vec::new();
        for (fam, t, other) in [(fams[0], a, &kb), (fams[1], b, &ka)] {
            for x in t.iter().filter(|x| !other.contains(&x.key())) {
                rep.rows.push(vec![fam.to_string(), x.to_string(), x.m.to_string(), x.n.to_string(), x.k.to_string(), x.j.to_string()]);
                rep.text.push(format!("only in {fam}: {x}"));
                only.push(json!({"only_in": fam.to_string(), "name": x.to_string()}));
            }
        }
        let identical = rep.rows.is_empty();
        rep.text.insert(0, format!("{} vs {}: {}", fams[0], fams[1], if identical { "identical" } else { "different" }));
        rep.json = json!({"families": [fams[0].to_string(), fams[1].to_string()], "identical": identical, "differences": only});
        return Ok(rep);
    }
    let mut rep = Report { ok: true, header: vec!["family", "name", "m", "n", "k", "j"], ..Default::default() };
    let mut all = Vec::new();
    for (f, t) in fams.iter().zip(&tables) {
        rep.text.push(format!("{f}: {} indices", t.len()));
        for x in t {
            rep.text.push(format!("  {x}"));
            rep.rows.push(vec![f.to_string(), x.to_string(), x.m.to_string(), x.n.to_string(), x.k.to_string(), x.j.to_string()]);
            all.push(json!({"family": f.to_string(), "name": x.to_string(), "m": x.m, "n": x.n, "k": x.k, "j": x.j}));
        }
    }
    rep.json = Value::Array(all);
    Ok(rep)
}

fn cocycle_command(element: Option<&str>, input: Option<&PathBuf>, certified: bool, ms: &[u32], max_n: u32, max_k: u32) -> AlgResult<Report> {
    if certified {
        let all = certified_cocycles(ms, max_n, max_k)?;
        let mut rep = Report { ok: true, header: vec!["case", "m", "n", "k", "j", "name", "terms", "verified"], ..Default::default() };
        for c in &all {
            rep.ok &= c.verified;
            rep.text.push(format!("{} {}: {} [{}]", c.case, c.name, c.terms.join(" + "), verdict(c.verified)));
            rep.rows.push(vec![
                c.case.to_string(),
                c.m.to_string(),
                c.n.to_string(),
                c.k.to_string(),
                c.j.to_string(),
                c.name.clone(),
                c.terms.join(" + "),
                c.verified.to_string(),
            ]);
        }
        rep.json = to_json(&all);
        return Ok(rep);
    }
    let src = match (element, input) {
        (Some(e), _) => e.to_string(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| AlgebraError::Other(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(AlgebraError::Other("give --element, --input or --certified".into())),
    };
    let input: ElementInput = serde_json::from_str(&src).map_err(|e| AlgebraError::Parse(format!("element JSON: {e}")))?;
    let r = verify_cocycle_report(&input.fractions()?, input.ell)?;
    let mut text = vec![
        format!("element: {}", r.element),
        format!("over 2^{} v1^{} (weight {})", r.k, r.j, r.weight),
        format!("Gamma: {}", r.gamma),
        format!("B1: {}", r.b1),
        format!("psi: {}", r.psi),
    ];
    text.extend(r.digits.iter().map(|d| format!("  {d}")));
    text.push(format!("cocycle: {}", verdict(r.is_cocycle)));
    let rows = vec![vec![
        r.element.clone(),
        r.k.to_string(),
        r.j.to_string(),
        r.gamma.clone(),
        r.b1.clone(),
        r.psi.clone(),
        r.is_cocycle.to_string(),
    ]];
    Ok(Report {
        ok: r.is_cocycle,
        header: vec!["element", "k", "j", "gamma", "b1", "psi", "is_cocycle"],
        rows,
        text,
        json: to_json(&r),
        raw: None,
    })
}

fn bss_command(levels: &[u32], ms: &[u32], max_n: u32) -> AlgResult<Report> {
    let mut rep = Report { ok: true, header: vec!["ell", "m", "n", "length", "component", "source", "target", "head"], ..Default::default() };
    let mut all = Vec::new();
    for &ell in levels {
        for r in bss_differentials(ell, ms, max_n)? {
            rep.text.push(format!("ell={ell}: {r}"));
            rep.rows.push(vec![
                ell.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.length.to_string(),
                r.component.to_string(),
                r.source.clone(),
                r.target.clone(),
                r.head.clone(),
            ]);
            all.push(r);
        }
    }
    rep.json = to_json(&all);
    Ok(rep)
}

fn rule_row(r: &charts::DifferentialRule) -> Vec<String> {
    vec![
        r.ell.to_string(),
        r.weight.to_string(),
        r.source_line.to_string(),
        r.source_monomial.clone(),
        r.two_exponent.to_string(),
        r.target_monomial.clone(),
    ]
}

fn d1_command(levels: &[u32], max_weight: i64, check: bool) -> AlgResult<Report> {
    let mut rep = Report {
        ok: true,
        header: vec!["ell", "weight", "source_line", "source_monomial", "two_exponent", "target_monomial"],
        ..Default::default()
    };
    let mut all = Vec::new();
    for &ell in levels {
        let t = charts::d1_table(ell, max_weight)?;
        for r in &t.rules {
            rep.rows.push(rule_row(r));
            rep.text.push(format!("ell={} w={}: {} -> 2^{} {}", ell, r.weight, r.source_monomial, r.two_exponent, r.target_monomial));
        }
        let mut entry = json!({"ell": ell, "rules": to_json(&t.rules), "divisors": to_json(&t.divisors)});
        if check {
            let fixture: Vec<_> = charts::d1_fixture(ell)?.into_iter().filter(|r| r.weight <= max_weight).collect();
            let cmp = charts::compare_with_fixture(&t, &fixture);
            let composite = charts::composite_zero_failures(ell, max_weight)?;
            let ok = cmp.mismatches.is_empty() && composite.is_empty();
            rep.ok &= ok;
            rep.text.push(format!(
                "ell={ell}: {}/{} fixture rules reproduced; composite zero in every weight: {}",
                cmp.matched,
                cmp.matched + cmp.mismatches.len(),
                verdict(composite.is_empty())
            ));
            for m in &cmp.mismatches {
                let got = m.computed.as_ref().map_or("none".to_string(), |c| format!("2^{} {}", c.two_exponent, c.target_monomial));
                rep.text.push(format!(
                    "  mismatch w={} {}: expected 2^{} {}, computed {}",
                    m.expected.weight, m.expected.source_monomial, m.expected.two_exponent, m.expected.target_monomial, got
                ));
            }
            entry["comparison"] = to_json(&cmp);
            entry["composite_failures"] = to_json(&composite);
        }
        all.push(entry);
    }
    rep.json = Value::Array(all);
    Ok(rep)
}

fn chart_command(levels: &[u32], max_weight: i64, format: Format) -> AlgResult<Report> {
    let tables: Vec<DifferentialTable> = levels.iter().map(|&l| charts::d1_table(l, max_weight)).collect::<AlgResult<_>>()?;
    let f = match format {
        Format::Csv => ChartFormat::Csv,
        Format::Json => ChartFormat::Json,
        Format::Text | Format::Svg => ChartFormat::SvgText,
    };
    Ok(Report { ok: true, raw: Some(charts::emit_chart(&tables, f)), ..Default::default() })
}

/// Execute a parsed command line; Err carries a message for standard error.
pub fn run(cli: &Cli) -> Result<(String, bool), String> {
    let name = command_name(&cli.command);
    if cli.format == Format::Svg && !matches!(cli.command, Command::Chart { .. }) {
        return Err(format!("{name}: --format svg is only supported by chart"));
    }
    let report = match &cli.command {
        Command::TateNormalForm { b, perturbations, curve, point } => {
            tate_command(b, *perturbations, curve.as_deref(), point.as_deref(), cli.seed)
        }
        Command::Velu => velu_command(),
        Command::Maps(l) => maps_command(&l.get()?),
        Command::Identities(l) => identities_command(&l.get()?),
        Command::E2 { max_weight, max_s } => e2_command(*max_weight, *max_s),
        Command::BetaTable { family, max_i, max_j, max_k, diff } => beta_command(family, *max_i, *max_j, *max_k, *diff),
        Command::VerifyCocycle { element, input, certified, m, max_n, max_k } => {
            cocycle_command(element.as_deref(), input.as_ref(), *certified, m, *max_n, *max_k)
        }
        Command::Bss { levels, m, max_n } => bss_command(&levels.get()?, m, *max_n),
        Command::D1Table { levels, max_weight, check } => d1_command(&levels.get()?, *max_weight, *check),
        Command::Chart { levels, max_weight } => chart_command(&levels.get()?, *max_weight, cli.format),
    }
    .map_err(|e| format!("{name}: {e}"))?;
    Ok((report.render(cli.format), report.ok))
}

/// The subcommand as typed on the command line.
pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::TateNormalForm { .. } => "tate-normal-form",
        Command::Velu => "velu",
        Command::Maps(_) => "maps",
        Command::Identities(_) => "identities",
        Command::E2 { .. } => "e2",
        Command::BetaTable { .. } => "beta-table",
        Command::VerifyCocycle { .. } => "verify-cocycle",
        Command::Bss { .. } => "bss",
        Command::D1Table { .. } => "d1-table",
        Command::Chart { .. } => "chart",
    }
}
