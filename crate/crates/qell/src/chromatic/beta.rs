//! β-family index sets, v₁-BSS differentials read off from D, and the
//! presented Ext data of the 2-line computation.

use super::{coface, d_component, digits, Component, Expr};
use crate::exact_algebra::{AlgResult, AlgebraError, Modulus, Poly, F2};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// a(i) = 1, 2, 3·2^{i−1} for i = 0, 1, ≥ 2.
pub fn a_function(i: u32) -> u64 {
    match i {
        0 => 1,
        1 => 2,
        _ => 3 << (i - 1),
    }
}

/// k(j) = 1 for j odd, ν₂(j) + 2 for j even.
pub fn k_function(j: u64) -> u32 {
    if j % 2 == 1 {
        1
    } else {
        j.trailing_zeros() + 2
    }
}

/// The x whose D detects the v₁-BSS differential on a₃^{m2ⁿ}.
fn bss_source(n: u32, m: u32) -> String {
    match n {
        0 => format!("x0^{m}"),
        1 => format!("x1^{m}"),
        _ => format!("x2^{}", m << (n - 2)),
    }
}

/// The leading row-0 term of D(x) mod 2 over Γ ⊕ B¹: (component, j, head).
fn leading_mod_two(x: &str, ell: u32, j_bound: i32) -> AlgResult<(Component, i32, Poly<F2>)> {
    let e = Expr::parse(x)?;
    let m = Modulus::new(1, j_bound);
    let mut best: Option<(Component, i32, Poly<F2>)> = None;
    for c in [Component::Gamma, Component::B1] {
        let d = digits(&d_component(&e, &coface(c, ell)?, m)?, 1);
        if let Some((&(_, j), head)) = d.iter().next() {
            if best.as_ref().is_none_or(|b| j < b.1) {
                best = Some((c, j, head.clone()));
            }
        }
    }
    best.ok_or_else(|| AlgebraError::Other(format!("D({x}) vanishes mod (2, v1^{j_bound})")))
}

/// The v₁-BSS length on a₃^{m2ⁿ} at level ℓ: the v₁-order of D mod 2 of
/// x₀ᵐ, x₁ᵐ or x₂^{m2ⁿ⁻²}.
fn bss_length(ell: u32, n: u32, m: u32) -> AlgResult<(Component, i32, Poly<F2>)> {
    leading_mod_two(&bss_source(n, m), ell, (4 << n) + 2)
}

/// The computed bound a_ℓ(n) on j for a₃^{2ⁿ}/v₁ʲ.
pub fn computed_a(ell: u32, n: u32) -> AlgResult<u64> {
    Ok(bss_length(ell, n, 1)?.1 as u64)
}

/// The three β-family tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BetaFamily {
    Sphere,
    Q3,
    Q5,
}

impl fmt::Display for BetaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetaFamily::Sphere => "sphere",
            BetaFamily::Q3 => "Q3",
            BetaFamily::Q5 => "Q5",
        })
    }
}

impl std::str::FromStr for BetaFamily {
    type Err = AlgebraError;
    fn from_str(s: &str) -> AlgResult<Self> {
        match s {
            "sphere" => Ok(BetaFamily::Sphere),
            "Q3" | "q3" => Ok(BetaFamily::Q3),
            "Q5" | "q5" => Ok(BetaFamily::Q5),
            _ => Err(AlgebraError::Other(format!("unknown family {s}"))),
        }
    }
}

/// One element a₃^{m2ⁿ}/(2ᵏv₁ʲ); m = 0 encodes the family 1/(2ᵏv₁ʲ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BetaIndex {
    pub family: BetaFamily,
    pub m: u32,
    pub n: u32,
    pub j: u64,
    pub k: u32,
}

impl BetaIndex {
    /// The index without its family, for comparing tables.
    pub fn key(&self) -> (u32, u32, u64, u32) {
        (self.m, self.n, self.j, self.k)
    }

    /// The a₃-exponent m2ⁿ (0 for the unit family).
    pub fn power(&self) -> u64 {
        (self.m as u64) << self.n
    }
}

impl fmt::Display for BetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = if self.m == 0 { "1".to_string() } else { format!("a3^{}", self.power()) };
        write!(f, "{top}/(2^{} v1^{})", self.k, self.j)
    }
}

/// The bound on j for a₃^{m2ⁿ}/2ᵏv₁ʲ given the values a(0), …, a(n).
fn j_bound(n: u32, k: u32, a: &[u64]) -> u64 {
    if k == 3 && n == 2 {
        a[1]
    } else if n + 1 >= k {
        a[(n + 1 - k) as usize]
    } else {
        0
    }
}

/// All admissible indices with m2ⁿ ≤ i_max, j ≤ j_max and k ≤ k_max.
///
/// The sphere uses a(i); Q(3) the same shape with a(i) replaced by the
/// v₁-BSS lengths computed from D; Q(5) is the k = 1 table with j bounded by
/// its computed lengths and every 1/v₁ʲ present.
pub fn beta_table(family: BetaFamily, i_max: u64, j_max: u64, k_max: u32) -> AlgResult<BTreeSet<BetaIndex>> {
    let mut out = BTreeSet::new();
    let k_top = if family == BetaFamily::Q5 { k_max.min(1) } else { k_max };
    let n_max = if i_max == 0 { 0 } else { i_max.ilog2() };
    let a: Vec<u64> = (0..=n_max.max(1))
        .map(|i| match family {
            BetaFamily::Sphere => Ok(a_function(i)),
            BetaFamily::Q3 => computed_a(3, i),
            BetaFamily::Q5 => computed_a(5, i),
        })
        .collect::<AlgResult<_>>()?;
    for j in 1..=j_max {
        for k in 1..=k_function(j).min(k_top) {
            out.insert(BetaIndex { family, m: 0, n: 0, j, k });
        }
    }
    for n in (0..=n_max).filter(|_| i_max > 0) {
        for m in (1..).step_by(2).take_while(|&m| (m as u64) << n <= i_max) {
            for k in 1..=k_top {
                let b = if family == BetaFamily::Q5 { a[n as usize] } else { j_bound(n, k, &a) };
                for j in (1..=b.min(j_max)).filter(|&j| k <= k_function(j)) {
                    out.insert(BetaIndex { family, m, n, j, k });
                }
            }
        }
    }
    Ok(out)
}

/// One v₁-BSS differential d_r(a₃^{m2ⁿ}/v₁ʲ) = target/v₁^{j−r}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BssRule {
    pub ell: u32,
    pub m: u32,
    pub n: u32,
    pub length: i32,
    pub component: Component,
    pub source: String,
    /// The target numerator in Ext of the associated graded.
    pub target: String,
    /// The head of D mod 2 that the target was read from.
    pub head: String,
}

impl fmt::Display for BssRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.length;
        write!(f, "d_{r}({}/v1^j) = {}/v1^(j-{r})", self.source, self.target)
    }
}

fn power_name(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Name a head in Ext: in Γ, s ↦ h₁ and s² ↦ h₂; in B¹, a₃ ↦ a₃' (or u).
fn ext_name(c: Component, ell: u32, head: &Poly<F2>) -> AlgResult<String> {
    let mut terms = head.terms();
    let (mono, _) = match (terms.next(), terms.next()) {
        (Some(t), None) => t,
        _ => return Err(AlgebraError::Other(format!("head {head} is not a monomial"))),
    };
    let table = head.table();
    let mut parts = Vec::new();
    let mut h = None;
    for (i, &e) in mono.iter().enumerate() {
        let name = table.name(i);
        match (c, name, e) {
            (_, _, 0) => {}
            (Component::Gamma, "a3", _) => parts.extend(power_name("a3", e)),
            (Component::Gamma, "s", 1) => h = Some("h1"),
            (Component::Gamma, "s", 2) => h = Some("h2"),
            (Component::B1, "a3", _) if ell == 3 => parts.extend(power_name("(a3')", e)),
            (Component::B1, "u", _) if ell == 5 => parts.extend(power_name("u", e)),
            _ => return Err(AlgebraError::Other(format!("head {head} has no Ext name"))),
        }
    }
    parts.extend(h.map(str::to_string));
    Ok(if parts.is_empty() { "1".into() } else { parts.join(" ") })
}

/// The v₁-BSS differentials from the 0-line to the 1-line, read off from the
/// leading term of D mod 2 on x₀ᵐ, x₁ᵐ and x₂^{m2ⁿ⁻²}, for the given odd m
/// and n ≤ n_max.
pub fn bss_differentials(ell: u32, ms: &[u32], n_max: u32) -> AlgResult<Vec<BssRule>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for &m in ms {
            let (component, length, head) = bss_length(ell, n, m)?;
            out.push(BssRule {
                ell,
                m,
                n,
                length,
                component,
                source: format!("a3^{}", m << n),
                target: ext_name(component, ell, &head)?,
                head: head.to_string(),
            });
        }
    }
    Ok(out)
}

/// A named generator of a presented Ext ring with its (s, t) bidegree.
#[derive(Clone, Debug, Serialize)]
pub struct ExtGenerator {
    pub name: &'static str,
    pub s: i32,
    pub t: i32,
}

/// The presented rings H^{*,*}(M₂⁰C*_Γ(A)) and H^{*,*}(M₂⁰C*_{Λ¹}(B¹)).
#[derive(Clone, Debug, Serialize)]
pub struct KnownExtData {
    pub ell: u32,
    pub gamma_ring: String,
    pub gamma: Vec<ExtGenerator>,
    pub b1_ring: String,
    pub b1: Vec<ExtGenerator>,
}

/// One d₁ of the double-complex spectral sequence, with total bidegrees.
#[derive(Clone, Debug, Serialize)]
pub struct SsDifferential {
    pub source: String,
    pub target: String,
    pub source_bidegree: (i32, i32),
    pub target_bidegree: (i32, i32),
}

fn gen(name: &'static str, s: i32, t: i32) -> ExtGenerator {
    ExtGenerator { name, s, t }
}

impl KnownExtData {
    pub fn new(ell: u32) -> AlgResult<Self> {
        let unit = match ell {
            3 => gen("a3", 0, 6),
            5 => gen("u", 0, 2),
            _ => return Err(AlgebraError::Other(format!("no presented Ext data at level {ell}"))),
        };
        Ok(KnownExtData {
            ell,
            gamma_ring: "F2[a3^{+-1}, h1, h2, g]/(h2^3 = a3 h1^3)".into(),
            gamma: vec![gen("a3", 0, 6), gen("h1", 1, 2), gen("h2", 1, 4), gen("g", 4, 24)],
            b1_ring: format!("F2[{}^{{+-1}}, h21]", unit.name),
            b1: vec![unit, gen("h21", 1, 6)],
        })
    }

    fn lookup(gens: &[ExtGenerator], name: &str) -> AlgResult<(i32, i32)> {
        gens.iter()
            .find(|g| g.name == name)
            .map(|g| (g.s, g.t))
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    /// The bidegree of a monomial Π gᵉ in the Γ ring (`b1 = false`) or the B¹ ring.
    pub fn bidegree(&self, b1: bool, mono: &[(&str, i32)]) -> AlgResult<(i32, i32)> {
        let gens = if b1 { &self.b1 } else { &self.gamma };
        let mut out = (0, 0);
        for &(name, e) in mono {
            let (s, t) = Self::lookup(gens, name)?;
            out = (out.0 + e * s, out.1 + e * t);
        }
        Ok(out)
    }

    /// Bidegree consistency of the presented relations: h₂³ = a₃h₁³ and
    /// h₂,₁⁴ = g (across the two rings). Returns the failures.
    pub fn relation_checks(&self) -> AlgResult<Vec<String>> {
        let mut bad = Vec::new();
        if self.bidegree(false, &[("h2", 3)])? != self.bidegree(false, &[("a3", 1), ("h1", 3)])? {
            bad.push("h2^3 and a3 h1^3 differ in bidegree".to_string());
        }
        if self.bidegree(true, &[("h21", 4)])? != self.bidegree(false, &[("g", 1)])? {
            bad.push("h21^4 and g differ in bidegree".to_string());
        }
        Ok(bad)
    }

    /// d₁(gⁱ ā₃ʲ) = h₂,₁^{4i} (ā₃')ʲ at ℓ = 3, or h₂,₁^{4i} ū^{3j} at ℓ = 5.
    ///
    /// The source sits on the Γ 1-line and the target on the B¹ 2-line, so
    /// total s rises by one and t is preserved; both are checked.
    pub fn d1(&self, i: i32, j: i32) -> AlgResult<SsDifferential> {
        let (src_s, src_t) = self.bidegree(false, &[("g", i), ("a3", j)])?;
        let (unit, e) = if self.ell == 3 { ("a3", j) } else { ("u", 3 * j) };
        let (tgt_s, tgt_t) = self.bidegree(true, &[("h21", 4 * i), (unit, e)])?;
        let (source_bidegree, target_bidegree) = ((src_s + 1, src_t), (tgt_s + 2, tgt_t));
        if target_bidegree != (source_bidegree.0 + 1, source_bidegree.1) {
            return Err(AlgebraError::Other(format!("d1 on g^{i} a3^{j} is not of degree (1, 0)")));
        }
        let bar = if self.ell == 3 { "(a3bar')" } else { "ubar" };
        let target = [power_name("h21", 4 * i), power_name(bar, e)].into_iter().flatten().collect::<Vec<_>>();
        let source = [power_name("g", i), power_name("a3bar", j)].into_iter().flatten().collect::<Vec<_>>();
        let name = |v: Vec<String>| if v.is_empty() { "1".to_string() } else { v.join(" ") };
        Ok(SsDifferential { source: name(source), target: name(target), source_bidegree, target_bidegree })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!((0..5).map(a_function).collect::<Vec<_>>(), vec![1, 2, 6, 12, 24]);
        assert_eq!([1, 2, 4, 6, 8, 16].map(k_function), [1, 3, 4, 3, 5, 6]);
    }

    #[test]
    fn computed_lengths() {
        for n in 0..=4 {
            assert_eq!(computed_a(3, n).unwrap(), a_function(n), "n={n}");
        }
        assert_eq!((0..=4).map(|n| computed_a(5, n).unwrap()).collect::<Vec<_>>(), vec![1, 2, 8, 16, 32]);
    }

    #[test]
    fn sphere_examples() {
        let t = beta_table(BetaFamily::Sphere, 8, 30, 4).unwrap();
        assert!(t.contains(&BetaIndex { family: BetaFamily::Sphere, m: 1, n: 2, j: 6, k: 1 }));
        assert!(!t.contains(&BetaIndex { family: BetaFamily::Sphere, m: 1, n: 2, j: 7, k: 1 }));
        // k = 3, n = 2 uses a(1) = 2.
        assert!(t.contains(&BetaIndex { family: BetaFamily::Sphere, m: 1, n: 2, j: 2, k: 3 }));
        assert!(!t.contains(&BetaIndex { family: BetaFamily::Sphere, m: 1, n: 2, j: 4, k: 3 }));
    }

    #[test]
    fn bss_rules_named() {
        let r = bss_differentials(3, &[1, 3], 2).unwrap();
        let show: Vec<String> = r.iter().map(|r| r.to_string()).collect();
        assert!(show.contains(&"d_1(a3^3/v1^j) = a3^2 h2/v1^(j-1)".to_string()), "{show:?}");
        assert!(show.contains(&"d_2(a3^6/v1^j) = a3^5 h1/v1^(j-2)".to_string()), "{show:?}");
        assert!(show.contains(&"d_6(a3^12/v1^j) = (a3')^10/v1^(j-6)".to_string()), "{show:?}");
        let r5 = bss_differentials(5, &[3], 2).unwrap();
        assert_eq!(r5[2].to_string(), "d_8(a3^12/v1^j) = u^28/v1^(j-8)");
    }

    #[test]
    fn ext_data() {
        for ell in [3, 5] {
            let e = KnownExtData::new(ell).unwrap();
            assert!(e.relation_checks().unwrap().is_empty());
            let d = e.d1(2, 3).unwrap();
            assert_eq!(d.target_bidegree, (10, 66));
        }
        assert_eq!(KnownExtData::new(5).unwrap().d1(1, 1).unwrap().target, "h21^4 ubar^3");
    }
}
