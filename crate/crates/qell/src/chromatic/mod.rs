//! The 2-adic leading-term calculus for H⁰ of the chromatic layers of the
//! total complex C*_tot(Q(ℓ)).
//!
//! D = (η_R − η_L) ⊕ (q* − f*) on A, together with the ψ^ℓ − 1 component, is
//! evaluated modulo invariant ideals (2ᴷ, v₁ᴶ) on unexpanded expressions by
//! the Leibniz rule D(xy) = D(x)d₀(y) + d₁(x)D(y).

pub mod beta;
pub mod cocycle;
pub mod displays;
pub mod expr;

pub use beta::{
    a_function, beta_table, bss_differentials, computed_a, k_function, BetaFamily, BetaIndex, BssRule, KnownExtData,
};
pub use cocycle::{certified_cocycles, verify_cocycle, verify_cocycle_report, ChromaticFraction, CocycleReport};
pub use displays::{displayed_congruences, later_displays, x_generators, DisplayCheck};
pub use expr::{Expr, X0, X1, X2};

use crate::exact_algebra::truncate::{dyadic_to_rat, two_valuation, v1_order, V1};
use crate::exact_algebra::{
    mul_mod, pow_mod, reduce_dyadic, to_dyadic, AlgResult, Dyadic, GeneratorTable, Poly, Rat, RingMap, F2,
};
use crate::exact_algebra::{AlgebraError, Modulus};
use crate::hopf::weierstrass_hopf;
use crate::level_maps::level;
use crate::rings::{A, GAMMA};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock};

/// The three summands of C¹_tot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Component {
    /// η_R − η_L into Γ.
    Gamma,
    /// q* − f* into B¹(ℓ).
    B1,
    /// ψ^ℓ − 1 into A.
    Psi,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Gamma => "Gamma",
            Component::B1 => "B1",
            Component::Psi => "psi",
        })
    }
}

/// A pair of ring maps d₀, d₁: A → T whose difference is one component of D_tot.
#[derive(Clone, Debug)]
pub struct Coface {
    pub component: Component,
    pub ell: u32,
    pub target: Arc<GeneratorTable>,
    pub d0: RingMap<Rat>,
    pub d1: RingMap<Rat>,
    /// d₀(v₁) = unit · d₁(v₁) modulo 2 (ℓ for ψ, 1 otherwise).
    pub v1_unit: u64,
}

static HOPF_MAPS: LazyLock<(RingMap<Rat>, RingMap<Rat>)> = LazyLock::new(|| {
    let h = weierstrass_hopf().expect("Weierstrass Hopf algebroid");
    (h.eta_r, h.eta_l)
});

/// The coface pair of one component at level ℓ.
pub fn coface(component: Component, ell: u32) -> AlgResult<Coface> {
    let l = level(ell)?;
    let (target, d0, d1, v1_unit) = match component {
        Component::Gamma => (GAMMA.clone(), HOPF_MAPS.0.clone(), HOPF_MAPS.1.clone(), 1),
        Component::B1 => {
            let a1 = Poly::var(&A, V1)?;
            if l.q.eval(&a1)? != l.f.eval(&a1)? {
                return Err(AlgebraError::Other("q*(a1) differs from f*(a1)".into()));
            }
            (l.b1.clone(), l.q.clone(), l.f.clone(), 1)
        }
        Component::Psi => {
            let images = (0..A.len())
                .map(|i| {
                    let s = Rat::from_integer(BigInt::from(ell).pow(A.weight(i) as u32));
                    Poly::gen(&A, i).scale(&s)
                })
                .collect();
            (A.clone(), RingMap::new("psi", &A, &A, images)?, RingMap::identity(&A), ell as u64)
        }
    };
    Ok(Coface { component, ell, target, d0, d1, v1_unit })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    D0,
    D1,
}

/// Evaluates d₀, d₁ and D on one expression tree modulo varying ideals.
///
/// Caches are keyed by node address, so an engine must not outlive the tree.
struct Engine<'a> {
    cf: &'a Coface,
    exact: HashMap<usize, [Poly<Dyadic>; 2]>,
    memo: HashMap<(usize, Side, Modulus), Poly<Dyadic>>,
}

fn key(e: &Expr) -> usize {
    e as *const Expr as usize
}

impl<'a> Engine<'a> {
    fn new(cf: &'a Coface) -> Self {
        Engine { cf, exact: HashMap::new(), memo: HashMap::new() }
    }

    fn zero(&self) -> Poly<Dyadic> {
        Poly::zero(&self.cf.target)
    }

    fn leaf_images(&mut self, e: &Expr, p: &Poly<Rat>) -> AlgResult<&[Poly<Dyadic>; 2]> {
        let k = key(e);
        if !self.exact.contains_key(&k) {
            let im = [to_dyadic(&self.cf.d0.eval(p)?)?, to_dyadic(&self.cf.d1.eval(p)?)?];
            self.exact.insert(k, im);
        }
        Ok(&self.exact[&k])
    }

    fn side(&mut self, e: &Expr, s: Side, m: Modulus) -> AlgResult<Poly<Dyadic>> {
        if m.is_trivial() {
            return Ok(self.zero());
        }
        if let Some(v) = self.memo.get(&(key(e), s, m)) {
            return Ok(v.clone());
        }
        let v = match e {
            Expr::Leaf(p) => {
                let im = self.leaf_images(e, p)?;
                reduce_dyadic(&im[(s == Side::D1) as usize], m)
            }
            Expr::Add(x, y) => reduce_dyadic(&self.side(x, s, m)?.add(&self.side(y, s, m)?), m),
            Expr::Neg(x) => reduce_dyadic(&self.side(x, s, m)?.neg(), m),
            Expr::Mul(x, y) => {
                let u = self.side(x, s, m)?;
                if u.is_zero() {
                    self.zero()
                } else {
                    let w = self.side(y, s, lowered(&u, m))?;
                    mul_mod(&u, &w, m)
                }
            }
            Expr::Pow(x, n) => pow_mod(&self.side(x, s, m)?, *n, m),
        };
        self.memo.insert((key(e), s, m), v.clone());
        Ok(v)
    }

    /// D(e) = d₀(e) − d₁(e) modulo m.
    fn d(&mut self, e: &Expr, m: Modulus) -> AlgResult<Poly<Dyadic>> {
        if m.is_trivial() {
            return Ok(self.zero());
        }
        Ok(match e {
            Expr::Leaf(p) => {
                let im = self.leaf_images(e, p)?;
                reduce_dyadic(&im[0].sub(&im[1]), m)
            }
            Expr::Add(x, y) => reduce_dyadic(&self.d(x, m)?.add(&self.d(y, m)?), m),
            Expr::Neg(x) => reduce_dyadic(&self.d(x, m)?.neg(), m),
            Expr::Mul(x, y) => {
                let mut out = self.zero();
                let dx = self.d(x, m)?;
                if !dx.is_zero() {
                    let y0 = self.side(y, Side::D0, lowered(&dx, m))?;
                    out = out.add(&mul_mod(&dx, &y0, m));
                }
                let dy = self.d(y, m)?;
                if !dy.is_zero() {
                    let x1 = self.side(x, Side::D1, lowered(&dy, m))?;
                    out = out.add(&mul_mod(&x1, &dy, m));
                }
                reduce_dyadic(&out, m)
            }
            Expr::Pow(x, n) => {
                if self.d(x, m)?.is_zero() {
                    self.zero()
                } else {
                    let a = pow_mod(&self.side(x, Side::D0, m)?, *n, m);
                    let b = pow_mod(&self.side(x, Side::D1, m)?, *n, m);
                    reduce_dyadic(&a.sub(&b), m)
                }
            }
        })
    }
}

/// The modulus in force for a cofactor of `x`.
fn lowered(x: &Poly<Dyadic>, m: Modulus) -> Modulus {
    m.lowered(two_valuation(x).unwrap_or(0), v1_order(x).unwrap_or(0))
}

/// One component of D(x) modulo m, with 2-adic coefficients.
pub fn d_component(x: &Expr, cf: &Coface, m: Modulus) -> AlgResult<Poly<Dyadic>> {
    Engine::new(cf).d(x, m)
}

/// d₀(x) and d₁(x) modulo m.
pub fn cofaces_of(x: &Expr, cf: &Coface, m: Modulus) -> AlgResult<(Poly<Dyadic>, Poly<Dyadic>)> {
    let mut e = Engine::new(cf);
    Ok((e.side(x, Side::D0, m)?, e.side(x, Side::D1, m)?))
}

/// Reduction of x ∈ A modulo m.
pub fn reduce_in_a(x: &Expr, m: Modulus) -> AlgResult<Poly<Dyadic>> {
    let id = Coface {
        component: Component::Psi,
        ell: 1,
        target: A.clone(),
        d0: RingMap::identity(&A),
        d1: RingMap::identity(&A),
        v1_unit: 1,
    };
    Engine::new(&id).side(x, Side::D1, m)
}

/// Whether (2ᵏ, v₁ʲ) is invariant: d₀(v₁ʲ) lies in the ideal for every component.
pub fn is_invariant_ideal(m: Modulus, ell: u32) -> AlgResult<bool> {
    let Some(j) = m.j else { return Ok(true) };
    let v1j = Expr::named(V1)?.pow(j as u64);
    for c in [Component::Gamma, Component::B1, Component::Psi] {
        let (d0, _) = cofaces_of(&v1j, &coface(c, ell)?, m)?;
        if !d0.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The closed form of invariance: k ≤ 1 or 2ᵏ⁻¹ divides j.
pub fn invariant_pair(k: u32, j: i32) -> bool {
    k <= 1 || j % (1 << (k - 1)) == 0
}

/// The smallest J ≥ j with (2ᵏ, v₁ᴶ) invariant.
pub fn invariant_v1_exponent(k: u32, j: i32) -> i32 {
    let step = if k <= 1 { 1 } else { 1i32 << (k - 1) };
    (j.max(0) + step - 1) / step * step
}

/// D_tot(x) reduced modulo an ideal, one rational polynomial per component.
#[derive(Clone, Debug, Serialize)]
pub struct DChromatic {
    pub ell: u32,
    pub k: u32,
    pub j: Option<i32>,
    /// Whether the ideal is invariant; non-invariant reductions are still returned.
    pub invariant: bool,
    pub gamma: String,
    pub b1: String,
    pub psi: String,
    #[serde(skip)]
    pub components: [Poly<Dyadic>; 3],
}

/// D_tot(x) with each component reduced modulo (2ᵏ, v₁ʲ).
pub fn d_chromatic(x: &Expr, m: Modulus, ell: u32) -> AlgResult<DChromatic> {
    let mut out = Vec::new();
    for c in [Component::Gamma, Component::B1, Component::Psi] {
        out.push(d_component(x, &coface(c, ell)?, m)?);
    }
    let components: [Poly<Dyadic>; 3] = out.try_into().expect("three components");
    let show = |p: &Poly<Dyadic>| dyadic_to_rat(p).to_string();
    Ok(DChromatic {
        ell,
        k: m.k,
        j: m.j,
        invariant: is_invariant_ideal(m, ell)?,
        gamma: show(&components[0]),
        b1: show(&components[1]),
        psi: show(&components[2]),
        components,
    })
}

impl DChromatic {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }
}

/// The digits c_{i,j} ∈ 𝔽₂[other generators] of x = Σ 2ⁱ v₁ʲ c_{i,j}, for i < k.
pub fn digits(x: &Poly<Dyadic>, k: u32) -> BTreeMap<(u32, i32), Poly<F2>> {
    let table = x.table();
    let v1 = table.index(V1);
    let mut acc: BTreeMap<(u32, i32), BTreeMap<crate::exact_algebra::Mono, F2>> = BTreeMap::new();
    for (mono, c) in x.terms() {
        let mut rest = mono.clone();
        let j = match v1 {
            Some(i) => std::mem::replace(&mut rest[i], 0),
            None => 0,
        };
        for i in (0..k.min(64)).filter(|&i| c.bit(i)) {
            let row = acc.entry((i, j)).or_default();
            if row.remove(&rest).is_none() {
                row.insert(rest.clone(), F2(true));
            }
        }
    }
    acc.into_iter()
        .filter(|(_, t)| !t.is_empty())
        .map(|(key, t)| (key, Poly::from_map(table, t)))
        .collect()
}

/// Reduce a rational polynomial over `table` to 2-adic digits.
pub fn digits_of_rat(x: &Poly<Rat>, k: u32) -> AlgResult<BTreeMap<(u32, i32), Poly<F2>>> {
    Ok(digits(&to_dyadic(x)?, k))
}

/// One leading term 2ⁱ v₁ʲ c of a component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTerm {
    pub component: Component,
    pub i: u32,
    pub j: i32,
    pub head: String,
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: 2^{} v1^{} ({})", self.component, self.i, self.j, self.head)
    }
}

/// The ordered leading terms of D(x): per component the staircase of row
/// minima with strictly decreasing v₁-exponent, merged in (i, j) order.
#[derive(Clone, Debug, Serialize)]
pub struct LeadingExpansion {
    pub ell: u32,
    pub terms: Vec<LeadingTerm>,
    /// Nonzero digits remain beyond the listed terms.
    pub tail: bool,
}

/// The staircase of a digit table: for each row the smallest j, kept when it
/// is below every earlier row's.
pub fn staircase(d: &BTreeMap<(u32, i32), Poly<F2>>) -> Vec<(u32, i32, Poly<F2>)> {
    let mut out: Vec<(u32, i32, Poly<F2>)> = Vec::new();
    let mut bound = i32::MAX;
    for ((i, j), c) in d {
        if *j < bound && out.last().is_none_or(|l| l.0 != *i) {
            out.push((*i, *j, c.clone()));
            bound = *j;
        }
    }
    out
}

/// The first `depth` leading terms of the Γ and B¹ components of D(x) modulo m.
pub fn leading_expansion(x: &Expr, ell: u32, depth: usize, m: Modulus) -> AlgResult<LeadingExpansion> {
    let mut all = Vec::new();
    let mut total = 0;
    for c in [Component::Gamma, Component::B1] {
        let d = digits(&d_component(x, &coface(c, ell)?, m)?, m.k);
        total += d.len();
        for (i, j, head) in staircase(&d) {
            all.push(LeadingTerm { component: c, i, j, head: head.to_string() });
        }
    }
    all.sort_by_key(|t| (t.i, t.j, t.component));
    let tail = total > depth.min(all.len());
    all.truncate(depth);
    Ok(LeadingExpansion { ell, terms: all, tail })
}

/// x modulo (2, v₁) pushed along d₁ into the target of a component.
fn residue(x: &Expr, cf: &Coface) -> AlgResult<Poly<F2>> {
    let (_, d1) = cofaces_of(x, cf, Modulus::new(1, 1))?;
    Ok(digits(&d1, 1).remove(&(0, 0)).unwrap_or_else(|| Poly::zero(&cf.target)))
}

/// One predicted leading term (row i, v₁-exponent j, head c).
pub type Predicted = (u32, i32, Poly<F2>);

/// The squaring rule: from the staircase (iₖ, cₖ) of D(x), the predicted
/// leading terms of D(x²) are v₁^{2i₀}c₀², then 2^{k+1} v₁^{iₖ} cₖ x̄.
pub fn square_rule(stair: &[Predicted], xbar: &Poly<F2>) -> Vec<Predicted> {
    let mut out = Vec::new();
    if let Some((0, j0, c0)) = stair.first() {
        out.push((0, 2 * j0, frobenius(c0)));
    }
    for (i, j, c) in stair {
        out.push((i + 1, *j, c.mul(xbar)));
    }
    out
}

/// The squaring rule with the term 4c₁² that D(x)² contributes when i₁ = 0:
/// there 4v₁^{2i₁}c₁² lands on the predicted head 4v₁^{i₁}c₁x̄.
pub fn square_rule_with_collision(stair: &[Predicted], xbar: &Poly<F2>) -> Vec<Predicted> {
    let mut out = square_rule(stair, xbar);
    if let Some((_, _, c1)) = stair.iter().find(|p| p.0 == 1 && p.1 == 0) {
        for p in out.iter_mut().filter(|p| p.0 == 2 && p.1 == 0) {
            p.2 = p.2.add(&frobenius(c1));
        }
    }
    out
}

/// Whether the squaring rule's i₁ = 0 collision occurs for this staircase.
pub fn square_collision(stair: &[Predicted]) -> bool {
    stair.iter().any(|p| p.0 == 1 && p.1 == 0)
}

/// The odd-power rule: D(xᵐ) has leading terms 2ᵏ v₁^{iₖ} cₖ x̄^{m−1}.
pub fn odd_power_rule(stair: &[Predicted], xbar: &Poly<F2>, m: u32) -> Vec<Predicted> {
    let f = xbar.pow(m - 1);
    stair.iter().map(|(i, j, c)| (*i, *j, c.mul(&f))).collect()
}

fn frobenius(c: &Poly<F2>) -> Poly<F2> {
    c.mul(c)
}

/// Compare predicted leading terms with the digits of an actual value: each
/// row must vanish below the predicted exponent and agree at it.
pub fn window_mismatches(pred: &[Predicted], actual: &BTreeMap<(u32, i32), Poly<F2>>) -> Vec<String> {
    let mut bad = Vec::new();
    for (i, j, c) in pred {
        for (&(ai, aj), v) in actual.range((*i, i32::MIN)..=(*i, *j)) {
            let want = if aj == *j { c.clone() } else { Poly::zero(v.table()) };
            if *v != want {
                bad.push(format!("2^{ai} v1^{aj}: expected {want}, found {v}"));
            }
        }
        if !c.is_zero() && !actual.contains_key(&(*i, *j)) {
            bad.push(format!("2^{i} v1^{j}: expected {c}, found 0"));
        }
    }
    bad
}

/// Check the squaring and odd-power rules for x against direct computation,
/// in one component, on the first `depth` staircase terms of D(x).
///
/// The rules presuppose D(x) ≡ 0 mod (2, v₁), so that x̄ is well defined.
pub fn expansion_rules_check(
    x: &Expr,
    component: Component,
    ell: u32,
    depth: usize,
    odd: &[u32],
    m: Modulus,
    with_collision: bool,
) -> AlgResult<Vec<String>> {
    let cf = coface(component, ell)?;
    let mut stair = staircase(&digits(&d_component(x, &cf, m)?, m.k));
    stair.truncate(depth);
    let xbar = residue(x, &cf)?;
    let mut bad = Vec::new();
    let mut check = |name: String, pred: Vec<Predicted>, y: Expr| -> AlgResult<()> {
        let pred: Vec<Predicted> = pred.into_iter().filter(|p| p.0 < m.k && m.j.is_none_or(|j| p.1 < j)).collect();
        let actual = digits(&d_component(&y, &cf, m)?, m.k);
        bad.extend(window_mismatches(&pred, &actual).into_iter().map(|s| format!("{name}: {s}")));
        Ok(())
    };
    let square = if with_collision { square_rule_with_collision(&stair, &xbar) } else { square_rule(&stair, &xbar) };
    check("square".into(), square, x.clone().pow(2))?;
    for &n in odd {
        check(format!("power {n}"), odd_power_rule(&stair, &xbar, n), x.clone().pow(n as u64))?;
    }
    Ok(bad)
}

/// The exact Leibniz and doubling identities for D_tot on x, y ∈ A.
pub fn leibniz_defects(x: &Poly<Rat>, y: &Poly<Rat>, ell: u32) -> AlgResult<Vec<String>> {
    let mut bad = Vec::new();
    for c in [Component::Gamma, Component::B1, Component::Psi] {
        let cf = coface(c, ell)?;
        let d = |p: &Poly<Rat>| -> AlgResult<Poly<Rat>> { Ok(cf.d0.eval(p)?.sub(&cf.d1.eval(p)?)) };
        let (dx, dy) = (d(x)?, d(y)?);
        let product = dx.mul(&cf.d0.eval(y)?).add(&cf.d1.eval(x)?.mul(&dy));
        if d(&x.mul(y))? != product {
            bad.push(format!("{c}: D(xy) != D(x)d0(y) + d1(x)D(y)"));
        }
        let two = Poly::from_int(&cf.target, 2);
        let square = two.mul(&cf.d1.eval(x)?).mul(&dx).add(&dx.mul(&dx));
        if d(&x.mul(x))? != square {
            bad.push(format!("{c}: D(x^2) != 2xD(x) + D(x)^2"));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariance_matches_closed_form() {
        for k in 1..=5u32 {
            for j in 1..=20 {
                let m = Modulus::new(k, j);
                assert_eq!(is_invariant_ideal(m, 3).unwrap(), invariant_pair(k, j), "k={k} j={j}");
            }
        }
        assert_eq!(invariant_v1_exponent(3, 5), 8);
        assert_eq!(invariant_v1_exponent(1, 5), 5);
    }

    #[test]
    fn d_of_x0_leading_terms() {
        let x0 = Expr::named("x0").unwrap();
        let e = leading_expansion(&x0, 3, 3, Modulus::new(3, 4)).unwrap();
        let shown: Vec<String> = e.terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(
            shown,
            ["Gamma: 2^0 v1^1 (s^2)", "Gamma: 2^1 v1^0 (a2*s + r*s + s^3 + t)", "B1: 2^1 v1^0 (a3)"]
                .map(String::from)
                .to_vec()
        );
    }

    #[test]
    fn leibniz_on_generators() {
        let a = |n: &str| Poly::<Rat>::var(&A, n).unwrap();
        assert!(leibniz_defects(&a("a3"), &a("a2"), 3).unwrap().is_empty());
        assert!(leibniz_defects(&X0, &a("a4"), 5).unwrap().is_empty());
    }
}
