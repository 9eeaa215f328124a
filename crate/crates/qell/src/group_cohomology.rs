//! Cohomology of 𝔽₅ˣ ≅ C₄ acting on ℤ[1/5][x, y] and of 𝔽₃ˣ ≅ C₂ acting on
//! ℤ[1/3][a₁, a₃].
//!
//! Groups are computed from the 2-periodic resolution of a cyclic group.
//! Relations are checked in the bar complex with explicit normalized cochains.
//! Everything is 2-local: the positive-degree groups are 2-groups.

use crate::exact_algebra::{AlgResult, AlgebraError, GeneratorTable, Poly, Rat, RingMap};
use crate::exact_algebra::poly::Mono;
use crate::linalg::{solvable_2local, subquotient_2local, Group2, Matrix};
use crate::rings::{B1_3, XY};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::{Arc, LazyLock};

/// A cyclic group ⟨σ⟩ acting on a graded polynomial ring through a ring map.
#[derive(Clone, Debug)]
pub struct CyclicAction {
    pub name: &'static str,
    pub order: usize,
    pub table: Arc<GeneratorTable>,
    pub sigma: RingMap<Rat>,
}

/// 𝔽₅ˣ with σ the reduction of 2, acting by x ↦ y, y ↦ −x.
pub static C4: LazyLock<CyclicAction> = LazyLock::new(|| {
    let x = Poly::var(&XY, "x").expect("x");
    let y = Poly::var(&XY, "y").expect("y");
    CyclicAction {
        name: "F5x",
        order: 4,
        table: XY.clone(),
        sigma: RingMap::new("sigma", &XY, &XY, vec![y, x.neg()]).expect("action on x, y"),
    }
});

/// 𝔽₃ˣ acting by [−1]: a₁ ↦ −a₁, a₃ ↦ −a₃.
pub static C2: LazyLock<CyclicAction> = LazyLock::new(|| {
    let a1 = Poly::var(&B1_3, "a1").expect("a1");
    let a3 = Poly::var(&B1_3, "a3").expect("a3");
    CyclicAction {
        name: "F3x",
        order: 2,
        table: B1_3.clone(),
        sigma: RingMap::new("[-1]", &B1_3, &B1_3, vec![a1.neg(), a3.neg()]).expect("sign action"),
    }
});

/// The four indecomposable lattices occurring in the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SummandKind {
    /// Trivial action on ℤ.
    R,
    /// Sign action on ℤ.
    Rneg,
    /// σ·(m, n) = (n, m).
    Tau,
    /// σ·(m, n) = (n, −m).
    Psi,
}

impl SummandKind {
    pub fn rank(self) -> usize {
        match self {
            SummandKind::R | SummandKind::Rneg => 1,
            SummandKind::Tau | SummandKind::Psi => 2,
        }
    }

    /// The matrix of σ acting on coordinate columns.
    pub fn matrix(self) -> Matrix {
        let i = |n: i64| Rat::from_integer(n.into());
        match self {
            SummandKind::R => vec![vec![i(1)]],
            SummandKind::Rneg => vec![vec![i(-1)]],
            SummandKind::Tau => vec![vec![i(0), i(1)], vec![i(1), i(0)]],
            SummandKind::Psi => vec![vec![i(0), i(1)], vec![i(-1), i(0)]],
        }
    }

    /// Hˢ(C_order; summand) from the closed forms R[β]/|G|β, R[β]/2β[1],
    /// R[β]/2β and R[β]/2β[1].
    pub fn cohomology(self, order: usize, s: usize) -> Group2 {
        let cyclic = |e: u32| Group2 { free: 0, torsion: vec![e] };
        let free = Group2 { free: 1, torsion: Vec::new() };
        match (self, s, s % 2) {
            (SummandKind::R | SummandKind::Tau, 0, _) => free,
            (SummandKind::R, _, 0) => cyclic(order.trailing_zeros()),
            (SummandKind::Tau, _, 0) => cyclic(1),
            (SummandKind::Rneg | SummandKind::Psi, _, 1) => cyclic(1),
            _ => Group2::zero(),
        }
    }
}

/// One indecomposable summand with its basis in the module.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedSummand {
    pub kind: SummandKind,
    /// The orbit representative and, for rank two, its image under σ.
    pub basis: Vec<Poly<Rat>>,
}

impl fmt::Display for GradedSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{{{}}}", self.kind, self.basis[0])
    }
}

/// Hⁿ(G; M) computed from the periodic resolution, given σ acting on M = ℤ₍₂₎ⁿ.
pub fn periodic_cohomology(sigma: &Matrix, order: usize, s: usize) -> Group2 {
    let n = sigma.len();
    let ident = |i: usize, j: usize| if i == j { Rat::one() } else { Rat::zero() };
    let minus_one: Matrix = (0..n).map(|i| (0..n).map(|j| &sigma[i][j] - ident(i, j)).collect()).collect();
    let mut power: Matrix = (0..n).map(|i| (0..n).map(|j| ident(i, j)).collect()).collect();
    let mut norm: Matrix = vec![vec![Rat::zero(); n]; n];
    for _ in 0..order {
        for i in 0..n {
            for j in 0..n {
                norm[i][j] += &power[i][j];
            }
        }
        power = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &sigma[i][k] * &power[k][j]).sum()).collect())
            .collect();
    }
    if s == 0 {
        subquotient_2local(&minus_one, n, &vec![Vec::new(); n], 0)
    } else if s % 2 == 1 {
        subquotient_2local(&norm, n, &minus_one, n)
    } else {
        subquotient_2local(&minus_one, n, &norm, n)
    }
}

impl CyclicAction {
    /// σᵏ(x).
    pub fn act(&self, k: usize, x: &Poly<Rat>) -> Poly<Rat> {
        let mut y = x.clone();
        for _ in 0..k % self.order {
            y = self.sigma.eval(&y).expect("action preserves the ring");
        }
        y
    }

    /// Exponent vectors of the monomials of weight w, in descending lexicographic order.
    pub fn monomials(&self, w: i64) -> Vec<Mono> {
        fn go(t: &GeneratorTable, i: usize, rest: i64, cur: &mut Vec<i32>, out: &mut Vec<Mono>) {
            if i == t.len() {
                if rest == 0 {
                    out.push(cur.iter().copied().collect());
                }
                return;
            }
            let wi = t.weight(i);
            let max = if wi == 0 { 0 } else { rest / wi };
            for e in (0..=max).rev() {
                cur.push(e as i32);
                go(t, i + 1, rest - e * wi, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if w >= 0 {
            go(&self.table, 0, w, &mut Vec::new(), &mut out);
        }
        out
    }

    /// The monomial basis of the weight-w piece.
    pub fn basis(&self, w: i64) -> Vec<Poly<Rat>> {
        self.monomials(w)
            .into_iter()
            .map(|m| Poly::monomial(&self.table, m, Rat::one()).expect("nonnegative exponents"))
            .collect()
    }

    /// Coordinates of a weight-w element in the monomial basis.
    pub fn coordinates(&self, x: &Poly<Rat>, w: i64) -> AlgResult<Vec<Rat>> {
        let monos = self.monomials(w);
        for (m, _) in x.terms() {
            if !monos.contains(m) {
                return Err(AlgebraError::MixedWeight);
            }
        }
        Ok(monos.iter().map(|m| x.coeff(m)).collect())
    }

    /// The matrix of σ on the weight-w piece, acting on coordinate columns.
    pub fn sigma_matrix(&self, w: i64) -> Matrix {
        let basis = self.basis(w);
        let images: Vec<Vec<Rat>> = basis
            .iter()
            .map(|b| self.coordinates(&self.act(1, b), w).expect("action preserves weight"))
            .collect();
        (0..basis.len()).map(|i| images.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Split the weight-w piece into indecomposable summands along orbits of
    /// monomials, assuming σ permutes monomials up to sign.
    pub fn decompose(&self, w: i64) -> AlgResult<Vec<GradedSummand>> {
        let basis = self.basis(w);
        let mut seen = vec![false; basis.len()];
        let mut out = Vec::new();
        for i in 0..basis.len() {
            if seen[i] {
                continue;
            }
            let m = &basis[i];
            let image = self.act(1, m);
            if image.len() != 1 {
                return Err(AlgebraError::Other(format!("σ does not permute monomials: σ({m}) = {image}")));
            }
            let back = self.act(2, m);
            let sign = |p: &Poly<Rat>, q: &Poly<Rat>| -> AlgResult<bool> {
                if *p == *q {
                    Ok(true)
                } else if *p == q.neg() {
                    Ok(false)
                } else {
                    Err(AlgebraError::Other(format!("orbit of {m} is longer than two")))
                }
            };
            let (kind, members) = if image == *m || image == m.neg() {
                (if sign(&image, m)? { SummandKind::R } else { SummandKind::Rneg }, vec![m.clone()])
            } else {
                let kind = if sign(&back, m)? { SummandKind::Tau } else { SummandKind::Psi };
                (kind, vec![m.clone(), image.clone()])
            };
            for p in &members {
                let (mono, _) = p.terms().next().expect("monomial");
                let j = basis.iter().position(|b| b.terms().next().map(|t| t.0) == Some(mono)).expect("basis monomial");
                seen[j] = true;
            }
            out.push(GradedSummand { kind, basis: members });
        }
        Ok(out)
    }

    /// Hˢ of the weight-w piece from the periodic resolution.
    pub fn cohomology_group(&self, s: usize, w: i64) -> Group2 {
        periodic_cohomology(&self.sigma_matrix(w), self.order, s)
    }

    /// Hˢ of the weight-w piece as the sum of the closed forms over summands.
    pub fn summandwise(&self, s: usize, w: i64) -> AlgResult<Group2> {
        let mut g = Group2::zero();
        for summand in self.decompose(w)? {
            let h = summand.kind.cohomology(self.order, s);
            g.free += h.free;
            g.torsion.extend(h.torsion);
        }
        g.torsion.sort_unstable();
        Ok(g)
    }
}

/// Decompose the degree-t piece of ℤ[1/5][x, y] (x, y in degree 2).
pub fn decompose_action(t: i64) -> AlgResult<Vec<GradedSummand>> {
    if t % 2 != 0 {
        return Err(AlgebraError::Other(format!("degree {t} is odd")));
    }
    C4.decompose(t / 2)
}

/// A normalized or unnormalized n-cochain on a cyclic group.
///
/// Values are stored for every n-tuple of exponents (i₁, …, iₙ) standing for
/// (σ^i₁, …, σ^iₙ), with i₁ the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub order: usize,
    values: Vec<Poly<Rat>>,
}

impl Cochain {
    pub fn from_fn(a: &CyclicAction, degree: usize, f: impl Fn(&[usize]) -> Poly<Rat>) -> Self {
        let len = a.order.pow(degree as u32);
        let values = (0..len).map(|k| f(&Self::digits(k, a.order, degree))).collect();
        Cochain { degree, order: a.order, values }
    }

    pub fn zero(a: &CyclicAction, degree: usize) -> Self {
        Self::from_fn(a, degree, |_| Poly::zero(&a.table))
    }

    /// The 0-cochain with value m.
    pub fn constant(a: &CyclicAction, m: Poly<Rat>) -> Self {
        Cochain { degree: 0, order: a.order, values: vec![m] }
    }

    /// A 1-cochain from its values on 1, σ, σ², ….
    pub fn from_values(a: &CyclicAction, values: Vec<Poly<Rat>>) -> AlgResult<Self> {
        if values.len() != a.order {
            return Err(AlgebraError::Other(format!("expected {} values, got {}", a.order, values.len())));
        }
        Ok(Cochain { degree: 1, order: a.order, values })
    }

    fn digits(mut k: usize, order: usize, degree: usize) -> Vec<usize> {
        let mut d = vec![0; degree];
        for slot in d.iter_mut().rev() {
            *slot = k % order;
            k /= order;
        }
        d
    }

    fn index(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &i| acc * self.order + i % self.order)
    }

    /// φ(σ^i₁, …, σ^iₙ).
    pub fn get(&self, args: &[usize]) -> &Poly<Rat> {
        &self.values[self.index(args)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        (0..self.values.len()).all(|k| {
            let d = Self::digits(k, self.order, self.degree);
            !d.contains(&0) || self.values[k].is_zero()
        })
    }

    fn check(&self, other: &Cochain) -> AlgResult<()> {
        if self.order != other.order || self.degree != other.degree {
            return Err(AlgebraError::Other(format!(
                "cochain shapes differ: degree {} on C{} vs degree {} on C{}",
                self.degree, self.order, other.degree, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> AlgResult<Cochain> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> AlgResult<Cochain> {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        Cochain { values: self.values.iter().map(|v| v.scale(c)).collect(), ..self.clone() }
    }

    /// Pointwise product with a module element (cup with an invariant 0-cochain).
    pub fn times(&self, m: &Poly<Rat>) -> Cochain {
        Cochain { values: self.values.iter().map(|v| v.mul(m)).collect(), ..self.clone() }
    }

    /// The values at (σ^i, σ, …) needed by the comparison map, as raw polynomials.
    fn values(&self) -> &[Poly<Rat>] {
        &self.values
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in 0..self.values.len() {
            let d = Cochain::digits(k, self.order, self.degree);
            if d.contains(&0) && self.values[k].is_zero() {
                continue;
            }
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            let args: Vec<String> = d.iter().map(|i| format!("s^{i}")).collect();
            write!(f, "({}) -> {}", args.join(","), self.values[k])?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn same_group(a: &CyclicAction, c: &Cochain) -> AlgResult<()> {
    if a.order != c.order {
        return Err(AlgebraError::Other(format!("cochain on C{} used with C{}", c.order, a.order)));
    }
    Ok(())
}

/// The bar coboundary
/// (δφ)(g₁, …, gₙ₊₁) = g₁φ(g₂, …) + Σ (−1)ⁱ φ(…, gᵢgᵢ₊₁, …) + (−1)ⁿ⁺¹ φ(g₁, …, gₙ).
///
/// In degree one this is g₁φ(g₂) − φ(g₁g₂) + φ(g₁).
pub fn coboundary(a: &CyclicAction, phi: &Cochain) -> AlgResult<Cochain> {
    same_group(a, phi)?;
    let n = phi.degree;
    Ok(Cochain::from_fn(a, n + 1, |g| {
        let mut acc = a.act(g[0], phi.get(&g[1..]));
        for i in 1..=n {
            let mut args: Vec<usize> = Vec::with_capacity(n);
            args.extend_from_slice(&g[..i - 1]);
            args.push((g[i - 1] + g[i]) % a.order);
            args.extend_from_slice(&g[i + 1..]);
            let term = phi.get(&args);
            acc = if i % 2 == 0 { acc.add(term) } else { acc.sub(term) };
        }
        let last = phi.get(&g[..n]);
        if n.is_multiple_of(2) {
            acc.sub(last)
        } else {
            acc.add(last)
        }
    }))
}

/// The cup product (φ ∪ ψ)(g₁, …) = ψ(g₁, …, g_q) · (g₁⋯g_q)φ(g_{q+1}, …).
///
/// For 1-cochains this is (g₁φ(g₂))ψ(g₁).
pub fn cup(a: &CyclicAction, phi: &Cochain, psi: &Cochain) -> AlgResult<Cochain> {
    same_group(a, phi)?;
    same_group(a, psi)?;
    let (p, q) = (phi.degree, psi.degree);
    Ok(Cochain::from_fn(a, p + q, |g| {
        let shift: usize = g[..q].iter().sum();
        psi.get(&g[..q]).mul(&a.act(shift, phi.get(&g[q..])))
    }))
}

/// Whether a normalized cocycle of positive degree is a coboundary of a
/// normalized cochain with 2-local coefficients, on the weight-w piece.
pub fn is_coboundary_2local(a: &CyclicAction, z: &Cochain, w: i64) -> AlgResult<bool> {
    same_group(a, z)?;
    if z.degree == 0 {
        return Ok(z.is_zero());
    }
    let basis = a.basis(w);
    let n = z.degree;
    let flatten = |c: &Cochain| -> AlgResult<Vec<Rat>> {
        let mut out = Vec::new();
        for k in 0..c.values().len() {
            if !Cochain::digits(k, a.order, n).contains(&0) {
                out.extend(a.coordinates(&c.values()[k], w)?);
            }
        }
        Ok(out)
    };
    // Unknowns: normalized (n−1)-cochains with values in the weight-w piece.
    let slots: Vec<Vec<usize>> = (0..a.order.pow(n as u32 - 1))
        .map(|k| Cochain::digits(k, a.order, n - 1))
        .filter(|d| !d.contains(&0))
        .collect();
    let mut columns = Vec::new();
    for slot in &slots {
        for b in &basis {
            let unit = Cochain::from_fn(a, n - 1, |g| if g == slot.as_slice() { b.clone() } else { Poly::zero(&a.table) });
            columns.push(flatten(&coboundary(a, &unit)?)?);
        }
    }
    let rhs = flatten(z)?;
    if columns.is_empty() {
        return Ok(rhs.iter().all(Zero::is_zero));
    }
    Ok(solvable_2local(&columns, &rhs))
}

/// The comparison from bar cocycles to the periodic resolution in degrees ≤ 2:
/// m ↦ m, φ ↦ φ(σ), f ↦ Σᵢ f(σⁱ, σ).
pub fn to_periodic(a: &CyclicAction, z: &Cochain, w: i64) -> AlgResult<Vec<Rat>> {
    same_group(a, z)?;
    let v = match z.degree {
        0 => z.get(&[]).clone(),
        1 => z.get(&[1]).clone(),
        2 => (0..a.order).fold(Poly::zero(&a.table), |acc, i| acc.add(z.get(&[i, 1]))),
        d => return Err(AlgebraError::Other(format!("comparison map not implemented in degree {d}"))),
    };
    a.coordinates(&v, w)
}

/// A named class with its bidegree (t − s, s) and a representing cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub name: String,
    /// (t − s, s).
    pub bidegree: (i64, i64),
    /// Polynomial weight of the coefficient module (t = 2·weight).
    pub weight: i64,
    pub representative: Cochain,
}

fn xy(src: &str) -> Poly<Rat> {
    crate::exact_algebra::parse_poly(&XY, src).expect("polynomial in x, y")
}

/// η, ν, γ as tables of values on 1, σ, σ², σ³.
pub const ONE_COCYCLES: [(&str, i64, [&str; 4]); 3] = [
    ("η", 1, ["0", "x", "x + y", "y"]),
    ("ν", 2, ["0", "x*y", "0", "x*y"]),
    ("γ", 3, ["0", "x^3", "x^3 + y^3", "y^3"]),
];

/// The invariants b₂, b₄, δ of ℤ[x, y] under C₄.
pub const INVARIANTS: [(&str, &str); 3] = [("b2", "x^2 + y^2"), ("b4", "x^3*y - x*y^3"), ("δ", "x^2*y^2")];

/// The 2-cocycle β(σⁱ, σʲ) = 1 iff i, j ≠ 0 and i + j ≥ 4.
pub fn beta_cocycle() -> Cochain {
    Cochain::from_fn(&C4, 2, |g| {
        let v = i64::from(g[0] != 0 && g[1] != 0 && g[0] + g[1] >= 4);
        Poly::from_int(&XY, v)
    })
}

/// The named generators η, ν, γ, ξ, β, b₂, b₄, δ of the E₂-term.
pub fn c4_class(name: &str) -> AlgResult<CohomologyClass> {
    let a = &*C4;
    let class = |name: &str, w: i64, s: i64, c: Cochain| CohomologyClass {
        name: name.to_string(),
        bidegree: (2 * w - s, s),
        weight: w,
        representative: c,
    };
    if let Some((n, w, vals)) = ONE_COCYCLES.iter().find(|c| c.0 == name) {
        return Ok(class(n, *w, 1, Cochain::from_values(a, vals.iter().map(|v| xy(v)).collect())?));
    }
    if let Some((n, src)) = INVARIANTS.iter().find(|c| c.0 == name) {
        let p = xy(src);
        let w = p.weight()?.unwrap_or(0);
        return Ok(class(n, w, 0, Cochain::constant(a, p)));
    }
    match name {
        "β" => Ok(class("β", 0, 2, beta_cocycle())),
        "ξ" => Ok(class("ξ", 4, 2, beta_cocycle().times(&xy("x^2*y^2")))),
        "1" => Ok(class("1", 0, 0, Cochain::constant(a, Poly::one(&XY)))),
        _ => Err(AlgebraError::UnknownGenerator(name.to_string())),
    }
}

/// Evaluate a sum of products of named classes, such as `b2^2*ξ + 2*δ*η*γ`.
///
/// Products are taken left to right with the cup product; invariant factors
/// multiply pointwise. `0` denotes the zero class of the given degree and weight.
pub fn eval_class_expr(src: &str, s: usize, w: i64) -> AlgResult<Cochain> {
    let a = &*C4;
    let mut total = Cochain::zero(a, s);
    let cleaned = src.replace(' ', "").replace('-', "+-");
    for term in cleaned.split('+').filter(|t| !t.is_empty()) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term),
        };
        let mut coeff = sign;
        let mut acc: Option<Cochain> = None;
        let mut inv = Poly::one(&XY);
        let mut weight = 0;
        for factor in body.split('*') {
            if let Ok(n) = factor.parse::<i64>() {
                coeff *= n;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|e| AlgebraError::Parse(e.to_string()))?),
                None => (factor, 1),
            };
            let c = c4_class(name)?;
            for _ in 0..exp {
                weight += c.weight;
                if c.bidegree.1 == 0 {
                    inv = inv.mul(c.representative.get(&[]));
                } else {
                    acc = Some(match acc {
                        None => c.representative.clone(),
                        Some(x) => cup(a, &x, &c.representative)?,
                    });
                }
            }
        }
        if coeff == 0 {
            continue;
        }
        let c = acc.unwrap_or_else(|| Cochain::constant(a, Poly::one(&XY)));
        if c.degree != s || weight != w {
            return Err(AlgebraError::Other(format!(
                "term `{term}` has degree {} and weight {weight}, expected {s} and {w}",
                c.degree
            )));
        }
        total = total.add(&c.times(&inv).scale(&Rat::from_integer(coeff.into())))?;
    }
    Ok(total)
}

/// The relations of the E₂-term as (display, lhs, rhs, s, weight).
pub const E2_RELATIONS: [(&str, &str, &str, usize, i64); 15] = [
    ("b4^2 = b2^2 δ - 4δ^2", "b4^2", "b2^2*δ - 4*δ^2", 0, 8),
    ("2η = 0", "2*η", "0", 1, 1),
    ("2ν = 0", "2*ν", "0", 1, 2),
    ("2γ = 0", "2*γ", "0", 1, 3),
    ("4ξ = 0", "4*ξ", "0", 2, 4),
    ("ν^2 = 2ξ", "ν^2", "2*ξ", 2, 4),
    ("γ^2 = (b2^2 + δ)η^2", "γ^2", "b2^2*η^2 + δ*η^2", 2, 6),
    ("ην = 0", "η*ν", "0", 2, 3),
    ("b2 ν = 0", "b2*ν", "0", 1, 4),
    ("b2 ξ = δη^2", "b2*ξ", "δ*η^2", 2, 6),
    ("νγ = 0", "ν*γ", "0", 2, 5),
    ("b4 ξ = b2^2 ξ + 2δξ + δηγ", "b4*ξ", "b2^2*ξ + 2*δ*ξ + δ*η*γ", 2, 8),
    ("b4 ν = 0", "b4*ν", "0", 1, 6),
    ("b4 γ = (b4 + δ)b2 η", "b4*γ", "b4*b2*η + δ*b2*η", 1, 7),
    ("γ b2 = η(b2^2 + b4)", "γ*b2", "η*b2^2 + η*b4", 1, 5),
];

/// The displayed 2-cocycle representing ηγ + β(b₄ + b₂² − 2δ), keyed (g₁, g₂).
pub const PSI_TABLE: [[&str; 4]; 4] = [
    // g₁ = 1
    ["0", "0", "0", "0"],
    // g₁ = σ; g₂ = 1, σ, σ², σ³
    ["0", "x^3*y", "-x^4 + x^3*y", "x^3*y - x*y^3 + y^4"],
    // g₁ = σ²
    ["0", "-x^4 - x*y^3", "-2*x*y^3", "x^4 - x*y^3"],
    // g₁ = σ³
    ["0", "x^4 + x^3*y - x*y^3", "x^4 + x^3*y", "x^4 + x^3*y + y^4"],
];

/// The displayed 1-cochain whose coboundary is the table above.
pub const PHI_WITNESS: [&str; 4] = ["0", "-x*y^3", "-x*y^3", "x^4 - x*y^3"];

/// Outcome of the explicit coboundary witness for b₄ξ = b₂²ξ + 2δξ + δηγ.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    /// ηγ + β(b₄ + b₂² − 2δ) equals the displayed table entrywise.
    pub table_matches: bool,
    /// δφ equals the displayed table.
    pub coboundary_matches: bool,
}

/// Check the displayed cocycle and its displayed primitive.
pub fn b4_xi_witness() -> AlgResult<WitnessCheck> {
    let a = &*C4;
    let computed = eval_class_expr("η*γ + b4*β + b2^2*β - 2*δ*β", 2, 4)?;
    let table = Cochain::from_fn(a, 2, |g| xy(PSI_TABLE[g[0]][g[1]]));
    let phi = Cochain::from_values(a, PHI_WITNESS.iter().map(|v| xy(v)).collect())?;
    Ok(WitnessCheck { table_matches: computed == table, coboundary_matches: coboundary(a, &phi)? == table })
}

/// The check of one relation.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// (t − s, s) at the native weight.
    pub bidegree: (i64, i64),
    /// Weights at which the relation, multiplied by invariant monomials, was checked.
    pub weights: Vec<i64>,
    /// Both sides are cocycles at every weight checked.
    pub cocycles: bool,
    /// The first weight at which the relation failed, if any.
    pub failure: Option<i64>,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.cocycles && self.failure.is_none()
    }
}

/// Additive comparison between the periodic resolution and the summands.
#[derive(Clone, Debug, Serialize)]
pub struct RankCheck {
    pub bidegrees: usize,
    pub mismatches: Vec<String>,
}

/// Everything checked about the E₂-term.
#[derive(Clone, Debug, Serialize)]
pub struct E2Report {
    pub relations: Vec<RelationCheck>,
    pub witness: WitnessCheck,
    pub ranks: RankCheck,
}

impl E2Report {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationCheck::holds)
            && self.witness.table_matches
            && self.witness.coboundary_matches
            && self.ranks.mismatches.is_empty()
    }
}

/// Monomials b₂ⁱb₄ᵉδᵏ (e ≤ 1) of weight w, as (name, polynomial).
pub fn invariant_monomials(w: i64) -> Vec<(String, Poly<Rat>)> {
    let mut out = Vec::new();
    if w < 0 || w % 2 != 0 {
        return out;
    }
    let (b2, b4, d) = (xy(INVARIANTS[0].1), xy(INVARIANTS[1].1), xy(INVARIANTS[2].1));
    for k in (0..=w / 4).rev() {
        for e in 0..=1 {
            let rest = w - 4 * k - 4 * e;
            if rest < 0 || rest % 2 != 0 {
                continue;
            }
            let i = rest / 2;
            let mut parts = Vec::new();
            let mut push = |n: &str, e: i64| match e {
                0 => {}
                1 => parts.push(n.to_string()),
                _ => parts.push(format!("{n}^{e}")),
            };
            push("b2", i);
            push("b4", e);
            push("δ", k);
            let p = b2.pow(i as u32).mul(&b4.pow(e as u32)).mul(&d.pow(k as u32));
            out.push((parts.join("*"), p));
        }
    }
    out
}

/// Check a relation at its native weight and after multiplying by every
/// invariant monomial up to `max_weight`.
pub fn check_relation(index: usize, max_weight: i64) -> AlgResult<RelationCheck> {
    let a = &*C4;
    let (display, lhs, rhs, s, w0) = E2_RELATIONS[index];
    let l = eval_class_expr(lhs, s, w0)?;
    let r = eval_class_expr(rhs, s, w0)?;
    let diff = l.sub(&r)?;
    let mut weights = Vec::new();
    let mut cocycles = true;
    let mut failure = None;
    for extra in 0..=(max_weight - w0).max(0) {
        for (_, m) in invariant_monomials(extra) {
            let w = w0 + extra;
            let z = diff.times(&m);
            if s > 0 {
                cocycles &= coboundary(a, &l.times(&m))?.is_zero() && coboundary(a, &r.times(&m))?.is_zero();
            }
            if !is_coboundary_2local(a, &z, w)? && failure.is_none() {
                failure = Some(w);
            }
            if weights.last() != Some(&w) {
                weights.push(w);
            }
        }
    }
    Ok(RelationCheck { relation: display.to_string(), bidegree: (2 * w0 - s as i64, s as i64), weights, cocycles, failure })
}

/// Compare the periodic-resolution groups with the summandwise closed forms
/// for t − s ≤ max_stem and s ≤ max_s.
pub fn rank_check(a: &CyclicAction, max_stem: i64, max_s: usize) -> AlgResult<RankCheck> {
    let mut bidegrees = 0;
    let mut mismatches = Vec::new();
    for s in 0..=max_s {
        let mut w = 0;
        while 2 * w - s as i64 <= max_stem {
            let direct = a.cohomology_group(s, w);
            let summed = a.summandwise(s, w)?;
            bidegrees += 1;
            if direct != summed {
                mismatches.push(format!("s={s} t={}: direct {direct}, summandwise {summed}", 2 * w));
            }
            w += 1;
        }
    }
    Ok(RankCheck { bidegrees, mismatches })
}

/// Verify every E₂ relation up to `max_weight`, the explicit witness, and the
/// additive structure for t − s ≤ 48, s ≤ 4.
pub fn verify_e2_relations(max_weight: i64) -> AlgResult<E2Report> {
    let relations = (0..E2_RELATIONS.len()).map(|i| check_relation(i, max_weight)).collect::<AlgResult<_>>()?;
    Ok(E2Report { relations, witness: b4_xi_witness()?, ranks: rank_check(&C4, 48, 4)? })
}

/// One nonzero group of the E₂-term with named generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct E2Entry {
    pub stem: i64,
    pub s: usize,
    pub t: i64,
    pub group: String,
    pub generators: Vec<String>,
}

/// Class parts used to name generators in filtrations one and two.
const NAMING_PARTS: [&[&str]; 3] = [
    &["1"],
    &["η", "ν", "γ"],
    &["ξ", "η^2", "η*ν", "ν^2", "η*γ", "ν*γ", "γ^2", "β"],
];

fn part_weight(part: &str) -> AlgResult<(usize, i64)> {
    let mut s = 0;
    let mut w = 0;
    for f in part.split('*') {
        let (n, e) = f.split_once('^').map_or((f, 1), |(n, e)| (n, e.parse::<i64>().unwrap_or(1)));
        let c = c4_class(n)?;
        s += c.bidegree.1 as usize * e as usize;
        w += c.weight * e;
    }
    Ok((s, w))
}

/// Hˢ in degree t with generators chosen greedily among products of the named
/// classes (s ≤ 2) or as βᵏ-multiples of lower classes (s ≥ 3).
pub fn cohomology(s: usize, t: i64) -> AlgResult<E2Entry> {
    if t % 2 != 0 {
        return Ok(E2Entry { stem: t - s as i64, s, t, group: "0".into(), generators: Vec::new() });
    }
    let a = &*C4;
    let w = t / 2;
    let group = a.cohomology_group(s, w);
    let entry = |generators| E2Entry { stem: t - s as i64, s, t, group: group.to_string(), generators };
    if group.is_zero() {
        return Ok(entry(Vec::new()));
    }
    if s >= 3 {
        let k = (s - 1) / 2;
        let lower = cohomology(s - 2 * k, t)?;
        let prefix = if k == 1 { "β".to_string() } else { format!("β^{k}") };
        let name = |g: &String| match g.as_str() {
            "β" => format!("β^{}", k + 1),
            _ => format!("{prefix}*{g}"),
        };
        return Ok(entry(lower.generators.iter().map(name).collect()));
    }
    let n = a.basis(w).len();
    let sigma = a.sigma_matrix(w);
    let ident = |i: usize, j: usize| if i == j { Rat::one() } else { Rat::zero() };
    let minus_one: Matrix = (0..n).map(|i| (0..n).map(|j| &sigma[i][j] - ident(i, j)).collect()).collect();
    let mut norm: Matrix = vec![vec![Rat::zero(); n]; n];
    for k in 0..a.order {
        for (j, b) in a.basis(w).iter().enumerate() {
            for (i, c) in a.coordinates(&a.act(k, b), w)?.into_iter().enumerate() {
                norm[i][j] += c;
            }
        }
    }
    let (cycles, mut boundaries) = match s {
        0 => (minus_one, vec![Vec::new(); n]),
        1 => (norm, minus_one),
        _ => (minus_one, norm),
    };
    let mut size = group.size();
    let mut names = Vec::new();
    'parts: for part in NAMING_PARTS[s] {
        let (_, pw) = part_weight(part)?;
        for (mname, m) in invariant_monomials(w - pw) {
            let z = eval_class_expr(part, s, pw)?.times(&m);
            let v = to_periodic(a, &z, w)?;
            for (row, x) in boundaries.iter_mut().zip(v) {
                row.push(x);
            }
            let k = boundaries[0].len();
            let q = subquotient_2local(&cycles, n, &boundaries, k);
            if q.size() < size {
                size = q.size();
                let name = match (mname.as_str(), *part) {
                    ("", p) => p.to_string(),
                    (m, "1") => m.to_string(),
                    (m, p) => format!("{m}*{p}"),
                };
                names.push(name);
                if q.is_zero() {
                    break 'parts;
                }
            } else {
                for row in boundaries.iter_mut() {
                    row.pop();
                }
            }
        }
    }
    if size != (0, 0) {
        names.push("<incomplete>".into());
    }
    Ok(entry(names))
}

/// The nonzero E₂ groups with t ≤ 2·max_weight and s ≤ max_s, sorted by (stem, s).
pub fn e2_chart(max_weight: i64, max_s: usize) -> AlgResult<Vec<E2Entry>> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        for s in 0..=max_s {
            let e = cohomology(s, 2 * w)?;
            if e.group != "0" {
                out.push(e);
            }
        }
    }
    out.sort_by_key(|e| (e.stem, e.s));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(t: i64) -> Vec<String> {
        decompose_action(t).unwrap().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn decompositions() {
        assert_eq!(labels(2), ["Psi{x}"]);
        assert_eq!(labels(4), ["Tau{x^2}", "Rneg{x*y}"]);
        assert_eq!(labels(8), ["Tau{x^4}", "Tau{x^3*y}", "R{x^2*y^2}"]);
        assert!(decompose_action(3).is_err());
    }

    #[test]
    fn summand_closed_forms_match_resolution() {
        for kind in [SummandKind::R, SummandKind::Rneg, SummandKind::Tau, SummandKind::Psi] {
            for s in 0..=24 {
                assert_eq!(periodic_cohomology(&kind.matrix(), 4, s), kind.cohomology(4, s), "{kind:?} s={s}");
            }
        }
        for kind in [SummandKind::R, SummandKind::Rneg] {
            for s in 0..=24 {
                assert_eq!(periodic_cohomology(&kind.matrix(), 2, s), kind.cohomology(2, s));
            }
        }
    }

    #[test]
    fn named_examples() {
        let h = cohomology(2, 0).unwrap();
        assert_eq!((h.group.as_str(), h.generators.clone()), ("Z/4", vec!["β".to_string()]));
        let h = cohomology(1, 2).unwrap();
        assert_eq!((h.group.as_str(), h.generators.clone()), ("Z/2", vec!["η".to_string()]));
        let h = cohomology(0, 4).unwrap();
        assert_eq!((h.group.as_str(), h.generators.clone()), ("Z", vec!["b2".to_string()]));
    }

    #[test]
    fn displayed_cocycles() {
        let a = &*C4;
        for name in ["η", "ν", "γ", "β", "ξ"] {
            let c = c4_class(name).unwrap();
            assert!(c.representative.is_normalized());
            assert!(coboundary(a, &c.representative).unwrap().is_zero(), "{name}");
        }
        assert_eq!(c4_class("η").unwrap().bidegree, (1, 1));
        assert_eq!(c4_class("ν").unwrap().bidegree, (3, 1));
        assert_eq!(c4_class("γ").unwrap().bidegree, (5, 1));
        assert_eq!(c4_class("ξ").unwrap().bidegree, (6, 2));
        let zero = Cochain::zero(a, 1);
        assert!(cup(a, &zero, &c4_class("γ").unwrap().representative).unwrap().is_zero());
        let w = b4_xi_witness().unwrap();
        assert!(w.table_matches && w.coboundary_matches);
    }

    #[test]
    fn relations_hold() {
        for i in 0..E2_RELATIONS.len() {
            let c = check_relation(i, 10).unwrap();
            assert!(c.holds(), "{c:?}");
        }
    }

    #[test]
    fn false_relations_fail() {
        let a = &*C4;
        assert!(!is_coboundary_2local(a, &eval_class_expr("η", 1, 1).unwrap(), 1).unwrap());
        assert!(!is_coboundary_2local(a, &eval_class_expr("2*ξ", 2, 4).unwrap(), 4).unwrap());
        assert!(!is_coboundary_2local(a, &eval_class_expr("η*γ", 2, 4).unwrap(), 4).unwrap());
    }

    #[test]
    fn ranks_match_summands() {
        let r = rank_check(&C4, 24, 4).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        let r = rank_check(&C2, 24, 4).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }

    #[test]
    fn chart_is_fully_named() {
        for e in e2_chart(12, 4).unwrap() {
            assert!(!e.generators.iter().any(|g| g == "<incomplete>"), "{e:?}");
        }
    }
}
