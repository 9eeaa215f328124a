//! Weierstrass curves over symbolic rings.
//!
//! Coordinate changes use the substitution x = λ⁻²x′ + r,
//! y = λ⁻³y′ + λ⁻²sx′ + t, under which the universal transformation
//! (r, s, t, 1) moves (a₁, a₂, a₃) to (a₁+2s, a₂−sa₁+3r−s², a₃+ra₁+2t).

use crate::exact_algebra::{rat, AlgResult, AlgebraError, Coeff, GeneratorTable, Poly, Rat, RationalFunction, RingElem};
use crate::rings::{QQ, TATE};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

/// A curve y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<E> {
    pub a1: E,
    pub a2: E,
    pub a3: E,
    pub a4: E,
    pub a6: E,
}

/// The classical invariants of a Weierstrass curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants<E> {
    pub b2: E,
    pub b4: E,
    pub b6: E,
    pub b8: E,
    pub c4: E,
    pub c6: E,
    pub delta: E,
}

impl<E: RingElem> WeierstrassCurve<E> {
    pub fn new([a1, a2, a3, a4, a6]: [E; 5]) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    pub fn coefficients(&self) -> [E; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    /// b₂, b₄, b₆, b₈, c₄, c₆ and Δ.
    pub fn invariants(&self) -> Invariants<E> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.times(a1).plus(&a2.scaled(4));
        let b4 = a1.times(a3).plus(&a4.scaled(2));
        let b6 = a3.times(a3).plus(&a6.scaled(4));
        let b8 = a1
            .times(a1)
            .times(a6)
            .plus(&a2.times(a6).scaled(4))
            .minus(&a1.times(a3).times(a4))
            .plus(&a2.times(a3).times(a3))
            .minus(&a4.times(a4));
        let c4 = b2.times(&b2).minus(&b4.scaled(24));
        let c6 = b2
            .pow_u(3)
            .negated()
            .plus(&b2.times(&b4).scaled(36))
            .minus(&b6.scaled(216));
        let delta = b2
            .times(&b2)
            .times(&b8)
            .negated()
            .minus(&b4.pow_u(3).scaled(8))
            .minus(&b6.times(&b6).scaled(27))
            .plus(&b2.times(&b4).times(&b6).scaled(9));
        Invariants { b2, b4, b6, b8, c4, c6, delta }
    }

    pub fn discriminant(&self) -> E {
        self.invariants().delta
    }

    /// Left side minus right side of the curve equation at (x, y).
    pub fn equation_at(&self, x: &E, y: &E) -> E {
        let lhs = y.times(y).plus(&self.a1.times(x).times(y)).plus(&self.a3.times(y));
        let rhs = x
            .pow_u(3)
            .plus(&self.a2.times(x).times(x))
            .plus(&self.a4.times(x))
            .plus(&self.a6);
        lhs.minus(&rhs)
    }

    pub fn contains(&self, p: &CurvePoint<E>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.equation_at(x, y).is_zero_elem(),
        }
    }
}

/// The coordinate change φ_{r,s,t,λ}.
#[derive(Clone, Debug, PartialEq)]
pub struct Transformation<E> {
    pub r: E,
    pub s: E,
    pub t: E,
    pub lambda: E,
}

impl<E: RingElem> Transformation<E> {
    pub fn new(r: E, s: E, t: E, lambda: E) -> Self {
        Transformation { r, s, t, lambda }
    }

    /// The identity (0, 0, 0, 1) in the ring of `like`.
    pub fn identity(like: &E) -> Self {
        Transformation::new(like.zero_like(), like.zero_like(), like.zero_like(), like.one_like())
    }

    fn lambda_inverse(&self) -> AlgResult<E> {
        self.lambda
            .one_like()
            .try_div(&self.lambda)
            .ok_or_else(|| AlgebraError::NotAUnit(self.lambda.to_string()))
    }

    /// The transformation equal to applying `self` and then `next`.
    pub fn then(&self, next: &Self) -> AlgResult<Self> {
        let li = self.lambda_inverse()?;
        let li2 = li.times(&li);
        let li3 = li2.times(&li);
        Ok(Transformation {
            r: self.r.plus(&li2.times(&next.r)),
            s: self.s.plus(&li.times(&next.s)),
            t: self
                .t
                .plus(&li3.times(&next.t))
                .plus(&li2.times(&self.s).times(&next.r)),
            lambda: self.lambda.times(&next.lambda),
        })
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> AlgResult<Self> {
        let li = self.lambda_inverse()?;
        let l2 = self.lambda.times(&self.lambda);
        let l3 = l2.times(&self.lambda);
        Ok(Transformation {
            r: l2.times(&self.r).negated(),
            s: self.lambda.times(&self.s).negated(),
            t: l3.times(&self.s.times(&self.r).minus(&self.t)),
            lambda: li,
        })
    }

    /// New coordinates of a point under the change of variables.
    pub fn move_point(&self, p: &CurvePoint<E>) -> CurvePoint<E> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let l2 = self.lambda.times(&self.lambda);
                let l3 = l2.times(&self.lambda);
                let xn = l2.times(&x.minus(&self.r));
                let yn = l3
                    .times(&y.minus(&self.t))
                    .minus(&self.lambda.times(&self.s).times(&xn));
                CurvePoint::Affine(xn, yn)
            }
        }
    }
}

/// Coefficients of the curve after the change of variables φ.
pub fn transform<E: RingElem>(c: &WeierstrassCurve<E>, phi: &Transformation<E>) -> AlgResult<WeierstrassCurve<E>> {
    phi.lambda_inverse()?;
    let (r, s, t, l) = (&phi.r, &phi.s, &phi.t, &phi.lambda);
    let (a1, a2, a3, a4, a6) = (&c.a1, &c.a2, &c.a3, &c.a4, &c.a6);
    let n1 = a1.plus(&s.scaled(2));
    let n2 = a2.minus(&s.times(a1)).plus(&r.scaled(3)).minus(&s.times(s));
    let n3 = a3.plus(&r.times(a1)).plus(&t.scaled(2));
    let n4 = a4
        .minus(&s.times(a3))
        .plus(&r.times(a2).scaled(2))
        .minus(&t.plus(&r.times(s)).times(a1))
        .plus(&r.times(r).scaled(3))
        .minus(&s.times(t).scaled(2));
    let n6 = a6
        .plus(&r.times(a4))
        .plus(&r.times(r).times(a2))
        .plus(&r.pow_u(3))
        .minus(&t.times(a3))
        .minus(&t.times(t))
        .minus(&r.times(t).times(a1));
    Ok(WeierstrassCurve {
        a1: l.times(&n1),
        a2: l.pow_u(2).times(&n2),
        a3: l.pow_u(3).times(&n3),
        a4: l.pow_u(4).times(&n4),
        a6: l.pow_u(6).times(&n6),
    })
}

/// A point of a curve: the identity, or affine coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<E> {
    Infinity,
    Affine(E, E),
}

impl<E: RingElem> CurvePoint<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// The inverse −P = (x, −y − a₁x − a₃).
pub fn negate_point<E: RingElem>(c: &WeierstrassCurve<E>, p: &CurvePoint<E>) -> CurvePoint<E> {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => {
            CurvePoint::Affine(x.clone(), y.negated().minus(&c.a1.times(x)).minus(&c.a3))
        }
    }
}

/// Chord-tangent sum of two points; the case split is decided by exact equality.
pub fn add_points<E: RingElem>(
    c: &WeierstrassCurve<E>,
    p: &CurvePoint<E>,
    q: &CurvePoint<E>,
) -> AlgResult<CurvePoint<E>> {
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return Ok(q.clone()),
        (_, CurvePoint::Infinity) => return Ok(p.clone()),
        (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let (slope, nu) = if x1 == x2 {
        let mirror = y1.plus(y2).plus(&c.a1.times(x2)).plus(&c.a3);
        if mirror.is_zero_elem() {
            return Ok(CurvePoint::Infinity);
        }
        if y1 != y2 {
            return Err(AlgebraError::Other("degenerate symbolic coincidence in addition".into()));
        }
        let den = y1.scaled(2).plus(&c.a1.times(x1)).plus(&c.a3);
        let lnum = x1
            .times(x1)
            .scaled(3)
            .plus(&c.a2.times(x1).scaled(2))
            .plus(&c.a4)
            .minus(&c.a1.times(y1));
        let nnum = x1
            .pow_u(3)
            .negated()
            .plus(&c.a4.times(x1))
            .plus(&c.a6.scaled(2))
            .minus(&c.a3.times(y1));
        (
            lnum.try_div(&den).ok_or(AlgebraError::DivisionByZero)?,
            nnum.try_div(&den).ok_or(AlgebraError::DivisionByZero)?,
        )
    } else {
        let den = x2.minus(x1);
        (
            y2.minus(y1).try_div(&den).ok_or(AlgebraError::DivisionByZero)?,
            y1.times(x2).minus(&y2.times(x1)).try_div(&den).ok_or(AlgebraError::DivisionByZero)?,
        )
    };
    let x3 = slope
        .times(&slope)
        .plus(&c.a1.times(&slope))
        .minus(&c.a2)
        .minus(x1)
        .minus(x2);
    let y3 = slope.plus(&c.a1).times(&x3).negated().minus(&nu).minus(&c.a3);
    Ok(CurvePoint::Affine(x3, y3))
}

/// The multiple [n]P, by double-and-add.
pub fn multiply_point<E: RingElem>(c: &WeierstrassCurve<E>, n: i64, p: &CurvePoint<E>) -> AlgResult<CurvePoint<E>> {
    let base = if n < 0 { negate_point(c, p) } else { p.clone() };
    let mut k = n.unsigned_abs();
    let mut acc = CurvePoint::Infinity;
    let mut pow = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = add_points(c, &acc, &pow)?;
        }
        k >>= 1;
        if k > 0 {
            pow = add_points(c, &pow, &pow)?;
        }
    }
    Ok(acc)
}

/// Division polynomials of a curve over a polynomial ring, in that ring extended by x and y.
pub struct DivisionPolynomials<C: Coeff> {
    table: Arc<GeneratorTable>,
    curve: WeierstrassCurve<Poly<C>>,
    /// g_n = ψ_n for odd n and ψ_n/ψ₂ for even n, all in the x-polynomial ring.
    g: Vec<Poly<C>>,
}

impl<C: Coeff> DivisionPolynomials<C> {
    /// Compute ψ₀, …, ψ_n.
    pub fn new(c: &WeierstrassCurve<Poly<C>>, n: usize) -> AlgResult<Self> {
        let base = c.a1.table();
        let table = base.extended(&[("x", 2, false), ("y", 3, false)]);
        let lift = |p: &Poly<C>| p.embed(&table);
        let curve = WeierstrassCurve::new([lift(&c.a1)?, lift(&c.a2)?, lift(&c.a3)?, lift(&c.a4)?, lift(&c.a6)?]);
        let inv = curve.invariants();
        let x = Poly::var(&table, "x")?;
        let f = x
            .pow(3)
            .scale(&C::from_i64(4))
            .add(&inv.b2.mul(&x.pow(2)))
            .add(&inv.b4.mul(&x).scale(&C::from_i64(2)))
            .add(&inv.b6);
        let f2 = f.mul(&f);
        let k = |n: i64| C::from_i64(n);
        let g3 = x
            .pow(4)
            .scale(&k(3))
            .add(&inv.b2.mul(&x.pow(3)))
            .add(&inv.b4.mul(&x.pow(2)).scale(&k(3)))
            .add(&inv.b6.mul(&x).scale(&k(3)))
            .add(&inv.b8);
        let g4 = x
            .pow(6)
            .scale(&k(2))
            .add(&inv.b2.mul(&x.pow(5)))
            .add(&inv.b4.mul(&x.pow(4)).scale(&k(5)))
            .add(&inv.b6.mul(&x.pow(3)).scale(&k(10)))
            .add(&inv.b8.mul(&x.pow(2)).scale(&k(10)))
            .add(&inv.b2.mul(&inv.b8).sub(&inv.b4.mul(&inv.b6)).mul(&x))
            .add(&inv.b4.mul(&inv.b8).sub(&inv.b6.mul(&inv.b6)));
        let mut g = vec![Poly::zero(&table), Poly::one(&table), Poly::one(&table), g3, g4];
        while g.len() <= n {
            let idx = g.len();
            let m = idx / 2;
            let next = if idx % 2 == 1 {
                let a = g[m + 2].mul(&g[m].pow(3));
                let b = g[m - 1].mul(&g[m + 1].pow(3));
                if m % 2 == 0 {
                    f2.mul(&a).sub(&b)
                } else {
                    a.sub(&f2.mul(&b))
                }
            } else {
                let a = g[m + 2].mul(&g[m - 1].pow(2));
                let b = g[m - 2].mul(&g[m + 1].pow(2));
                a.sub(&b).mul(&g[m])
            };
            g.push(next);
        }
        g.truncate(n.max(1) + 1);
        Ok(DivisionPolynomials { table, curve, g })
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    /// ψ₂ = 2y + a₁x + a₃.
    pub fn psi2(&self) -> Poly<C> {
        let x = Poly::var(&self.table, "x").expect("x");
        let y = Poly::var(&self.table, "y").expect("y");
        y.scale(&C::from_i64(2)).add(&self.curve.a1.mul(&x)).add(&self.curve.a3)
    }

    /// ψ_n.
    pub fn psi(&self, n: usize) -> Poly<C> {
        if n.is_multiple_of(2) && n > 0 {
            self.psi2().mul(&self.g[n])
        } else {
            self.g[n].clone()
        }
    }

    /// Reduce powers of y above 1 using the curve equation.
    pub fn reduce_y(&self, p: &Poly<C>) -> Poly<C> {
        let yi = self.table.index("y").expect("y");
        let x = Poly::var(&self.table, "x").expect("x");
        let y = Poly::var(&self.table, "y").expect("y");
        let c = &self.curve;
        let y2 = x
            .pow(3)
            .add(&c.a2.mul(&x.pow(2)))
            .add(&c.a4.mul(&x))
            .add(&c.a6)
            .sub(&c.a1.mul(&x).mul(&y))
            .sub(&c.a3.mul(&y));
        let mut cur = p.clone();
        loop {
            let parts = cur.coefficients_in(yi);
            if parts.keys().all(|&e| e < 2) {
                return cur;
            }
            let mut next = Poly::zero(&self.table);
            for (e, coef) in parts {
                let term = if e >= 2 {
                    coef.mul(&y2).mul(&y.pow((e - 2) as u32))
                } else {
                    coef.mul(&y.pow(e as u32))
                };
                next = next.add(&term);
            }
            cur = next;
        }
    }

    /// Evaluate a polynomial in x, y at a point with coordinates in the base ring.
    pub fn eval_at(&self, p: &Poly<C>, x0: &Poly<C>, y0: &Poly<C>) -> AlgResult<Poly<C>> {
        let base = x0.table().clone();
        let xi = self.table.index("x").expect("x");
        let yi = self.table.index("y").expect("y");
        let mut out = Poly::zero(&base);
        for (m, c) in p.terms() {
            let mut rest = m.clone();
            let (ex, ey) = (rest[xi], rest[yi]);
            rest.truncate(base.len());
            let t = Poly::monomial(&base, rest, c.clone())?
                .mul(&x0.pow(ex as u32))
                .mul(&y0.pow(ey as u32));
            out = out.add(&t);
        }
        Ok(out)
    }
}

/// Result of the Tate normal form algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct TateNormalForm<E> {
    pub curve: WeierstrassCurve<E>,
    pub transformation: Transformation<E>,
    /// False if the final rescaling was skipped because a₂ is not a unit.
    pub nonhomogeneous: bool,
}

/// Move P to (0, 0) with horizontal tangent, then rescale so that the y- and
/// x²-coefficients agree, giving T(b, c): y² + (1−c)xy − by = x³ − bx².
pub fn tate_normal_form<E: RingElem>(c: &WeierstrassCurve<E>, p: &CurvePoint<E>) -> AlgResult<TateNormalForm<E>> {
    let (alpha, beta) = match p {
        CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
        CurvePoint::Infinity => return Err(AlgebraError::Other("point at infinity".into())),
    };
    let z = alpha.zero_like();
    let one = alpha.one_like();
    let shift = Transformation::new(alpha, z.clone(), beta, one.clone());
    let c1 = transform(c, &shift)?;
    let slope = c1
        .a4
        .try_div(&c1.a3)
        .ok_or_else(|| AlgebraError::NotAUnit(c1.a3.to_string()))?;
    let shear = Transformation::new(z.clone(), slope, z.clone(), one.clone());
    let c2 = transform(&c1, &shear)?;
    let mut phi = shift.then(&shear)?;
    let scale = if c2.a2.is_zero_elem() { None } else { c2.a2.try_div(&c2.a3) };
    let (curve, nonhomogeneous) = match scale {
        Some(l) => {
            let rescale = Transformation::new(z.clone(), z.clone(), z, l);
            phi = phi.then(&rescale)?;
            (transform(&c2, &rescale)?, true)
        }
        None => (c2, false),
    };
    Ok(TateNormalForm { curve, transformation: phi, nonhomogeneous })
}

/// Tate parameters (b, c) of a curve already in the form T(b, c).
pub fn tate_parameters<E: RingElem>(c: &WeierstrassCurve<E>) -> (E, E) {
    (c.a3.negated(), c.a1.one_like().minus(&c.a1))
}

/// The curve T(b) = [1−b, −b, −b, 0, 0] over ℤ[b].
pub fn tate_curve<C: Coeff>() -> WeierstrassCurve<Poly<C>> {
    let t = &*crate::rings::TATE;
    let b = Poly::var(t, "b").expect("b");
    let z = Poly::zero(t);
    WeierstrassCurve::new([Poly::one(t).sub(&b), b.neg(), b.neg(), z.clone(), z])
}

/// T(b₀) for a rational constant b₀ (or any element of a ring).
pub fn tate_curve_at<E: RingElem>(b: &E) -> WeierstrassCurve<E> {
    let z = b.zero_like();
    WeierstrassCurve::new([b.one_like().minus(b), b.negated(), b.negated(), z.clone(), z])
}

/// The homogeneous Tate curve T¹(a₁, a₂, a₃) = [a₁, a₂, a₃, 0, 0].
pub fn homogeneous_tate<E: RingElem>(a1: &E, a2: &E, a3: &E) -> WeierstrassCurve<E> {
    let z = a1.zero_like();
    WeierstrassCurve::new([a1.clone(), a2.clone(), a3.clone(), z.clone(), z])
}

/// JSON form: the five coefficients as strings.
#[derive(Serialize)]
pub struct CurveJson(pub [String; 5]);

impl<E: RingElem> From<&WeierstrassCurve<E>> for CurveJson {
    fn from(c: &WeierstrassCurve<E>) -> Self {
        CurveJson(c.coefficients().map(|x| x.to_string()))
    }
}

/// Outcome of the Tate normal form round trip over ℚ.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTripReport {
    pub seed: u64,
    pub b_values: Vec<String>,
    /// Perturbations tried per b₀.
    pub perturbations: usize,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.trials == self.b_values.len() * self.perturbations
    }
}

/// Default parameters b₀ for the round trip; none is a root of Δ = b⁵(b² − 11b − 1).
pub fn default_tate_parameters() -> Vec<Rat> {
    [(1, 1), (2, 1), (-1, 1), (3, 1), (1, 2), (-2, 3), (5, 7), (7, 1), (-11, 4), (13, 5)]
        .into_iter()
        .map(|(n, d)| rat(n, d))
        .collect()
}

fn random_rat(rng: &mut impl Rng, nonzero: bool) -> Rat {
    loop {
        let n: i64 = rng.gen_range(-20..=20);
        if !(nonzero && n == 0) {
            return rat(n, rng.gen_range(1..=9));
        }
    }
}

/// Move (T(b₀), (0, 0)) by random φ_{r,s,t,λ} over ℚ and check that the Tate
/// normal form algorithm recovers T(b₀) and a transformation sending the
/// moved point back to (0, 0).
pub fn tate_round_trip(seed: u64, b_values: &[Rat], perturbations: usize) -> AlgResult<RoundTripReport> {
    let q = |x: Rat| Poly::constant(&QQ, x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut trials = 0;
    for b in b_values {
        let c = tate_curve_at(&q(b.clone()));
        let z = q(<Rat as Zero>::zero());
        let p = CurvePoint::Affine(z.clone(), z);
        for _ in 0..perturbations {
            let phi = Transformation::new(
                q(random_rat(&mut rng, false)),
                q(random_rat(&mut rng, false)),
                q(random_rat(&mut rng, false)),
                q(random_rat(&mut rng, true)),
            );
            let moved = transform(&c, &phi)?;
            let pm = phi.move_point(&p);
            let r = tate_normal_form(&moved, &pm)?;
            trials += 1;
            let ok = moved.contains(&pm)
                && r.curve == c
                && transform(&moved, &r.transformation)? == c
                && r.transformation.move_point(&pm) == p;
            if !ok {
                failures.push(format!("b = {b}, phi = ({}, {}, {}, {})", phi.r, phi.s, phi.t, phi.lambda));
            }
        }
    }
    Ok(RoundTripReport {
        seed,
        b_values: b_values.iter().map(|b| b.to_string()).collect(),
        perturbations,
        trials,
        failures,
    })
}

/// The multiples of (0, 0) on T(b) over ℚ(b), and ψ₅ at (0, 0).
#[derive(Clone, Debug, Serialize)]
pub struct OrderFiveCertificate {
    /// kP for k = 1, …, 5, with ∞ written as "O".
    pub multiples: Vec<String>,
    pub five_p_is_infinity: bool,
    pub psi5_at_origin: String,
    /// ψ₂, ψ₃, ψ₄ do not vanish at (0, 0), so the order is exactly 5.
    pub lower_psi_nonzero: bool,
}

impl OrderFiveCertificate {
    pub fn passed(&self) -> bool {
        self.five_p_is_infinity && self.psi5_at_origin == "0" && self.lower_psi_nonzero
    }
}

/// Certify that (0, 0) has exact order 5 on T(b) identically in b.
pub fn order_five_certificate() -> AlgResult<OrderFiveCertificate> {
    let t = &*TATE;
    let c = tate_curve::<Rat>();
    let cr = WeierstrassCurve::new(c.coefficients().map(RationalFunction::from_poly));
    let z = RationalFunction::<Rat>::zero(t);
    let p = CurvePoint::Affine(z.clone(), z.clone());
    let mut multiples = Vec::new();
    let mut last = p.clone();
    for k in 1..=5 {
        last = multiply_point(&cr, k, &p)?;
        multiples.push(match &last {
            CurvePoint::Infinity => "O".to_string(),
            CurvePoint::Affine(x, y) => format!("({x}, {y})"),
        });
    }
    let dp = DivisionPolynomials::new(&c, 5)?;
    let zp = Poly::zero(t);
    let at = |q: &Poly<Rat>| dp.eval_at(q, &zp, &zp);
    let lower_psi_nonzero =
        !at(&dp.psi2())?.is_zero() && !at(&dp.psi(3))?.is_zero() && !at(&dp.reduce_y(&dp.psi(4)))?.is_zero();
    Ok(OrderFiveCertificate {
        multiples,
        five_p_is_infinity: last.is_infinity(),
        psi5_at_origin: at(&dp.psi(5))?.to_string(),
        lower_psi_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, parse_poly, Rat, RationalFunction};
    use crate::rings::{A, GAMMA, TATE, T1};

    #[test]
    fn reports_pass() {
        let r = tate_round_trip(7, &default_tate_parameters()[..3], 5).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.trials, 15);
        let c = order_five_certificate().unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.multiples[1], "(b, b^2)");
    }

    #[test]
    fn discriminant_of_tate_curve() {
        let c = tate_curve::<Rat>();
        let d = c.discriminant();
        let expected: Poly<Rat> = parse_poly(&TATE, "b^5*(b^2 - 11*b - 1)").unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn discriminant_of_t1() {
        let t = &*T1;
        let v = |n: &str| Poly::<Rat>::var(t, n).unwrap();
        let d = homogeneous_tate(&v("a1"), &v("a2"), &v("a3")).discriminant();
        let expected: Poly<Rat> = parse_poly(
            t,
            "-8*a1^2*a3^2*a2^2 + 20*a1*a3^3*a2 - a1^4*a3^2*a2 - 11*a3^4 + a1^3*a3^3",
        )
        .unwrap();
        // The displayed formula differs from the generic one by a multiple of
        // a₂³ + a₃² − a₁a₂a₃, which vanishes on curves with a point of order 5.
        let b = &*crate::rings::B1_5;
        let a1 = Poly::<Rat>::var(b, "a1").unwrap();
        let u = Poly::<Rat>::var(b, "u").unwrap();
        let a2 = u.mul(&a1.sub(&u));
        let a3 = u.mul(&u).mul(&a1.sub(&u));
        let sub = crate::exact_algebra::RingMap::from_named(
            "p",
            t,
            b,
            &[("a1", a1.clone()), ("a2", a2.clone()), ("a3", a3.clone())],
        )
        .unwrap();
        assert_eq!(sub.eval(&d).unwrap(), sub.eval(&expected).unwrap());
    }

    #[test]
    fn universal_transformation_matches_right_unit() {
        let g = &*GAMMA;
        let v = |n: &str| Poly::<Rat>::var(g, n).unwrap();
        let c = WeierstrassCurve::new([v("a1"), v("a2"), v("a3"), v("a4"), v("a6")]);
        let phi = Transformation::new(v("r"), v("s"), v("t"), Poly::one(g));
        let d = transform(&c, &phi).unwrap();
        assert_eq!(d.a1, parse_poly(g, "a1 + 2*s").unwrap());
        assert_eq!(d.a2, parse_poly(g, "a2 + 3*r - s^2 - a1*s").unwrap());
        assert_eq!(d.a3, parse_poly(g, "a3 + 2*t + a1*r").unwrap());
        let _ = &*A;
    }

    #[test]
    fn order_five_point() {
        let t = &*TATE;
        let c = tate_curve::<Rat>();
        let lift = |p: &Poly<Rat>| RationalFunction::from_poly(p.clone());
        let cr = WeierstrassCurve::new(c.coefficients().map(|p| lift(&p)));
        let z = RationalFunction::<Rat>::zero(t);
        let p = CurvePoint::Affine(z.clone(), z.clone());
        let b = lift(&Poly::var(t, "b").unwrap());
        assert_eq!(multiply_point(&cr, 2, &p).unwrap(), CurvePoint::Affine(b.clone(), b.times(&b)));
        assert_eq!(multiply_point(&cr, 4, &p).unwrap(), CurvePoint::Affine(z.clone(), b.clone()));
        assert_eq!(multiply_point(&cr, 4, &p).unwrap(), negate_point(&cr, &p));
        assert!(multiply_point(&cr, 5, &p).unwrap().is_infinity());
        assert_eq!(multiply_point(&cr, 1, &p).unwrap(), p);
        let _ = int(0);
    }

    fn q(n: i64, d: i64) -> Poly<Rat> {
        Poly::constant(&crate::rings::QQ, crate::exact_algebra::rat(n, d))
    }

    #[test]
    fn discriminant_in_a1_u() {
        let b = &*crate::rings::B1_5;
        let a1 = Poly::<Rat>::var(b, "a1").unwrap();
        let u = Poly::<Rat>::var(b, "u").unwrap();
        let a2 = u.mul(&a1.sub(&u));
        let a3 = u.mul(&u).mul(&a1.sub(&u));
        let d = homogeneous_tate(&a1, &a2, &a3).discriminant();
        let expected: Poly<Rat> = parse_poly(
            b,
            "-11*u^12 + 64*a1*u^11 - 154*a1^2*u^10 + 195*a1^3*u^9 - 135*a1^4*u^8 + 46*a1^5*u^7 - 4*a1^6*u^6 - a1^7*u^5",
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn c4_c6_delta_identity() {
        let a = &*A;
        let v = |n: &str| Poly::<Rat>::var(a, n).unwrap();
        let i = WeierstrassCurve::new([v("a1"), v("a2"), v("a3"), v("a4"), v("a6")]).invariants();
        let lhs = i.c4.pow(3).sub(&i.c6.pow(2));
        assert_eq!(lhs, i.delta.scale(&int(1728)));
    }

    #[test]
    fn rescaling_scales_invariants() {
        let g = &*GAMMA;
        let v = |n: &str| Poly::<Rat>::var(g, n).unwrap();
        let c = WeierstrassCurve::new([v("a1"), v("a2"), v("a3"), v("a4"), v("a6")]);
        let l = q(3, 2).embed(g).unwrap();
        let phi = Transformation::new(v("r"), v("s"), v("t"), l.clone());
        let (i0, i1) = (c.invariants(), transform(&c, &phi).unwrap().invariants());
        assert_eq!(i1.c4, i0.c4.mul(&l.pow(4)));
        assert_eq!(i1.c6, i0.c6.mul(&l.pow(6)));
        assert_eq!(i1.delta, i0.delta.mul(&l.pow(12)));
        let id = Transformation::identity(&v("a1"));
        assert_eq!(transform(&c, &id).unwrap(), c);
    }

    #[test]
    fn division_polynomials_on_tate_curve() {
        let c = tate_curve::<Rat>();
        let dp = DivisionPolynomials::new(&c, 6).unwrap();
        assert!(dp.psi(1).is_one());
        let t = dp.table().clone();
        let x = Poly::<Rat>::var(&t, "x").unwrap();
        let inv = WeierstrassCurve::new(c.coefficients().map(|p| p.embed(&t).unwrap())).invariants();
        let f = x
            .pow(3)
            .scale(&int(4))
            .add(&inv.b2.mul(&x.pow(2)))
            .add(&inv.b4.mul(&x).scale(&int(2)))
            .add(&inv.b6);
        assert_eq!(dp.reduce_y(&dp.psi2().pow(2)), f);
        let z = Poly::zero(&TATE);
        assert!(dp.eval_at(&dp.psi(5), &z, &z).unwrap().is_zero());
        assert!(!dp.eval_at(&dp.psi(3), &z, &z).unwrap().is_zero());
        assert!(!dp.eval_at(&dp.reduce_y(&dp.psi(4)), &z, &z).unwrap().is_zero());
    }

    #[test]
    fn tate_form_is_fixed_on_tate_curve() {
        let c = tate_curve::<Rat>();
        let z = Poly::zero(&TATE);
        let r = tate_normal_form(&c, &CurvePoint::Affine(z.clone(), z.clone())).unwrap();
        assert_eq!(r.curve, c);
        assert_eq!(r.transformation, Transformation::identity(&z));
    }

    #[test]
    fn homogeneous_form_becomes_tate() {
        let (a1, a2, a3) = (q(3, 1), q(-2, 1), q(5, 1));
        let c = homogeneous_tate(&a1, &a2, &a3);
        let z = q(0, 1);
        let r = tate_normal_form(&c, &CurvePoint::Affine(z.clone(), z)).unwrap();
        assert_eq!(r.curve.a2, r.curve.a3);
        let b = r.curve.a3.neg();
        assert_eq!(b, a2.pow(3).neg().mul(&a3.pow(2).monomial_inverse().unwrap()));
    }

    #[test]
    fn round_trip_from_random_coordinates() {
        let c = tate_curve_at(&q(2, 1));
        let z = q(0, 1);
        let p = CurvePoint::Affine(z.clone(), z);
        let phi = Transformation::new(q(3, 7), q(-5, 2), q(1, 3), q(2, 5));
        let moved = transform(&c, &phi).unwrap();
        let pm = phi.move_point(&p);
        assert!(moved.contains(&pm));
        let r = tate_normal_form(&moved, &pm).unwrap();
        assert_eq!(r.curve, c);
        assert_eq!(transform(&moved, &r.transformation).unwrap(), c);
        assert_eq!(r.transformation.move_point(&pm), p);
        let back = phi.then(&phi.inverse().unwrap()).unwrap();
        assert_eq!(back, Transformation::identity(&q(1, 1)));
    }
}
