//! Vélu's formulas for quotients by subgroups of odd order.

use crate::exact_algebra::{parse_poly, AlgResult, Poly, Rat, RingElem, RingMap};
use crate::level_maps::map_fixture;
use crate::rings::{A, B1_3, B1_5};
use crate::weierstrass::{homogeneous_tate, transform, Transformation, WeierstrassCurve};
use serde::Serialize;

/// A monic kernel polynomial ψ(x) = xⁿ − s₁xⁿ⁻¹ + s₂xⁿ⁻² − ….
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPolynomial<E> {
    /// Coefficients below the leading one, highest first: ψ = xⁿ + c₁xⁿ⁻¹ + … + cₙ.
    lower: Vec<E>,
}

impl<E: RingElem> KernelPolynomial<E> {
    /// Build from the coefficients of xⁿ⁻¹, …, x⁰ of a monic polynomial.
    pub fn monic(lower: Vec<E>) -> Self {
        KernelPolynomial { lower }
    }

    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// The elementary symmetric function s_i (zero for i > n).
    pub fn s(&self, i: usize, like: &E) -> E {
        match self.lower.get(i.wrapping_sub(1)) {
            Some(c) if i >= 1 => {
                if i % 2 == 1 {
                    c.negated()
                } else {
                    c.clone()
                }
            }
            _ => like.zero_like(),
        }
    }
}

/// Vélu's auxiliary quantities (t, w).
pub fn velu_tw<E: RingElem>(c: &WeierstrassCurve<E>, psi: &KernelPolynomial<E>) -> (E, E) {
    let inv = c.invariants();
    let like = &c.a1;
    let (s1, s2, s3) = (psi.s(1, like), psi.s(2, like), psi.s(3, like));
    let n = psi.degree() as i64;
    let p2 = s1.times(&s1).minus(&s2.scaled(2));
    let p3 = s1.pow_u(3).minus(&s1.times(&s2).scaled(3)).plus(&s3.scaled(3));
    let t = p2.scaled(6).plus(&inv.b2.times(&s1)).plus(&inv.b4.scaled(n));
    let w = p3
        .scaled(10)
        .plus(&inv.b2.times(&p2).scaled(2))
        .plus(&inv.b4.times(&s1).scaled(3))
        .plus(&inv.b6.scaled(n));
    (t, w)
}

/// The quotient curve C/H with a₄ ↦ a₄ − 5t and a₆ ↦ a₆ − b₂t − 7w.
pub fn velu_quotient<E: RingElem>(c: &WeierstrassCurve<E>, psi: &KernelPolynomial<E>) -> WeierstrassCurve<E> {
    let (t, w) = velu_tw(c, psi);
    let b2 = c.invariants().b2;
    WeierstrassCurve {
        a1: c.a1.clone(),
        a2: c.a2.clone(),
        a3: c.a3.clone(),
        a4: c.a4.minus(&t.scaled(5)),
        a6: c.a6.minus(&b2.times(&t)).minus(&w.scaled(7)),
    }
}

/// a₄ and a₆ of T¹/⟨(0, 0)⟩ as displayed, in terms of a₁, a₂, a₃.
pub const VELU_T1_A4: &str = "5*a1^2*a2 - 10*a1*a3 - 10*a2^2";
pub const VELU_T1_A6: &str = "a1^4*a2 - 2*a1^3*a3 - 12*a1^2*a2^2 + 19*a2^3 - a3^2";

/// Outcome of the two Vélu checks.
#[derive(Clone, Debug, Serialize)]
pub struct VeluReport {
    /// The quotient of T¹(a₁, u) by the kernel x(x + a₂).
    pub t1_quotient: [String; 5],
    pub t1_matches: bool,
    /// The ℓ = 3 quotient of [a₁, 0, a₃, 0, 0] by x, moved by φ_{0,0,a₃,1}.
    pub level3_quotient: [String; 5],
    pub level3_matches: bool,
}

impl VeluReport {
    pub fn passed(&self) -> bool {
        self.t1_matches && self.level3_matches
    }
}

/// Compare the T¹ quotient with the displayed a₄, a₆ in (a₁, u) coordinates,
/// and the normalized ℓ = 3 quotient with the q* table.
pub fn velu_report() -> AlgResult<VeluReport> {
    let b = &*B1_5;
    let p = |s: &str| parse_poly::<Rat>(b, s);
    let (a1, u) = (p("a1")?, p("u")?);
    let a2 = u.mul(&a1.sub(&u));
    let a3 = u.mul(&a2);
    let z = Poly::zero(b);
    let t1 = homogeneous_tate(&a1, &a2, &a3);
    let q5 = velu_quotient(&t1, &KernelPolynomial::monic(vec![a2.clone(), z.clone()]));
    let sub = RingMap::new("a1u", &A, b, vec![a1.clone(), a2.clone(), a3.clone(), z.clone(), z])?;
    let shown = |s: &str| -> AlgResult<Poly<Rat>> { sub.eval(&parse_poly(&A, s)?) };
    let t1_matches = q5.a1 == a1
        && q5.a2 == a2
        && q5.a3 == a3
        && q5.a4 == shown(VELU_T1_A4)?
        && q5.a6 == shown(VELU_T1_A6)?;

    let b3 = &*B1_3;
    let (x1, x3, z3) = (Poly::var(b3, "a1")?, Poly::var(b3, "a3")?, Poly::zero(b3));
    let c = WeierstrassCurve::new([x1, z3.clone(), x3.clone(), z3.clone(), z3.clone()]);
    let q3 = velu_quotient(&c, &KernelPolynomial::monic(vec![z3.clone()]));
    let n = transform(&q3, &Transformation::new(z3.clone(), z3, x3, Poly::one(b3)))?;
    let mut level3_matches = true;
    for row in map_fixture(3)?.iter().filter(|r| r.map == "q") {
        let i = ["a1", "a2", "a3", "a4", "a6"].iter().position(|g| *g == row.source);
        let Some(i) = i else { continue };
        level3_matches &= n.coefficients()[i] == parse_poly::<Rat>(b3, &row.image)?;
    }
    Ok(VeluReport {
        t1_quotient: q5.coefficients().map(|x| x.to_string()),
        t1_matches,
        level3_quotient: n.coefficients().map(|x| x.to_string()),
        level3_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes() {
        assert!(velu_report().unwrap().passed());
    }

    #[test]
    fn trivial_kernel() {
        let a = &*A;
        let v = |n: &str| Poly::<Rat>::var(a, n).unwrap();
        let c = WeierstrassCurve::new([v("a1"), v("a2"), v("a3"), v("a4"), v("a6")]);
        assert_eq!(velu_quotient(&c, &KernelPolynomial::monic(vec![])), c);
    }

    #[test]
    fn level_five_kernel() {
        let a = &*A;
        let v = |n: &str| Poly::<Rat>::var(a, n).unwrap();
        let z = Poly::zero(a);
        let c = WeierstrassCurve::new([v("a1"), v("a2"), v("a3"), z.clone(), z.clone()]);
        let q = velu_quotient(&c, &KernelPolynomial::monic(vec![v("a2"), z]));
        assert_eq!(q.a4, parse_poly(a, "5*a1^2*a2 - 10*a1*a3 - 10*a2^2").unwrap());
        let a6: Poly<Rat> = parse_poly(a, "a1^4*a2 - 2*a1^3*a3 - 12*a1^2*a2^2 + 19*a2^3 - a3^2").unwrap();
        // The displayed a₆ agrees up to a multiple of a₂³ + a₃² − a₁a₂a₃.
        let rel: Poly<Rat> = parse_poly(a, "a2^3 + a3^2 - a1*a2*a3").unwrap();
        assert_eq!(q.a6.sub(&a6), rel.scale(&crate::exact_algebra::int(-13)));
        let b = &*crate::rings::B1_5;
        let a1 = Poly::<Rat>::var(b, "a1").unwrap();
        let u = Poly::<Rat>::var(b, "u").unwrap();
        let sub = crate::exact_algebra::RingMap::from_named(
            "a1u",
            a,
            b,
            &[
                ("a1", a1.clone()),
                ("a2", u.mul(&a1.sub(&u))),
                ("a3", u.mul(&u).mul(&a1.sub(&u))),
                ("a4", Poly::zero(b)),
                ("a6", Poly::zero(b)),
            ],
        )
        .unwrap();
        assert_eq!(sub.eval(&q.a6).unwrap(), sub.eval(&a6).unwrap());
    }

    #[test]
    fn level_three_kernel() {
        let b = &*B1_3;
        let a1 = Poly::<Rat>::var(b, "a1").unwrap();
        let a3 = Poly::<Rat>::var(b, "a3").unwrap();
        let z = Poly::zero(b);
        let c = WeierstrassCurve::new([a1, z.clone(), a3.clone(), z.clone(), z.clone()]);
        let q = velu_quotient(&c, &KernelPolynomial::monic(vec![z.clone()]));
        assert_eq!(q.a4, parse_poly(b, "-5*a1*a3").unwrap());
        assert_eq!(q.a6, parse_poly(b, "-a1^3*a3 - 7*a3^2").unwrap());
        let n = transform(&q, &Transformation::new(z.clone(), z.clone(), a3, Poly::one(b))).unwrap();
        assert_eq!(n.a3, parse_poly(b, "3*a3").unwrap());
        assert_eq!(n.a4, parse_poly(b, "-6*a1*a3").unwrap());
        assert_eq!(n.a6, parse_poly(b, "-9*a3^2 - a1^3*a3").unwrap());
    }
}
