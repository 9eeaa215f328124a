//! The Weierstrass Hopf algebroid (A, Γ), its Γ₁(5) variant (B¹, Λ¹), and the
//! degree-zero cobar differential.

use crate::exact_algebra::{
    parse_poly, AlgResult, CompiledPoly, GeneratorTable, Poly, Rat, RingElem, RingMap,
};
use crate::rings::{A, GAMMA, T1};
use crate::weierstrass::{homogeneous_tate, transform, Transformation, WeierstrassCurve};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::{Arc, LazyLock};

/// Γ ⊗_A Γ, with the second factor's r, s, t written r2, s2, t2.
pub static GAMMA2: LazyLock<Arc<GeneratorTable>> = LazyLock::new(|| {
    GAMMA.extended(&[("r2", 2, false), ("s2", 1, false), ("t2", 3, false)])
});

/// Λ¹ before imposing relations: ℤ[a₁, a₂, a₃, r, s, t].
pub static LAMBDA1: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| T1.extended(&[("r", 2, false), ("s", 1, false), ("t", 3, false)]));

/// The three displayed relations defining Λ¹, as `lhs = rhs` strings.
pub const LAMBDA1_RELATIONS: [(&str, &str); 3] = [
    ("3*r^2", "2*s*t + a1*r*s + a3*s + a1*t - 2*a2*r"),
    ("t^2", "r^3 + a2*r^2 - a1*r*t - a3*t"),
    (
        "s^6",
        "-3*a1*s^5 + 9*r*s^4 + 3*a2*s^4 - 3*a1^2*s^4 + 4*t*s^3 + 20*a1*r*s^3 + 6*a1*a2*s^3 \
         + 2*a3*s^3 - a1^3*s^3 + 6*a1*t*s^2 - 27*r^2*s^2 - 18*a2*r*s^2 + 12*a1^2*r*s^2 \
         - 3*a2^2*s^2 + 3*a1^2*a2*s^2 + 3*a1*a3*s^2 - 12*r*t*s - 4*a2*t*s + 2*a1^2*t*s \
         - 33*a1*r^2*s - 20*a1*a2*r*s - 6*a3*r*s + a1^3*r*s - 3*a1*a2^2*s - 2*a3*a2*s \
         + a1^2*a3*s + 4*t^2 - 2*a1*r*t - 2*a1*a2*t + 4*a3*t + 27*r^3 + 27*a2*r^2 \
         - 2*a1^2*r^2 + 9*a2^2*r - a1^2*a2*r - a1*a3*r",
    ),
];

/// A Hopf algebroid presented by its object ring, morphism ring and units.
#[derive(Clone, Debug)]
pub struct HopfAlgebroid {
    pub name: String,
    pub objects: Arc<GeneratorTable>,
    pub morphisms: Arc<GeneratorTable>,
    pub eta_l: RingMap<Rat>,
    pub eta_r: RingMap<Rat>,
    /// ψ(r), ψ(s), ψ(t) in the two-fold tensor product.
    pub coproduct: [Poly<Rat>; 3],
}

fn universal(table: &Arc<GeneratorTable>) -> (WeierstrassCurve<Poly<Rat>>, Transformation<Poly<Rat>>) {
    let v = |n: &str| Poly::<Rat>::var(table, n).unwrap_or_else(|_| Poly::zero(table));
    let c = WeierstrassCurve::new([v("a1"), v("a2"), v("a3"), v("a4"), v("a6")]);
    (c, Transformation::new(v("r"), v("s"), v("t"), Poly::one(table)))
}

fn coproduct_images() -> [Poly<Rat>; 3] {
    let g = &*GAMMA2;
    let v = |n: &str| Poly::<Rat>::var(g, n).expect("generator of Γ⊗Γ");
    let first = Transformation::new(v("r"), v("s"), v("t"), Poly::one(g));
    let second = Transformation::new(v("r2"), v("s2"), v("t2"), Poly::one(g));
    let c = first.then(&second).expect("λ = 1");
    [c.r, c.s, c.t]
}

/// (A, Γ) with η_R read off from the universal transformation.
pub fn weierstrass_hopf() -> AlgResult<HopfAlgebroid> {
    let (c, phi) = universal(&GAMMA);
    let d = transform(&c, &phi)?;
    let eta_r = RingMap::new("eta_R", &A, &GAMMA, d.coefficients().to_vec())?;
    let eta_l = RingMap::from_named("eta_L", &A, &GAMMA, &[])?;
    Ok(HopfAlgebroid {
        name: "(A, Gamma)".into(),
        objects: A.clone(),
        morphisms: GAMMA.clone(),
        eta_l,
        eta_r,
        coproduct: coproduct_images(),
    })
}

/// (B¹, Λ¹) in the coordinates a₁, a₂, a₃ of the homogeneous Tate form.
pub fn lambda1_hopf() -> AlgResult<HopfAlgebroid> {
    let (c, phi) = universal(&LAMBDA1);
    let d = transform(&c, &phi)?;
    let eta_r = RingMap::new("eta_R", &T1, &LAMBDA1, vec![d.a1, d.a2, d.a3])?;
    let eta_l = RingMap::from_named("eta_L", &T1, &LAMBDA1, &[])?;
    Ok(HopfAlgebroid {
        name: "(B1, Lambda1)".into(),
        objects: T1.clone(),
        morphisms: LAMBDA1.clone(),
        eta_l,
        eta_r,
        coproduct: coproduct_images(),
    })
}

impl HopfAlgebroid {
    pub fn right_unit(&self, x: &Poly<Rat>) -> AlgResult<Poly<Rat>> {
        self.eta_r.eval(x)
    }

    pub fn left_unit(&self, x: &Poly<Rat>) -> AlgResult<Poly<Rat>> {
        self.eta_l.eval(x)
    }

    /// d(x) = η_R(x) − η_L(x).
    pub fn cobar_d0(&self, x: &Poly<Rat>) -> AlgResult<Poly<Rat>> {
        Ok(self.right_unit(x)?.sub(&self.left_unit(x)?))
    }
}

/// Right unit of the Weierstrass Hopf algebroid.
pub fn right_unit(x: &Poly<Rat>) -> AlgResult<Poly<Rat>> {
    static H: LazyLock<HopfAlgebroid> = LazyLock::new(|| weierstrass_hopf().expect("universal transformation"));
    H.right_unit(x)
}

/// The degree-zero cobar differential of (A, Γ).
pub fn cobar_d0(x: &Poly<Rat>) -> AlgResult<Poly<Rat>> {
    Ok(right_unit(x)?.sub(&x.embed(&GAMMA)?))
}

/// Outcome of checking the Λ¹ relations.
#[derive(Clone, Debug, Serialize)]
pub struct Lambda1Report {
    /// The first relation is exactly a₄′ = 0 for φ_{r,s,t,1} applied to T¹.
    pub first_is_a4: bool,
    /// The second relation is exactly a₆′ = 0.
    pub second_is_a6: bool,
    /// Random (p, a₁, u) instances examined.
    pub samples: usize,
    /// Points (r, s, t) with a₄′ = a₆′ = 0 examined across all samples.
    pub points: usize,
    /// Instances where the relations and the transform constraints disagree.
    pub failures: Vec<String>,
}

impl Lambda1Report {
    pub fn passed(&self) -> bool {
        self.first_is_a4 && self.second_is_a6 && self.failures.is_empty()
    }
}

/// Primes used for the randomized evaluation.
pub const LAMBDA1_PRIMES: [u64; 6] = [7, 11, 13, 17, 19, 23];

/// Verify that the Λ¹ relations cut out exactly those φ_{r,s,t,1} taking T¹ with
/// a₂³ + a₃² = a₁a₂a₃ to another such curve with a₄ = a₆ = 0.
///
/// The first two relations are compared symbolically. The third is compared by
/// enumerating 𝔽_p³ for random nonsingular (a₁, u) and requiring the solution
/// sets of the relations and of the transform constraints to coincide.
pub fn lambda1_relations_check(seed: u64, samples: usize) -> AlgResult<Lambda1Report> {
    let l = &*LAMBDA1;
    let rel = |i: usize| -> AlgResult<Poly<Rat>> {
        let (lhs, rhs) = LAMBDA1_RELATIONS[i];
        Ok(parse_poly::<Rat>(l, lhs)?.sub(&parse_poly(l, rhs)?))
    };
    let (r1, r2, r3) = (rel(0)?, rel(1)?, rel(2)?);
    let v = |n: &str| Poly::<Rat>::var(l, n).expect("generator of Λ¹");
    let curve = homogeneous_tate(&v("a1"), &v("a2"), &v("a3"));
    let moved = transform(&curve, &Transformation::new(v("r"), v("s"), v("t"), Poly::one(l)))?;
    let first_is_a4 = moved.a4 == r1;
    let second_is_a6 = moved.a6 == r2.neg();
    let order5 = moved
        .a2
        .pow(3)
        .add(&moved.a3.pow(2))
        .sub(&moved.a1.times(&moved.a2).times(&moved.a3));
    let disc = curve.discriminant();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut points = 0;
    let mut done = 0;
    let compile = |q: &Poly<Rat>, p| CompiledPoly::new(q, p).expect("integral relation");
    let compiled: Vec<_> = LAMBDA1_PRIMES
        .iter()
        .map(|&p| (p, compile(&moved.a4, p), compile(&moved.a6, p), compile(&order5, p), compile(&r3, p), compile(&disc, p)))
        .collect();
    while done < samples {
        let (p, a4c, a6c, o5c, r3c, dc) = &compiled[rng.gen_range(0..compiled.len())];
        let p = *p;
        let a1 = rng.gen_range(0..p);
        let u = rng.gen_range(1..p);
        let a2 = u * ((a1 + p - u) % p) % p;
        let a3 = u * u % p * ((a1 + p - u) % p) % p;
        if dc.eval(&[a1, a2, a3, 0, 0, 0]) == 0 {
            continue;
        }
        done += 1;
        for r in 0..p {
            for s in 0..p {
                for t in 0..p {
                    let x = [a1, a2, a3, r, s, t];
                    if a4c.eval(&x) != 0 || a6c.eval(&x) != 0 {
                        continue;
                    }
                    points += 1;
                    let by_relation = r3c.eval(&x) == 0;
                    let by_transform = o5c.eval(&x) == 0;
                    if by_relation != by_transform {
                        failures.push(format!("p={p} a1={a1} u={u} (r,s,t)=({r},{s},{t})"));
                    }
                }
            }
        }
    }
    Ok(Lambda1Report { first_is_a4, second_is_a6, samples: done, points, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::int;

    #[test]
    fn right_unit_low_generators() {
        let h = weierstrass_hopf().unwrap();
        let a1 = Poly::var(&A, "a1").unwrap();
        let a3 = Poly::var(&A, "a3").unwrap();
        assert_eq!(h.right_unit(&a1).unwrap(), parse_poly(&GAMMA, "a1 + 2*s").unwrap());
        assert_eq!(h.right_unit(&a3).unwrap(), parse_poly(&GAMMA, "a3 + 2*t + a1*r").unwrap());
        assert!(cobar_d0(&Poly::from_int(&A, 7)).unwrap().is_zero());
        assert_eq!(cobar_d0(&a1).unwrap(), parse_poly(&GAMMA, "2*s").unwrap());
    }

    #[test]
    fn coproduct_matches_display() {
        let g = &*GAMMA2;
        let [r, s, t] = coproduct_images();
        assert_eq!(r, parse_poly(g, "r + r2").unwrap());
        assert_eq!(s, parse_poly(g, "s + s2").unwrap());
        assert_eq!(t, parse_poly(g, "t + s*r2 + t2").unwrap());
        let _ = int(0);
    }

    #[test]
    fn lambda1_relations_hold() {
        let rep = lambda1_relations_check(7, 40).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.points > 0);
    }
}
