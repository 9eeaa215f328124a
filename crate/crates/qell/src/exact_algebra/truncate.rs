//! Reduction modulo the ideals (2ᵏ, v₁ʲ) with v₁ = a₁.

use super::coeff::{Coeff, Dyadic, Rat};
use super::error::{AlgResult, AlgebraError};
use super::poly::{accumulate, Mono, Poly};
use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;

/// Name of the generator playing the role of v₁.
pub const V1: &str = "a1";

/// The ideal (2ᵏ, v₁ʲ); `None` means no truncation in that direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    pub k: u32,
    pub j: Option<i32>,
}

impl Modulus {
    pub fn new(k: u32, j: i32) -> Self {
        Modulus { k, j: Some(j) }
    }

    /// Only a 2-power modulus.
    pub fn two_power(k: u32) -> Self {
        Modulus { k, j: None }
    }

    /// The modulus with both exponents lowered, as needed for a cofactor of a
    /// product whose other factor has 2-adic valuation `dv` and v₁-order `dj`.
    pub fn lowered(self, dv: u32, dj: i32) -> Self {
        Modulus { k: self.k.saturating_sub(dv), j: self.j.map(|j| (j - dj).max(0)) }
    }

    /// True if every element is zero modulo this ideal.
    pub fn is_trivial(self) -> bool {
        self.k == 0 || self.j == Some(0)
    }
}

/// Convert a 2-integral rational polynomial to 2-adic coefficients modulo 2⁶⁴.
pub fn to_dyadic(x: &Poly<Rat>) -> AlgResult<Poly<Dyadic>> {
    x.try_map_coeffs(Dyadic::from_rat).ok_or_else(|| {
        let bad = x
            .terms()
            .find(|(_, c)| Dyadic::from_rat(c).is_none())
            .map(|(_, c)| c.to_string())
            .unwrap_or_default();
        AlgebraError::NotTwoIntegral(bad)
    })
}

/// Canonical integer representatives in [0, 2ᵏ).
pub fn dyadic_to_rat(x: &Poly<Dyadic>) -> Poly<Rat> {
    x.map_coeffs(|c| Rat::from_integer(BigInt::from(c.0)))
}

fn v1_index<C: Coeff>(x: &Poly<C>) -> Option<usize> {
    x.table().index(V1)
}

/// Reduce a 2-adic polynomial modulo (2ᵏ, v₁ʲ).
pub fn reduce_dyadic(x: &Poly<Dyadic>, m: Modulus) -> Poly<Dyadic> {
    if m.is_trivial() {
        return Poly::zero(x.table());
    }
    let v1 = v1_index(x);
    let mut terms = BTreeMap::new();
    for (mono, c) in x.terms() {
        if let (Some(i), Some(j)) = (v1, m.j) {
            if mono[i] >= j {
                continue;
            }
        }
        let t = c.truncate(m.k);
        if !Coeff::is_zero(&t) {
            terms.insert(mono.clone(), t);
        }
    }
    Poly::from_map(x.table(), terms)
}

/// Normal form of a rational polynomial modulo (2ᵏ, v₁ʲ): coefficients reduced
/// to [0, 2ᵏ) and terms with a₁-exponent at least j dropped.
pub fn reduce_truncated(x: &Poly<Rat>, k: u32, j: i32) -> AlgResult<Poly<Rat>> {
    if k > 64 {
        return Err(AlgebraError::Other("2-adic precision above 64 bits".into()));
    }
    Ok(dyadic_to_rat(&reduce_dyadic(&to_dyadic(x)?, Modulus::new(k, j))))
}

/// Product modulo (2ᵏ, v₁ʲ), skipping pairs whose v₁-exponents already exceed the bound.
pub fn mul_mod(a: &Poly<Dyadic>, b: &Poly<Dyadic>, m: Modulus) -> Poly<Dyadic> {
    if m.is_trivial() || a.is_zero() || b.is_zero() {
        return Poly::zero(a.table());
    }
    let v1 = v1_index(a);
    let bound = match (v1, m.j) {
        (Some(i), Some(j)) => Some((i, j)),
        _ => None,
    };
    let mut acc: FxHashMap<Mono, Dyadic> = FxHashMap::default();
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            if let Some((i, j)) = bound {
                if m1[i] + m2[i] >= j {
                    continue;
                }
            }
            let prod = Coeff::mul(c1, c2);
            if Coeff::is_zero(&prod.truncate(m.k)) {
                continue;
            }
            let mono: Mono = m1.iter().zip(m2.iter()).map(|(x, y)| x + y).collect();
            let e = acc.entry(mono).or_insert(Dyadic(0));
            *e = Coeff::add(e, &prod);
        }
    }
    let mut terms = BTreeMap::new();
    for (mono, c) in acc {
        accumulate(&mut terms, mono, &c.truncate(m.k));
    }
    Poly::from_map(a.table(), terms)
}

/// Power modulo (2ᵏ, v₁ʲ) by repeated squaring.
pub fn pow_mod(a: &Poly<Dyadic>, mut n: u64, m: Modulus) -> Poly<Dyadic> {
    let mut acc = reduce_dyadic(&Poly::one(a.table()), m);
    let mut base = reduce_dyadic(a, m);
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(&acc, &base, m);
        }
        n >>= 1;
        if n > 0 {
            base = mul_mod(&base, &base, m);
        }
    }
    acc
}

/// Minimum 2-adic valuation of the coefficients (`None` for zero).
pub fn two_valuation(x: &Poly<Dyadic>) -> Option<u32> {
    x.terms().filter_map(|(_, c)| c.valuation()).min()
}

/// Minimum v₁-exponent among the terms (`None` for zero or no v₁).
pub fn v1_order<C: Coeff>(x: &Poly<C>) -> Option<i32> {
    v1_index(x).and_then(|i| x.min_exponent(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::coeff::int;
    use crate::exact_algebra::parse::parse_poly;
    use crate::exact_algebra::poly::GeneratorTable;

    #[test]
    fn worked_examples() {
        let t = GeneratorTable::plain(&[("a1", 1), ("s", 1), ("t", 3)]);
        let p: Poly<Rat> = parse_poly(&t, "4*a1^2").unwrap();
        assert!(reduce_truncated(&p, 1, 2).unwrap().is_zero());
        let p: Poly<Rat> = parse_poly(&t, "a1*s^2 + 2*t").unwrap();
        assert_eq!(reduce_truncated(&p, 1, 2).unwrap().to_string(), "a1*s^2");
        let p: Poly<Rat> = parse_poly(&t, "-1/3*s").unwrap();
        assert_eq!(reduce_truncated(&p, 3, 5).unwrap(), Poly::var(&t, "s").unwrap().scale(&int(5)));
        assert!(reduce_truncated(&p, 0, 5).unwrap().is_zero());
    }
}
