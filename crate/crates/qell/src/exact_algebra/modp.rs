//! Fast evaluation of integral polynomials modulo a small prime.

use super::coeff::Rat;
use super::poly::{Mono, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// A polynomial with coefficients reduced mod p, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    p: u64,
    terms: Vec<(u64, Mono)>,
}

/// Reduce a p-integral rational modulo p.
pub fn rat_mod_p(q: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64()?;
    let d = q.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * pow_mod_u64(d, p - 2, p) % p)
}

/// b^e mod p.
pub fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl CompiledPoly {
    /// Compile; fails if some coefficient has denominator divisible by p or a
    /// negative exponent appears.
    pub fn new(poly: &Poly<Rat>, p: u64) -> Option<Self> {
        assert!(p < (1 << 31), "modulus too large for u64 products");
        let mut terms = Vec::with_capacity(poly.len());
        for (m, c) in poly.terms() {
            if m.iter().any(|&e| e < 0) {
                return None;
            }
            let c = rat_mod_p(c, p)?;
            if c != 0 {
                terms.push((c, m.clone()));
            }
        }
        Some(CompiledPoly { p, terms })
    }

    /// Value at the given generator values (one per generator of the table).
    pub fn eval(&self, vals: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0;
        for (c, m) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t * vals[i] % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}
