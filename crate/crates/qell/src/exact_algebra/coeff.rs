//! Exact coefficient rings.
//!
//! Four concrete types implement [`Coeff`]: rationals ([`Rat`], used for
//! localized integers), the cyclotomic field ℚ(ζ₅) ([`Cyc5`]), the prime field
//! 𝔽₂ ([`F2`]), and 2-adic integers modulo 2⁶⁴ ([`Dyadic`]) which realize
//! every truncation ℤ/2ᵏ with k ≤ 64.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

/// Exact rational numbers.
pub type Rat = BigRational;

/// Build a rational from a numerator and denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integral rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// 2-adic valuation of a nonzero rational; `None` for zero.
pub fn v2(q: &Rat) -> Option<i64> {
    if Zero::is_zero(q) {
        return None;
    }
    let tz = |b: &BigInt| b.trailing_zeros().unwrap_or(0) as i64;
    Some(tz(q.numer()) - tz(q.denom()))
}

/// Coefficient arithmetic shared by every polynomial ring in the crate.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse when it exists.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Image of a rational, when the rational lies in the coefficient ring.
    fn from_rat(q: &Rat) -> Option<Self>;
    /// Text form of the coefficient.
    fn render(&self) -> String;
    /// True if printing needs parentheses inside a product.
    fn is_compound(&self) -> bool {
        false
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add_assign(&mut self, o: &Self) {
        *self = Coeff::add(self, o);
    }
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn from_rat(q: &Rat) -> Option<Self> {
        Some(q.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
}

/// Element of ℚ(ζ) with ζ a primitive fifth root of unity, stored in the basis {1, ζ, ζ², ζ³}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc5(pub [Rat; 4]);

impl Cyc5 {
    /// The root of unity ζ.
    pub fn zeta() -> Self {
        Cyc5([int(0), int(1), int(0), int(0)])
    }

    /// ζᵏ in reduced form, for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        cyclotomic_normalize(&{
            let mut v = vec![int(0); 5];
            v[k.rem_euclid(5) as usize] = int(1);
            v
        })
    }

    /// The rational part, if the element lies in ℚ.
    pub fn to_rat(&self) -> Option<Rat> {
        self.0[1..].iter().all(Zero::is_zero).then(|| self.0[0].clone())
    }

    /// Image under the Galois automorphism ζ ↦ ζᵏ.
    pub fn galois(&self, k: i64) -> Self {
        let mut v = vec![int(0); 5];
        for (i, c) in self.0.iter().enumerate() {
            let e = (i as i64 * k).rem_euclid(5) as usize;
            v[e] += c;
        }
        cyclotomic_normalize(&v)
    }

    fn mul_raw(&self, o: &Self) -> Self {
        let mut v = vec![int(0); 7];
        for i in 0..4 {
            if Zero::is_zero(&self.0[i]) {
                continue;
            }
            for j in 0..4 {
                v[i + j] += &self.0[i] * &o.0[j];
            }
        }
        cyclotomic_normalize(&v)
    }
}

/// Reduce a coefficient list in powers of ζ (index = exponent) to the basis {1, ζ, ζ², ζ³}.
pub fn cyclotomic_normalize(c: &[Rat]) -> Cyc5 {
    let mut folded = [int(0), int(0), int(0), int(0), int(0)];
    for (i, x) in c.iter().enumerate() {
        folded[i % 5] += x;
    }
    let top = folded[4].clone();
    Cyc5([
        &folded[0] - &top,
        &folded[1] - &top,
        &folded[2] - &top,
        &folded[3] - &top,
    ])
}

impl Coeff for Cyc5 {
    fn zero() -> Self {
        Cyc5([int(0), int(0), int(0), int(0)])
    }
    fn one() -> Self {
        Cyc5([int(1), int(0), int(0), int(0)])
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        Cyc5(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
    fn sub(&self, o: &Self) -> Self {
        Cyc5(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_raw(o)
    }
    fn neg(&self) -> Self {
        Cyc5(std::array::from_fn(|i| -&self.0[i]))
    }
    fn inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            return None;
        }
        // x⁻¹ = σ₂(x)σ₃(x)σ₄(x) / N(x) with N(x) rational.
        let others = self.galois(2).mul_raw(&self.galois(3)).mul_raw(&self.galois(4));
        let norm = self.mul_raw(&others).to_rat().expect("norm is rational");
        let s = norm.recip();
        Some(Cyc5(std::array::from_fn(|i| &others.0[i] * &s)))
    }
    fn from_i64(n: i64) -> Self {
        Cyc5([int(n), int(0), int(0), int(0)])
    }
    fn from_rat(q: &Rat) -> Option<Self> {
        Some(Cyc5([q.clone(), int(0), int(0), int(0)]))
    }
    fn render(&self) -> String {
        if let Some(q) = self.to_rat() {
            return q.to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let z = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let term = match (i, One::is_one(c), One::is_one(&-c)) {
                (0, _, _) => c.to_string(),
                (_, true, _) => z,
                (_, _, true) => format!("-{z}"),
                _ => format!("{c}*{z}"),
            };
            parts.push(term);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
    fn is_compound(&self) -> bool {
        self.to_rat().is_none()
    }
}

/// The prime field 𝔽₂.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct F2(pub bool);

impl Coeff for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, o: &Self) -> Self {
        F2(self.0 ^ o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        F2(self.0 ^ o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        F2(self.0 & o.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn from_i64(n: i64) -> Self {
        F2(n.rem_euclid(2) == 1)
    }
    fn from_rat(q: &Rat) -> Option<Self> {
        if q.denom().is_even() {
            return None;
        }
        Some(F2(q.numer().is_odd()))
    }
    fn render(&self) -> String {
        if self.0 { "1" } else { "0" }.to_string()
    }
}

/// A 2-adic integer known modulo 2⁶⁴.
///
/// Reduction ℤ/2⁶⁴ → ℤ/2ᵏ is a ring map, so any computation modulo 2ᵏ with
/// k ≤ 64 is exact when carried out here and masked afterwards.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Dyadic(pub u64);

impl Dyadic {
    /// 2-adic valuation, or `None` for zero.
    pub fn valuation(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    /// Reduction modulo 2ᵏ.
    pub fn truncate(self, k: u32) -> Self {
        if k >= 64 {
            self
        } else {
            Dyadic(self.0 & ((1u64 << k) - 1))
        }
    }

    /// The i-th binary digit.
    pub fn bit(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }
}

fn inverse_odd_u64(a: u64) -> u64 {
    // Newton iteration doubles the number of correct bits each step.
    let mut x = a;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    x
}

fn bigint_mod_2_64(n: &BigInt) -> u64 {
    let m = n.mod_floor(&(BigInt::one() << 64));
    m.to_u64().expect("reduced below 2^64")
}

impl Coeff for Dyadic {
    fn zero() -> Self {
        Dyadic(0)
    }
    fn one() -> Self {
        Dyadic(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Dyadic(self.0.wrapping_add(o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        Dyadic(self.0.wrapping_sub(o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        Dyadic(self.0.wrapping_mul(o.0))
    }
    fn neg(&self) -> Self {
        Dyadic(self.0.wrapping_neg())
    }
    fn inv(&self) -> Option<Self> {
        (self.0 & 1 == 1).then(|| Dyadic(inverse_odd_u64(self.0)))
    }
    fn from_i64(n: i64) -> Self {
        Dyadic(n as u64)
    }
    fn from_rat(q: &Rat) -> Option<Self> {
        if q.denom().is_even() {
            return None;
        }
        let n = bigint_mod_2_64(q.numer());
        let d = bigint_mod_2_64(q.denom());
        Some(Dyadic(n.wrapping_mul(inverse_odd_u64(d))))
    }
    fn render(&self) -> String {
        self.0.to_string()
    }
}

/// Description of a coefficient ring, as used to validate inputs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CoefficientRing {
    /// ℤ with the listed primes inverted.
    LocalizedIntegers(Vec<u64>),
    /// ℤ[1/5, ζ] with ζ a primitive fifth root of unity.
    Cyclotomic5,
    /// 𝔽₂.
    PrimeField2,
    /// ℤ/2ᵏ.
    TruncatedDyadic(u32),
}

impl CoefficientRing {
    /// Whether a rational lies in this ring (for the localized integers).
    pub fn admits(&self, q: &Rat) -> bool {
        match self {
            CoefficientRing::LocalizedIntegers(primes) => {
                let mut d = q.denom().abs();
                for &p in primes {
                    let p = BigInt::from(p);
                    while Zero::is_zero(&(&d % &p)) {
                        d /= &p;
                    }
                }
                d.is_one()
            }
            CoefficientRing::Cyclotomic5 => {
                let mut d = q.denom().abs();
                while Zero::is_zero(&(&d % BigInt::from(5))) {
                    d /= 5;
                }
                d.is_one()
            }
            CoefficientRing::PrimeField2 | CoefficientRing::TruncatedDyadic(_) => {
                q.denom().is_odd()
            }
        }
    }

    /// True if 2 is not a unit in this ring.
    pub fn two_is_prime(&self) -> bool {
        match self {
            CoefficientRing::LocalizedIntegers(p) => !p.contains(&2),
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_relation() {
        let z4 = Cyc5::zeta_pow(4);
        assert_eq!(z4, Cyc5([int(-1), int(-1), int(-1), int(-1)]));
        assert_eq!(Cyc5::zeta_pow(5), Cyc5::one());
        let mut sum = Cyc5::zero();
        for k in 0..5 {
            sum = Coeff::add(&sum, &Cyc5::zeta_pow(k));
        }
        assert!(Coeff::is_zero(&sum));
    }

    #[test]
    fn cyc5_inverse() {
        let x = Cyc5([int(2), int(-1), rat(1, 3), int(5)]);
        let y = x.inv().unwrap();
        assert_eq!(Coeff::mul(&x, &y), Cyc5::one());
    }

    #[test]
    fn dyadic_from_rat() {
        let third = Dyadic::from_rat(&rat(1, 3)).unwrap();
        assert_eq!(Coeff::mul(&third, &Dyadic(3)), Dyadic(1));
        assert_eq!(Dyadic::from_rat(&int(-1)).unwrap(), Dyadic(u64::MAX));
        assert!(Dyadic::from_rat(&rat(1, 2)).is_none());
    }

    #[test]
    fn localized_admits() {
        let r = CoefficientRing::LocalizedIntegers(vec![5]);
        assert!(r.admits(&rat(3, 25)));
        assert!(!r.admits(&rat(1, 3)));
        assert_eq!(v2(&rat(12, 5)), Some(2));
        assert_eq!(v2(&rat(1, 8)), Some(-3));
    }
}
