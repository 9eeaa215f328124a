//! A minimal ring-element interface shared by polynomials and fractions.

use super::coeff::Coeff;
use super::poly::Poly;
use super::rational_function::RationalFunction;
use std::fmt::{Debug, Display};

/// Commutative ring element carrying its own ring context.
pub trait RingElem: Clone + PartialEq + Debug + Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Exact quotient when the divisor is a unit (or the ring is a field), or
    /// in the trivial cases 0/d and d/d.
    fn try_div(&self, d: &Self) -> Option<Self>;
    fn pow_u(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
    fn scaled(&self, n: i64) -> Self {
        self.times(&self.int_like(n))
    }
}

impl<C: Coeff> RingElem for Poly<C> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.table())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.table())
    }
    fn int_like(&self, n: i64) -> Self {
        Poly::from_int(self.table(), n)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn negated(&self) -> Self {
        Poly::neg(self)
    }
    fn try_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if self == d {
            return Some(self.one_like());
        }
        d.monomial_inverse().map(|i| Poly::mul(self, &i))
    }
    fn pow_u(&self, n: u32) -> Self {
        self.pow(n)
    }
}

impl<C: Coeff> RingElem for RationalFunction<C> {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.table())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.table())
    }
    fn int_like(&self, n: i64) -> Self {
        RationalFunction::from_poly(Poly::from_int(self.table(), n))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn try_div(&self, d: &Self) -> Option<Self> {
        self.div(d).ok()
    }
}
