//! Fractions of polynomials, compared by cross-multiplication.

use super::coeff::Coeff;
use super::error::{AlgResult, AlgebraError};
use super::poly::{GeneratorTable, Mono, Poly};
use std::fmt;
use std::sync::Arc;

/// Terms above which arithmetic triggers univariate gcd reduction.
const REDUCE_THRESHOLD: usize = 24;

/// A fraction `numerator / denominator` with nonzero denominator.
#[derive(Clone, Debug)]
pub struct RationalFunction<C: Coeff> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Coeff> PartialEq for RationalFunction<C> {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl<C: Coeff> RationalFunction<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> AlgResult<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RationalFunction { num, den }.normalized())
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        let den = Poly::one(p.table());
        RationalFunction { num: p, den }
    }

    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Self::from_poly(Poly::zero(table))
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::from_poly(Poly::one(table))
    }

    pub fn numerator(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<C> {
        &self.den
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.num.table()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value if the denominator divides out to a constant.
    pub fn as_poly(&self) -> Option<Poly<C>> {
        let r = self.reduced();
        let c = r.den.as_constant()?;
        Some(r.num.scale(&c.inv()?))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalFunction { num: self.num.add(&o.num), den: self.den.clone() }.normalized();
        }
        RationalFunction {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn div(&self, o: &Self) -> AlgResult<Self> {
        if o.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(RationalFunction { num: self.num.mul(&o.den), den: self.den.mul(&o.num) }.normalized())
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.num.table());
        }
        if self.num.len() + self.den.len() > REDUCE_THRESHOLD {
            return self.reduced();
        }
        self
    }

    /// Cancel the gcd when numerator and denominator involve at most one generator,
    /// and make the denominator's leading coefficient 1.
    pub fn reduced(&self) -> Self {
        let (num, den) = match single_variable(&self.num, &self.den) {
            Some(i) => {
                let a = to_dense(&self.num, i);
                let b = to_dense(&self.den, i);
                match (&a, &b) {
                    (Some(a), Some(b)) => match dense_gcd(a, b).and_then(|g| {
                        Some((dense_divrem(a, &g)?.0, dense_divrem(b, &g)?.0))
                    }) {
                        Some((qa, qb)) => (
                            from_dense(self.num.table(), i, &qa),
                            from_dense(self.num.table(), i, &qb),
                        ),
                        None => (self.num.clone(), self.den.clone()),
                    },
                    _ => (self.num.clone(), self.den.clone()),
                }
            }
            None => (self.num.clone(), self.den.clone()),
        };
        let lead = den.ordered_terms().last().map(|(_, c)| (*c).clone());
        match lead.and_then(|c| c.inv()) {
            Some(li) => RationalFunction { num: num.scale(&li), den: den.scale(&li) },
            None => RationalFunction { num, den },
        }
    }
}

impl<C: Coeff> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den.is_one() {
            write!(f, "{}", r.num)
        } else {
            write!(f, "({})/({})", r.num, r.den)
        }
    }
}

fn single_variable<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Option<usize> {
    let mut var = None;
    for p in [a, b] {
        for (m, _) in p.terms() {
            for (i, &e) in m.iter().enumerate() {
                if e < 0 {
                    return None;
                }
                if e > 0 {
                    match var {
                        None => var = Some(i),
                        Some(j) if j != i => return None,
                        _ => {}
                    }
                }
            }
        }
    }
    (!a.table().is_empty()).then_some(var.unwrap_or(0))
}

fn to_dense<C: Coeff>(p: &Poly<C>, i: usize) -> Option<Vec<C>> {
    let deg = p.max_exponent(i).unwrap_or(0).max(0) as usize;
    let mut v = vec![C::zero(); deg + 1];
    for (m, c) in p.terms() {
        v[m[i] as usize] = c.clone();
    }
    Some(v)
}

fn from_dense<C: Coeff>(t: &Arc<GeneratorTable>, i: usize, v: &[C]) -> Poly<C> {
    let mut p = Poly::zero(t);
    for (e, c) in v.iter().enumerate() {
        if !c.is_zero() {
            let mut m: Mono = t.unit_mono();
            m[i] = e as i32;
            p = p.add(&Poly::monomial(t, m, c.clone()).expect("nonnegative exponent"));
        }
    }
    p
}

fn trim<C: Coeff>(v: &mut Vec<C>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_dense<C: Coeff>(v: &[C]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn dense_divrem<C: Coeff>(a: &[C], b: &[C]) -> Option<(Vec<C>, Vec<C>)> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let lb = b.last()?.inv()?;
    if r.len() < b.len() {
        return Some((vec![C::zero()], r));
    }
    let mut q = vec![C::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !is_zero_dense(&r) {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty").mul(&lb);
        for (k, c) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&f.mul(c));
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
        if r.len() < b.len() {
            break;
        }
    }
    Some((q, r))
}

fn dense_gcd<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_dense(&y) {
        let (_, r) = dense_divrem(&x, &y)?;
        x = y;
        y = r;
    }
    let li = x.last()?.inv()?;
    Some(x.iter().map(|c| c.mul(&li)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::coeff::{int, Rat};

    #[test]
    fn cancels_common_factor() {
        let t = GeneratorTable::plain(&[("b", 1)]);
        let b = Poly::<Rat>::var(&t, "b").unwrap();
        let one = Poly::one(&t);
        let num = (&b - &one) * (&b + &one);
        let f = RationalFunction::new(num, &b - &one).unwrap().reduced();
        assert_eq!(f.as_poly().unwrap(), &b + &one);
        let g = RationalFunction::new(b.scale(&int(2)), b.scale(&int(4))).unwrap();
        assert_eq!(g, RationalFunction::new(one.clone(), one.scale(&int(2))).unwrap());
    }
}
