//! Graded multivariate Laurent polynomials over a pluggable coefficient ring.

use super::coeff::Coeff;
use super::error::{AlgResult, AlgebraError};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Exponent vector, one slot per generator of the table.
pub type Mono = SmallVec<[i32; 8]>;

/// Ordered generator symbols with weights and invertibility flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    names: Vec<String>,
    weights: Vec<i64>,
    invertible: Vec<bool>,
}

impl GeneratorTable {
    /// Build a table from `(name, weight, invertible)` triples.
    pub fn new(gens: &[(&str, i64, bool)]) -> Arc<Self> {
        Arc::new(GeneratorTable {
            names: gens.iter().map(|s| s.0.to_string()).collect(),
            weights: gens.iter().map(|s| s.1).collect(),
            invertible: gens.iter().map(|s| s.2).collect(),
        })
    }

    /// A table of non-invertible generators.
    pub fn plain(gens: &[(&str, i64)]) -> Arc<Self> {
        let v: Vec<_> = gens.iter().map(|&(n, w)| (n, w, false)).collect();
        Self::new(&v)
    }

    /// This table followed by extra generators.
    pub fn extended(&self, extra: &[(&str, i64, bool)]) -> Arc<Self> {
        let mut t = self.clone();
        for &(n, w, i) in extra {
            t.names.push(n.to_string());
            t.weights.push(w);
            t.invertible.push(i);
        }
        Arc::new(t)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    /// Position of a generator by name.
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weight of a monomial.
    pub fn mono_weight(&self, m: &[i32]) -> i64 {
        m.iter().zip(&self.weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    /// The zero exponent vector.
    pub fn unit_mono(&self) -> Mono {
        SmallVec::from_elem(0, self.len())
    }

    fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

/// Result of a homogeneity query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightInfo {
    Zero,
    Homogeneous(i64),
    Mixed,
}

/// A polynomial: a finite map from exponent vectors to nonzero coefficients.
#[derive(Clone)]
pub struct Poly<C: Coeff> {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        GeneratorTable::same(&self.table, &other.table) && self.terms == other.terms
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Poly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: C) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(table.unit_mono(), c);
        }
        p
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::constant(table, C::one())
    }

    pub fn from_int(table: &Arc<GeneratorTable>, n: i64) -> Self {
        Self::constant(table, C::from_i64(n))
    }

    /// The generator at position `i`.
    pub fn gen(table: &Arc<GeneratorTable>, i: usize) -> Self {
        let mut m = table.unit_mono();
        m[i] = 1;
        Self::term(table, m, C::one())
    }

    /// The generator with the given name.
    pub fn var(table: &Arc<GeneratorTable>, name: &str) -> AlgResult<Self> {
        let i = table
            .index(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        Ok(Self::gen(table, i))
    }

    /// A single term, checking that only invertible generators carry negative exponents.
    pub fn monomial(table: &Arc<GeneratorTable>, m: Mono, c: C) -> AlgResult<Self> {
        for (i, &e) in m.iter().enumerate() {
            if e < 0 && !table.is_invertible(i) {
                return Err(AlgebraError::NegativePower(table.name(i).to_string()));
            }
        }
        Ok(Self::term(table, m, c))
    }

    fn term(table: &Arc<GeneratorTable>, m: Mono, c: C) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub(crate) fn from_map(table: &Arc<GeneratorTable>, terms: BTreeMap<Mono, C>) -> Self {
        Poly { table: table.clone(), terms }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    /// Terms in internal (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &[i32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&self.table.unit_mono())
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&self.table.unit_mono()[..]).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    fn check_table(&self, o: &Self) {
        assert!(
            GeneratorTable::same(&self.table, &o.table),
            "ring mismatch: {:?} vs {:?}",
            self.table.names(),
            o.table.names()
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_table(o);
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        Poly { table: self.table.clone(), terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| Some(c.neg()))
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(&self.table);
        }
        self.map_terms(|c| {
            let x = c.mul(s);
            (!x.is_zero()).then_some(x)
        })
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_table(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.table);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        let mut acc: FxHashMap<Mono, C> = FxHashMap::default();
        acc.reserve(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mono = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                let c = c1.mul(c2);
                match acc.get_mut(&m) {
                    Some(x) => x.add_assign(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly { table: self.table.clone(), terms }
    }

    /// Nonnegative power by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.table);
        while n > 0 {
            if n & 1 == 1 {
                acc = Self::mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = Self::mul(&base, &base);
            }
        }
        acc
    }

    /// Apply a coefficient map to every term, dropping zeros.
    pub fn map_terms(&self, f: impl Fn(&C) -> Option<C>) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| f(c).filter(|x| !x.is_zero()).map(|x| (m.clone(), x)))
            .collect();
        Poly { table: self.table.clone(), terms }
    }

    /// Change the coefficient type, dropping terms that become zero.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        Poly { table: self.table.clone(), terms }
    }

    /// Fallible change of coefficient type.
    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Option<D>) -> Option<Poly<D>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.insert(m.clone(), d);
            }
        }
        Some(Poly { table: self.table.clone(), terms })
    }

    /// Keep the terms satisfying a predicate on the exponent vector.
    pub fn filter_monos(&self, keep: impl Fn(&[i32]) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly { table: self.table.clone(), terms }
    }

    /// Drop every term whose exponent of generator `i` is at least `j`.
    pub fn truncate_var(&self, i: usize, j: i32) -> Self {
        self.filter_monos(|m| m[i] < j)
    }

    /// Smallest exponent of generator `i` among the terms.
    pub fn min_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m[i]).min()
    }

    /// Largest exponent of generator `i` among the terms.
    pub fn max_exponent(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    /// Multiply by a monomial with unit coefficient.
    pub fn shift(&self, m: &[i32]) -> AlgResult<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let s: Mono = k.iter().zip(m).map(|(a, b)| a + b).collect();
            terms.insert(s, c.clone());
        }
        let p = Poly { table: self.table.clone(), terms };
        p.check_exponents()?;
        Ok(p)
    }

    fn check_exponents(&self) -> AlgResult<()> {
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e < 0 && !self.table.is_invertible(i) {
                    return Err(AlgebraError::NegativePower(self.table.name(i).to_string()));
                }
            }
        }
        Ok(())
    }

    /// Homogeneity query.
    pub fn weight_info(&self) -> WeightInfo {
        let mut w = None;
        for m in self.terms.keys() {
            let x = self.table.mono_weight(m);
            match w {
                None => w = Some(x),
                Some(y) if y != x => return WeightInfo::Mixed,
                _ => {}
            }
        }
        match w {
            None => WeightInfo::Zero,
            Some(x) => WeightInfo::Homogeneous(x),
        }
    }

    /// The common weight, or an error for mixed weight. Zero reports `None`.
    pub fn weight(&self) -> AlgResult<Option<i64>> {
        match self.weight_info() {
            WeightInfo::Zero => Ok(None),
            WeightInfo::Homogeneous(w) => Ok(Some(w)),
            WeightInfo::Mixed => Err(AlgebraError::MixedWeight),
        }
    }

    /// If the polynomial is a unit monomial, return its inverse.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if m.iter().enumerate().any(|(i, &e)| e != 0 && !self.table.is_invertible(i)) {
            return None;
        }
        let inv: Mono = m.iter().map(|e| -e).collect();
        Some(Self::term(&self.table, inv, c.inv()?))
    }

    /// Exact quotient by a unit monomial.
    pub fn div_by_unit(&self, d: &Self) -> AlgResult<Self> {
        let inv = d.monomial_inverse().ok_or_else(|| AlgebraError::NotAUnit(d.to_string()))?;
        Ok(self.mul(&inv))
    }

    /// Reinterpret in another table by matching generator names.
    pub fn embed(&self, target: &Arc<GeneratorTable>) -> AlgResult<Self> {
        let mut idx = Vec::with_capacity(self.table.len());
        for n in self.table.names() {
            idx.push(
                target
                    .index(n)
                    .ok_or_else(|| AlgebraError::UnknownGenerator(n.clone()))?,
            );
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = target.unit_mono();
            for (i, &e) in m.iter().enumerate() {
                t[idx[i]] += e;
            }
            terms.insert(t, c.clone());
        }
        let p = Poly { table: target.clone(), terms };
        p.check_exponents()?;
        Ok(p)
    }

    /// Group terms by the exponent of generator `i`: `self = Σ g_i^e · c_e`.
    pub fn coefficients_in(&self, i: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, BTreeMap<Mono, C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k[i];
            k[i] = 0;
            out.entry(e).or_default().insert(k, c.clone());
        }
        out.into_iter()
            .map(|(e, t)| (e, Poly { table: self.table.clone(), terms: t }))
            .collect()
    }

    /// Terms in canonical printing order: ascending weight, then descending exponent vector.
    pub fn ordered_terms(&self) -> Vec<(&Mono, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.canonical_cmp(a.0, b.0));
        v
    }

    fn canonical_cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        self.table
            .mono_weight(a)
            .cmp(&self.table.mono_weight(b))
            .then_with(|| b.cmp(a))
    }

    /// Render a monomial as `g1^e1*g2^e2`, or the empty string for 1.
    pub fn mono_string(table: &GeneratorTable, m: &[i32]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(table.name(i).to_string()),
                _ => parts.push(format!("{}^{}", table.name(i), e)),
            }
        }
        parts.join("*")
    }
}

pub(crate) fn accumulate<C: Coeff>(terms: &mut BTreeMap<Mono, C>, m: Mono, c: &C) {
    match terms.get_mut(&m) {
        Some(x) => {
            x.add_assign(c);
            if x.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(m, c.clone());
            }
        }
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.ordered_terms() {
            let ms = Self::mono_string(&self.table, m);
            let (neg, body) = if c.is_compound() {
                let cs = format!("({})", c.render());
                (false, if ms.is_empty() { cs } else { format!("{cs}*{ms}") })
            } else {
                let cs = c.render();
                let (neg, mag) = match cs.strip_prefix('-') {
                    Some(r) => (true, r.to_string()),
                    None => (false, cs),
                };
                let body = match (ms.is_empty(), mag == "1") {
                    (true, _) => mag,
                    (false, true) => ms,
                    (false, false) => format!("{mag}*{ms}"),
                };
                (neg, body)
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<C: Coeff> serde::Serialize for Poly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: &Poly<C>) -> Poly<C> {
                Poly::$m(self, o)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                Poly::$m(&self, &o)
            }
        }
        impl<C: Coeff> $tr<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: &Poly<C>) -> Poly<C> {
                Poly::$m(&self, o)
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $m(self, o: Poly<C>) -> Poly<C> {
                Poly::$m(self, &o)
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(self)
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::coeff::{int, Rat};

    fn ring() -> Arc<GeneratorTable> {
        GeneratorTable::new(&[("a1", 1, false), ("a3", 3, false), ("D", 12, true)])
    }

    #[test]
    fn arithmetic_and_printing() {
        let t = ring();
        let a1 = Poly::<Rat>::var(&t, "a1").unwrap();
        let a3 = Poly::<Rat>::var(&t, "a3").unwrap();
        let p = &a1.pow(4) - &(&a1 * &a3).scale(&int(24));
        assert_eq!(p.to_string(), "a1^4 - 24*a1*a3");
        assert_eq!(p.weight().unwrap(), Some(4));
        assert_eq!((&a1 + &a3).weight_info(), WeightInfo::Mixed);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn laurent_rules() {
        let t = ring();
        let d = Poly::<Rat>::var(&t, "D").unwrap();
        let inv = d.monomial_inverse().unwrap();
        assert!((&d * &inv).is_one());
        let a1 = Poly::<Rat>::var(&t, "a1").unwrap();
        assert!(a1.monomial_inverse().is_none());
        let mut m = t.unit_mono();
        m[0] = -1;
        assert!(Poly::<Rat>::monomial(&t, m, int(1)).is_err());
    }
}
