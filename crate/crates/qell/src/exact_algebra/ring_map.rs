//! Ring homomorphisms given by generator images.

use super::coeff::Coeff;
use super::error::{AlgResult, AlgebraError};
use super::poly::{GeneratorTable, Poly};
use std::sync::Arc;

/// A named homomorphism between polynomial rings over the same coefficients.
#[derive(Clone, Debug)]
pub struct RingMap<C: Coeff> {
    name: String,
    source: Arc<GeneratorTable>,
    target: Arc<GeneratorTable>,
    images: Vec<Poly<C>>,
    inverses: Vec<Option<Poly<C>>>,
}

impl<C: Coeff> RingMap<C> {
    /// Build a map from one image per source generator.
    ///
    /// Images of invertible generators must be unit monomials in the target.
    pub fn new(
        name: &str,
        source: &Arc<GeneratorTable>,
        target: &Arc<GeneratorTable>,
        images: Vec<Poly<C>>,
    ) -> AlgResult<Self> {
        if images.len() != source.len() {
            return Err(AlgebraError::Other(format!(
                "map `{name}` needs {} images, got {}",
                source.len(),
                images.len()
            )));
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (i, im) in images.iter().enumerate() {
            if im.table() != target {
                return Err(AlgebraError::RingMismatch(
                    format!("{:?}", im.table().names()),
                    format!("{:?}", target.names()),
                ));
            }
            if source.is_invertible(i) {
                let inv = im
                    .monomial_inverse()
                    .ok_or_else(|| AlgebraError::NotAUnit(im.to_string()))?;
                inverses.push(Some(inv));
            } else {
                inverses.push(None);
            }
        }
        Ok(RingMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            images,
            inverses,
        })
    }

    /// Build a map from `(generator name, image)` pairs; unnamed generators map to themselves
    /// when the target has a generator of the same name.
    pub fn from_named(
        name: &str,
        source: &Arc<GeneratorTable>,
        target: &Arc<GeneratorTable>,
        named: &[(&str, Poly<C>)],
    ) -> AlgResult<Self> {
        let mut images = Vec::with_capacity(source.len());
        for g in source.names() {
            let im = match named.iter().find(|(n, _)| n == g) {
                Some((_, p)) => p.clone(),
                None => Poly::var(target, g)?,
            };
            images.push(im);
        }
        for (n, _) in named {
            if source.index(n).is_none() {
                return Err(AlgebraError::UnknownGenerator(n.to_string()));
            }
        }
        Self::new(name, source, target, images)
    }

    /// The identity map of a ring.
    pub fn identity(table: &Arc<GeneratorTable>) -> Self {
        let images = (0..table.len()).map(|i| Poly::gen(table, i)).collect();
        Self::new("id", table, table, images).expect("identity is well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<GeneratorTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneratorTable> {
        &self.target
    }

    /// Image of the generator at position `i`.
    pub fn image(&self, i: usize) -> &Poly<C> {
        &self.images[i]
    }

    /// Image of a generator by name.
    pub fn image_of(&self, name: &str) -> AlgResult<&Poly<C>> {
        let i = self
            .source
            .index(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        Ok(&self.images[i])
    }

    /// Apply the map to an element of the source ring.
    pub fn eval(&self, x: &Poly<C>) -> AlgResult<Poly<C>> {
        if x.table() != &self.source {
            return Err(AlgebraError::RingMismatch(
                format!("{:?}", x.table().names()),
                format!("{:?}", self.source.names()),
            ));
        }
        let n = self.source.len();
        let mut pos: Vec<Vec<Poly<C>>> = vec![Vec::new(); n];
        let mut neg: Vec<Vec<Poly<C>>> = vec![Vec::new(); n];
        let mut out = Poly::zero(&self.target);
        for (m, c) in x.terms() {
            let mut t = Poly::constant(&self.target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (cache, base) = if e > 0 {
                    (&mut pos[i], &self.images[i])
                } else {
                    let b = self.inverses[i]
                        .as_ref()
                        .ok_or_else(|| AlgebraError::NegativePower(self.source.name(i).to_string()))?;
                    (&mut neg[i], b)
                };
                let k = e.unsigned_abs() as usize;
                while cache.len() < k {
                    let next = match cache.last() {
                        None => base.clone(),
                        Some(p) => p.mul(base),
                    };
                    cache.push(next);
                }
                t = t.mul(&cache[k - 1]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// The composite `next ∘ self`.
    pub fn then(&self, next: &RingMap<C>) -> AlgResult<RingMap<C>> {
        let images = self
            .images
            .iter()
            .map(|p| next.eval(p))
            .collect::<AlgResult<Vec<_>>>()?;
        RingMap::new(
            &format!("{}∘{}", next.name, self.name),
            &self.source,
            &next.target,
            images,
        )
    }

    /// Same map with a new name.
    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Apply a coefficient change to every image.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> AlgResult<RingMap<D>> {
        RingMap::new(
            &self.name,
            &self.source,
            &self.target,
            self.images.iter().map(|p| p.map_coeffs(f)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::coeff::{int, Rat};

    #[test]
    fn eval_and_compose() {
        let t = GeneratorTable::plain(&[("a1", 1), ("u", 1)]);
        let a1 = Poly::<Rat>::var(&t, "a1").unwrap();
        let u = Poly::<Rat>::var(&t, "u").unwrap();
        let two = RingMap::from_named("[2]", &t, &t, &[("u", &a1 - &u), ("a1", &a1 - &u.scale(&int(2)))])
            .unwrap();
        assert_eq!(two.eval(&u).unwrap(), &a1 - &u);
        let four = two.then(&two).unwrap().then(&two).unwrap().then(&two).unwrap();
        assert_eq!(four.eval(&u).unwrap(), u);
        assert_eq!(four.eval(&a1).unwrap(), a1);
    }
}
