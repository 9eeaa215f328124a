//! Chromatic fractions x/(2ᵏ v₁ʲ) and the cocycle test D_tot = 0 in M₀²C¹_tot.

use super::{a_function, coface, cofaces_of, d_component, digits, invariant_pair, invariant_v1_exponent, Component, Expr};
use crate::exact_algebra::truncate::dyadic_to_rat;
use crate::exact_algebra::{reduce_dyadic, AlgResult, AlgebraError, Coeff, Dyadic, Modulus};
use serde::{Deserialize, Serialize};

/// An element x/(2ᵏ v₁ʲ) of M₀²A, carrying the invariant pair (2ᴷ, v₁ᴶ) in force.
#[derive(Clone, Debug)]
pub struct ChromaticFraction {
    pub source: String,
    pub numerator: Expr,
    pub k: u32,
    pub j: i32,
    /// The smallest invariant ideal (2ᴷ, v₁ᴶ) with K = k and J ≥ j.
    pub truncation: Modulus,
}

impl ChromaticFraction {
    pub fn new(numerator: &str, k: u32, j: i32) -> AlgResult<Self> {
        if k == 0 || j < 0 {
            return Err(AlgebraError::Other(format!("denominator 2^{k} v1^{j} is not allowed")));
        }
        Ok(ChromaticFraction {
            source: numerator.to_string(),
            numerator: Expr::parse(numerator)?,
            k,
            j,
            truncation: Modulus::new(k, invariant_v1_exponent(k, j)),
        })
    }

    /// Weight of the fraction: weight of the numerator minus j.
    pub fn weight(&self) -> AlgResult<Option<i64>> {
        Ok(self.numerator.weight()?.map(|w| w - self.j as i64))
    }
}

impl std::fmt::Display for ChromaticFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})/(2^{} v1^{})", self.source, self.k, self.j)
    }
}

/// One fraction as read from JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionInput {
    pub numerator: String,
    pub k: u32,
    pub j: i32,
}

/// A formal sum of fractions as read from JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementInput {
    pub ell: u32,
    pub terms: Vec<FractionInput>,
}

impl ElementInput {
    pub fn fractions(&self) -> AlgResult<Vec<ChromaticFraction>> {
        self.terms.iter().map(|t| ChromaticFraction::new(&t.numerator, t.k, t.j)).collect()
    }
}

/// D_tot of a sum of fractions written over one invariant denominator.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub ell: u32,
    pub element: String,
    /// The common denominator 2ᴷ v₁ᴶ.
    pub k: u32,
    pub j: i32,
    /// Weight of the element (zero if all numerators are constants).
    pub weight: i64,
    /// Numerators of the Γ, B¹ and ψ components over 2ᴷ v₁ᴶ, reduced mod (2ᴷ, v₁ᴶ).
    pub gamma: String,
    pub b1: String,
    pub psi: String,
    /// The nonzero 2-adic digits of the three components.
    pub digits: Vec<String>,
    pub is_cocycle: bool,
}

/// Bring the fractions over a common invariant denominator and apply D_tot.
///
/// Numerators must make every fraction homogeneous of the same weight.
pub fn verify_cocycle_report(terms: &[ChromaticFraction], ell: u32) -> AlgResult<CocycleReport> {
    if terms.is_empty() {
        return Err(AlgebraError::Other("empty element".into()));
    }
    let mut weight = None;
    for t in terms {
        if let Some(w) = t.weight()? {
            if weight.is_some_and(|v| v != w) {
                return Err(AlgebraError::Other(format!("incompatible truncations: {t} has weight {w}")));
            }
            weight = Some(w);
        }
    }
    let kk = terms.iter().map(|t| t.k).max().expect("nonempty");
    let jj = invariant_v1_exponent(kk, terms.iter().map(|t| t.j).max().expect("nonempty"));
    debug_assert!(invariant_pair(kk, jj));
    let m = Modulus::new(kk, jj);
    let mut n = Expr::int(0);
    for t in terms {
        let scale = Expr::parse(&format!("{}*a1^{}", 1u64 << (kk - t.k), jj - t.j))?;
        n = n.add(scale.mul(t.numerator.clone()));
    }
    let mut shown = Vec::new();
    let mut leading = Vec::new();
    let mut zero = true;
    for c in [Component::Gamma, Component::B1, Component::Psi] {
        let cf = coface(c, ell)?;
        let v = if cf.v1_unit == 1 {
            d_component(&n, &cf, m)?
        } else {
            // d₀(v₁ᴶ) = uᴶ v₁ᴶ, so the numerator picks up u⁻ᴶ.
            let (a, b) = cofaces_of(&n, &cf, m)?;
            let u = Dyadic(cf.v1_unit.wrapping_pow(jj as u32)).inv().expect("odd unit");
            reduce_dyadic(&a.scale(&u).sub(&b), m)
        };
        zero &= v.is_zero();
        for ((i, j), d) in digits(&v, kk) {
            leading.push(format!("{c}: 2^{i} v1^{j} ({d})"));
        }
        shown.push(dyadic_to_rat(&v).to_string());
    }
    let element = terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ");
    let [gamma, b1, psi]: [String; 3] = shown.try_into().expect("three components");
    Ok(CocycleReport { ell, element, k: kk, j: jj, weight: weight.unwrap_or(0), gamma, b1, psi, digits: leading, is_cocycle: zero })
}

/// True iff D_tot of the sum vanishes in M₀²C¹_tot.
pub fn verify_cocycle(terms: &[ChromaticFraction], ell: u32) -> AlgResult<bool> {
    Ok(verify_cocycle_report(terms, ell)?.is_cocycle)
}

/// A cocycle named by its leading fraction, with the correction summands
/// ("terms with smaller denominators") that make it exact.
#[derive(Clone, Debug, Serialize)]
pub struct CertifiedCocycle {
    /// Which divisibility statement it certifies.
    pub case: &'static str,
    pub m: u32,
    pub n: u32,
    pub k: u32,
    pub j: i32,
    /// The leading name a₃^{m2ⁿ}/(2ᵏ v₁ʲ).
    pub name: String,
    pub terms: Vec<String>,
    pub verified: bool,
}

fn certify(case: &'static str, m: u32, n: u32, k: u32, j: i32, terms: Vec<ChromaticFraction>) -> AlgResult<CertifiedCocycle> {
    let verified = verify_cocycle(&terms, 3)?;
    Ok(CertifiedCocycle {
        case,
        m,
        n,
        k,
        j,
        name: format!("a3^{}/(2^{k} v1^{j})", m << n),
        terms: terms.iter().map(|t| t.to_string()).collect(),
        verified,
    })
}

/// The Q(3) cocycles realizing the 2-divisibility of a₃^{m2ⁿ}/(2ᵏv₁ʲ), for
/// the given odd m, 2 ≤ n ≤ n_max and 2 ≤ k ≤ k_max.
///
/// - k = 3, n = 2, j = 2: x₂ᵐ/8v₁² + x₀^{4m+1}/2v₁⁵ + a₃^{4m−3}(a₄+a₂²)²/2v₁.
/// - k = 2, 2j ≤ a(n−1): x₂^{m2ⁿ⁻²}/4v₁^{2j}.
/// - k ≥ 3, j = i·2^{k−2} ≤ a(n−k+1): x₂^{m2ⁿ⁻²}/2ᵏv₁ʲ, plus x₀^{m2ⁿ+1}/2v₁^{j+3} for i odd.
pub fn certified_cocycles(ms: &[u32], n_max: u32, k_max: u32) -> AlgResult<Vec<CertifiedCocycle>> {
    let mut out = Vec::new();
    for &m in ms {
        out.push(certify(
            "Q3beta1",
            m,
            2,
            3,
            2,
            vec![
                ChromaticFraction::new(&format!("x2^{m}"), 3, 2)?,
                ChromaticFraction::new(&format!("x0^{}", 4 * m + 1), 1, 5)?,
                ChromaticFraction::new(&format!("a3^{}*(a4 + a2^2)^2", 4 * m - 3), 1, 1)?,
            ],
        )?);
        for n in 2..=n_max {
            let x2 = format!("x2^{}", m << (n - 2));
            for j2 in (2..=a_function(n - 1) as i32).step_by(2) {
                out.push(certify("Q3beta2", m, n, 2, j2, vec![ChromaticFraction::new(&x2, 2, j2)?])?);
            }
            for k in 3..=k_max.min(n + 1) {
                let step = 1i32 << (k - 2);
                let bound = a_function(n + 1 - k) as i32;
                for i in 1..=bound / step {
                    let j = i * step;
                    let mut terms = vec![ChromaticFraction::new(&x2, k, j)?];
                    if i % 2 == 1 {
                        terms.push(ChromaticFraction::new(&format!("x0^{}", (m << n) + 1), 1, j + 3)?);
                    }
                    out.push(certify("Q3beta3", m, n, k, j, terms)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: &str, k: u32, j: i32) -> ChromaticFraction {
        ChromaticFraction::new(n, k, j).unwrap()
    }

    #[test]
    fn examples() {
        assert!(verify_cocycle(&[f("1", 1, 1)], 3).unwrap());
        assert!(verify_cocycle(&[f("x2", 3, 2), f("x0^5", 1, 5), f("a3*(a4 + a2^2)^2", 1, 1)], 3).unwrap());
        assert!(!verify_cocycle(&[f("a3", 2, 1)], 3).unwrap());
        assert!(!verify_cocycle(&[f("x2", 3, 2)], 3).unwrap());
        assert!(verify_cocycle(&[f("x2", 1, 8)], 5).unwrap());
        assert!(!verify_cocycle(&[f("x2", 1, 8)], 3).unwrap());
        assert!(verify_cocycle(&[f("x2", 1, 6)], 3).unwrap());
        assert!(verify_cocycle_report(&[f("x2", 1, 1), f("a3", 1, 1)], 3).is_err());
    }

    #[test]
    fn certified_q3_cocycles() {
        let all = certified_cocycles(&[1, 3], 4, 5).unwrap();
        assert!(all.len() > 20);
        for c in &all {
            assert!(c.verified, "{} {:?}", c.name, c.terms);
        }
    }
}
