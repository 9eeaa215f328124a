//! Exact computer algebra for the Q(3) and Q(5) spectra.
//!
//! The crate covers Weierstrass curves and their transformations, Vélu
//! quotients, the Weierstrass and Γ₀(5) Hopf algebroids, the level-ℓ structure
//! maps f*, q*, t*, ψ^ℓ, the cohomology of 𝔽₅ˣ acting on ℤ[1/5][x, y], the
//! 2-adic leading-term calculus on chromatic fractions, and the degree-wise
//! d₁ leading-term tables.

pub mod exact_algebra;
pub mod charts;
pub mod chromatic;
pub mod group_cohomology;
pub mod hopf;
pub mod level_maps;
pub mod linalg;
pub mod rings;
pub mod velu;
pub mod weierstrass;

pub use exact_algebra::{
    AlgResult, AlgebraError, RingElem, Coeff, CoefficientRing, Cyc5, Dyadic, GeneratorTable, Poly, Rat, RationalFunction, RingMap, F2,
};
