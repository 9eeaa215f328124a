//! Exact coefficient rings and graded multivariate Laurent polynomials.

pub mod coeff;
pub mod elem;
pub mod error;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod rational_function;
pub mod ring_map;
pub mod truncate;

pub use coeff::{cyclotomic_normalize, int, rat, v2, Coeff, CoefficientRing, Cyc5, Dyadic, Rat, F2};
pub use elem::RingElem;
pub use error::{AlgResult, AlgebraError};
pub use modp::{pow_mod_u64, rat_mod_p, CompiledPoly};
pub use parse::{parse_poly, parse_rat, parse_with};
pub use poly::{GeneratorTable, Mono, Poly, WeightInfo};
pub use rational_function::RationalFunction;
pub use ring_map::RingMap;
pub use truncate::{mul_mod, pow_mod, reduce_dyadic, reduce_truncated, to_dyadic, Modulus};
