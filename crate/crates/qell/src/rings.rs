//! Generator tables of the rings used throughout the crate.

use crate::exact_algebra::GeneratorTable;
use std::sync::{Arc, LazyLock};

/// A = ℤ[a₁, a₂, a₃, a₄, a₆] (holomorphic part).
pub static A: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| GeneratorTable::plain(&[("a1", 1), ("a2", 2), ("a3", 3), ("a4", 4), ("a6", 6)]));

/// Γ = A[r, s, t].
pub static GAMMA: LazyLock<Arc<GeneratorTable>> = LazyLock::new(|| {
    GeneratorTable::plain(&[
        ("a1", 1),
        ("a2", 2),
        ("a3", 3),
        ("a4", 4),
        ("a6", 6),
        ("r", 2),
        ("s", 1),
        ("t", 3),
    ])
});

/// B¹(3) = ℤ[1/3][a₁, a₃].
pub static B1_3: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| GeneratorTable::plain(&[("a1", 1), ("a3", 3)]));

/// B¹(5) = ℤ[1/5][a₁, u].
pub static B1_5: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| GeneratorTable::plain(&[("a1", 1), ("u", 1)]));

/// Γ₀(5) invariants ℤ[1/5][b₂, b₄, δ] (subject to b₄² = b₂²δ − 4δ²).
pub static MF5: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| GeneratorTable::plain(&[("b2", 2), ("b4", 4), ("delta", 4)]));

/// Level-one modular forms ℤ[c₄, c₆, Δ] (subject to c₄³ − c₆² = 1728Δ).
pub static TMF: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| GeneratorTable::plain(&[("c4", 4), ("c6", 6), ("Delta", 12)]));

/// The parameter ring ℤ[b] of the Tate normal form T(b).
pub static TATE: LazyLock<Arc<GeneratorTable>> = LazyLock::new(|| GeneratorTable::plain(&[("b", 0)]));

/// The coordinate ring ℤ[a₁, a₂, a₃] of the homogeneous Tate form T¹.
pub static T1: LazyLock<Arc<GeneratorTable>> =
    LazyLock::new(|| GeneratorTable::plain(&[("a1", 1), ("a2", 2), ("a3", 3)]));

/// ℤ[1/5][x, y], the coordinate ring of TMF₁(5) in the group cohomology module.
pub static XY: LazyLock<Arc<GeneratorTable>> = LazyLock::new(|| GeneratorTable::plain(&[("x", 1), ("y", 1)]));

/// The rationals: a ring with no generators.
pub static QQ: LazyLock<Arc<GeneratorTable>> = LazyLock::new(|| GeneratorTable::new(&[]));
