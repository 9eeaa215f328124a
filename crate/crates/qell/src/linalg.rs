//! Dense exact linear algebra over ℚ and over the 2-local integers ℤ₍₂₎.

use crate::exact_algebra::{v2, Rat};
use num_traits::{One, Zero};

/// A dense matrix stored by rows.
pub type Matrix = Vec<Vec<Rat>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over ℚ.
pub fn rank(m: &Matrix) -> usize {
    rref(&mut m.clone()).len()
}

/// A basis of {v : M v = 0}.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solve Σ xᵢ colᵢ = rhs; `None` if inconsistent. Free variables are set to zero.
pub fn solve_columns(columns: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = columns.len();
    let mut a: Matrix = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = a[row][n].clone();
    }
    Some(x)
}

/// 2-adic valuation with zero mapped to `i64::MAX`.
pub fn val2(q: &Rat) -> i64 {
    v2(q).unwrap_or(i64::MAX)
}

/// Whether the system Σ xᵢ colᵢ = rhs has a solution with all xᵢ ∈ ℤ₍₂₎.
///
/// Diagonalizes by row and column operations that pivot on an entry of least
/// 2-adic valuation, so every column operation is invertible over ℤ₍₂₎.
pub fn solvable_2local(columns: &[Vec<Rat>], rhs: &[Rat]) -> bool {
    let rows = rhs.len();
    let n = columns.len();
    let mut a: Matrix = (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let mut b: Vec<Rat> = rhs.to_vec();
    let mut row_done = vec![false; rows];
    let mut col_done = vec![false; n];
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in (0..rows).filter(|&i| !row_done[i]) {
            for j in (0..n).filter(|&j| !col_done[j]) {
                let v = val2(&a[i][j]);
                if v != i64::MAX && best.is_none_or(|t| v < t.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((pv, pi, pj)) = best else { break };
        let prow = a[pi].clone();
        let piv = prow[pj].clone();
        for i in 0..rows {
            if i == pi || a[i][pj].is_zero() {
                continue;
            }
            let f = &a[i][pj] / &piv;
            for (x, p) in a[i].iter_mut().zip(&prow) {
                *x -= &f * p;
            }
            let d = &f * &b[pi];
            b[i] -= d;
        }
        // Column operations clear the rest of the pivot row; they only touch
        // this row because the pivot column is now zero elsewhere.
        for (j, x) in a[pi].iter_mut().enumerate() {
            if j != pj {
                *x = Rat::zero();
            }
        }
        if val2(&b[pi]) < pv {
            return false;
        }
        row_done[pi] = true;
        col_done[pj] = true;
    }
    (0..rows).all(|i| row_done[i] || b[i].is_zero())
}

/// A finitely generated ℤ₍₂₎-module ℤ₍₂₎^free ⊕ ⊕ ℤ/2^e.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Group2 {
    pub free: usize,
    /// Exponents e ≥ 1 of the cyclic torsion summands, ascending.
    pub torsion: Vec<u32>,
}

impl Group2 {
    pub fn zero() -> Self {
        Group2 { free: 0, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// A size measure: (free rank, log₂ of the torsion order).
    pub fn size(&self) -> (usize, u32) {
        (self.free, self.torsion.iter().sum())
    }
}

impl std::fmt::Display for Group2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for e in &self.torsion {
            parts.push(format!("Z/{}", 1u64 << e));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Diagonalize over ℤ₍₂₎ by minimal-valuation pivoting.
///
/// Returns the pivots (row, column, valuation) and, if requested, the column
/// transform V with its inverse, so that (row ops)·M·V is diagonal.
fn diagonalize(m: &Matrix, cols: usize, track: bool) -> (Vec<(usize, usize, i64)>, Matrix, Matrix) {
    let rows = m.len();
    let mut a = m.clone();
    let ident = |n: usize| -> Matrix {
        (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
    };
    let (mut v, mut vinv) = if track { (ident(cols), ident(cols)) } else { (Vec::new(), Vec::new()) };
    let mut row_done = vec![false; rows];
    let mut col_done = vec![false; cols];
    let mut pivots = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in (0..rows).filter(|&i| !row_done[i]) {
            for j in (0..cols).filter(|&j| !col_done[j]) {
                let val = val2(&a[i][j]);
                if val != i64::MAX && best.is_none_or(|t| val < t.0) {
                    best = Some((val, i, j));
                }
            }
        }
        let Some((pv, pi, pj)) = best else { break };
        let prow = a[pi].clone();
        let piv = prow[pj].clone();
        for i in 0..rows {
            if i == pi || a[i][pj].is_zero() {
                continue;
            }
            let f = &a[i][pj] / &piv;
            for (x, p) in a[i].iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        for j in 0..cols {
            if j == pj || a[pi][j].is_zero() {
                continue;
            }
            let f = &a[pi][j] / &piv;
            a[pi][j] = Rat::zero();
            if track {
                // col_j -= f·col_pj on V; row_pj += f·row_j on V⁻¹.
                for row in v.iter_mut() {
                    let d = &f * &row[pj];
                    row[j] -= d;
                }
                let rj = vinv[j].clone();
                for (x, y) in vinv[pj].iter_mut().zip(&rj) {
                    *x += &f * y;
                }
            }
        }
        row_done[pi] = true;
        col_done[pj] = true;
        pivots.push((pi, pj, pv));
    }
    (pivots, v, vinv)
}

/// 2-adic valuations of the nonzero invariant factors of a matrix over ℤ₍₂₎.
pub fn invariant_factors_2local(m: &Matrix, cols: usize) -> Vec<i64> {
    let mut v: Vec<i64> = diagonalize(m, cols, false).0.into_iter().map(|p| p.2).collect();
    v.sort_unstable();
    v
}

/// The subquotient ker A / im B over ℤ₍₂₎, where A is r×n and B is n×k with AB = 0.
///
/// Both matrices must have 2-integral entries.
pub fn subquotient_2local(a: &Matrix, n: usize, b: &Matrix, k: usize) -> Group2 {
    let (pivots, _, vinv) = diagonalize(a, n, true);
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let kernel_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    // Coordinates of B's columns in the basis V restricted to the kernel columns.
    let c: Matrix = kernel_cols
        .iter()
        .map(|&kc| {
            (0..k)
                .map(|j| (0..n).map(|i| &vinv[kc][i] * &b[i][j]).sum())
                .collect()
        })
        .collect();
    let factors = invariant_factors_2local(&c, k);
    debug_assert!(factors.iter().all(|&e| e >= 0), "image not 2-integral in the kernel basis");
    Group2 {
        free: kernel_cols.len() - factors.len(),
        torsion: factors.into_iter().filter(|&e| e > 0).map(|e| e as u32).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{int, rat};

    #[test]
    fn kernel_and_solve() {
        let m = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat = m[0].iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
        let cols = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        assert_eq!(solve_columns(&cols, &[int(3), int(1)]).unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn two_local_solvability() {
        assert!(solvable_2local(&[vec![int(3)]], &[int(1)]));
        assert!(!solvable_2local(&[vec![int(2)]], &[int(1)]));
        assert!(solvable_2local(&[vec![int(2)]], &[rat(4, 3)]));
        let cols = vec![vec![int(2), int(2)], vec![int(2), int(-2)]];
        assert!(solvable_2local(&cols, &[int(4), int(0)]));
        assert!(!solvable_2local(&cols, &[int(2), int(0)]));
    }

    #[test]
    fn subquotients() {
        // Trivial C₄ module ℤ: H² = ker(σ − 1)/im N = ℤ/4.
        let zero = vec![vec![int(0)]];
        let four = vec![vec![int(4)]];
        let g = subquotient_2local(&zero, 1, &four, 1);
        assert_eq!(g.to_string(), "Z/4");
        // Twist on ℤ²: H² = ker(σ − 1)/im N = ℤ/2.
        let s_minus_1 = vec![vec![int(-1), int(1)], vec![int(1), int(-1)]];
        let n = vec![vec![int(2), int(2)], vec![int(2), int(2)]];
        assert_eq!(subquotient_2local(&s_minus_1, 2, &n, 2).to_string(), "Z/2");
        assert_eq!(subquotient_2local(&n, 2, &s_minus_1, 2).to_string(), "0");
        assert_eq!(subquotient_2local(&vec![], 2, &vec![vec![], vec![]], 0).to_string(), "Z^2");
    }
}
