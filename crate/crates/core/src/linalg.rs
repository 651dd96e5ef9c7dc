//! Exact linear algebra over the rationals.
//!
//! Dense row-major matrices. Elimination pivots on the first column holding a
//! nonzero entry and, within it, the smallest remaining row index, so every
//! basis produced here is reproducible.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{one, zero, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form and the pivot columns.
pub fn rref(mut m: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = one() / &m[row][col];
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let delta = &f * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF.
pub fn row_space_basis(vectors: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(vectors.to_vec(), ncols);
    r.into_iter().take(pivots.len()).collect()
}

/// Basis of `{x : m x = 0}`, one vector per free column, then RREF-normalized.
pub fn kernel_basis(m: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m.clone(), ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero(); ncols];
        v[free] = one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[i][free].clone();
        }
        out.push(v);
    }
    row_space_basis(&out, ncols)
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    rref(m.clone(), ncols).1.len()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
///
/// Shares no code with [`rref`]; used to cross-check dimension counts.
pub fn rank_fraction_free(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for r in row + 1..nrows {
            for c in col + 1..ncols {
                let num = &a[row][col] * &a[r][c] - &a[r][col] * &a[row][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
    }
    row
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Finds `u >= 0` with `a u = b`, or `None` when the system is infeasible.
///
/// Phase-one simplex over exact rationals with Bland's rule.
pub fn nonnegative_solution(a: &Matrix, b: &[Rational], nvars: usize) -> Option<Vec<Rational>> {
    let m = a.len();
    let width = nvars + m + 1;
    let rhs = width - 1;
    let mut t: Matrix = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = vec![zero(); width];
        for j in 0..nvars {
            r[j] = if flip {
                -row[j].clone()
            } else {
                row[j].clone()
            };
        }
        r[nvars + i] = one();
        r[rhs] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(r);
    }
    let mut cost = vec![zero(); width];
    for r in &t {
        for j in 0..nvars {
            cost[j] -= &r[j];
        }
        cost[rhs] -= &r[rhs];
    }
    t.push(cost);
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();

    loop {
        let Some(enter) = (0..rhs).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero.
        let (pr, _) = leave?;
        let inv = one() / &t[pr][enter];
        for c in 0..width {
            t[pr][c] = &t[pr][c] * &inv;
        }
        for r in 0..=m {
            if r != pr && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for c in 0..width {
                    let delta = &f * &t[pr][c];
                    t[r][c] -= delta;
                }
            }
        }
        basis[pr] = enter;
    }

    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut u = vec![zero(); nvars];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < nvars {
            u[bv] = t[i][rhs].clone();
        }
    }
    Some(u)
}
