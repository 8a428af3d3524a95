//! Dense exact linear algebra over the rationals.
//!
//! Matrices are small (a Gram matrix over a handful of curves), so everything
//! here is plain Gaussian elimination on `Vec<Vec<Rational>>` without any
//! attempt at fraction-free tricks.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn check_square(m: &[Vec<Rational>]) -> Result<()> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row,
                len: r.len(),
            });
        }
    }
    Ok(())
}

pub fn check_symmetric(m: &[Vec<Rational>]) -> Result<()> {
    check_square(m)?;
    for i in 0..m.len() {
        for j in (i + 1)..m.len() {
            if m[i][j] != m[j][i] {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Determinant by elimination with row swaps.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Leading principal minors `det(m[..k][..k])` for `k = 1..=n`.
pub fn leading_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    (1..=m.len())
        .map(|k| {
            let sub: Matrix = m[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Solves `m x = rhs`; `None` when `m` is singular.
pub fn solve(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    debug_assert_eq!(rhs.len(), n);
    let mut a: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, computed by
/// symmetric (congruence) elimination.
pub fn inertia(m: &[Vec<Rational>]) -> Result<(usize, usize, usize)> {
    check_symmetric(m)?;
    let mut a: Matrix = m.to_vec();
    let mut n = a.len();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    while n > 0 {
        // Bring a non-zero diagonal entry to position 0, creating one from an
        // off-diagonal entry if the whole diagonal vanishes.
        if let Some(i) = (0..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(0, i);
            for row in a.iter_mut() {
                row.swap(0, i);
            }
        } else if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // row_i += row_j, col_i += col_j gives diagonal 2 a_ij.
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            a.swap(0, i);
            for row in a.iter_mut() {
                row.swap(0, i);
            }
        } else {
            zero += n;
            break;
        }
        let p = a[0][0].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let mut rest: Matrix = Vec::with_capacity(n - 1);
        for r in 1..n {
            let factor = &a[r][0] / &p;
            rest.push((1..n).map(|c| &a[r][c] - &factor * &a[0][c]).collect());
        }
        a = rest;
        n -= 1;
    }
    Ok((pos, neg, zero))
}
