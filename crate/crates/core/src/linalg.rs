//! Exact row reduction and the subspace machinery built on it.

use std::ops::{Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// Elements row reduction can run over (the complex scalars themselves, or
/// their real parts inside the linear-system solver).
pub(crate) trait FieldElem:
    Clone + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
}

impl<T> FieldElem for T where
    T: Clone + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T>
{
}

/// Reduce `rows` to reduced row echelon form, pivoting only in the first
/// `pivot_cols` columns. The pivot is the first nonzero entry of each column
/// at or below the current row. Returns the pivot columns in order.
pub(crate) fn rref_in_place<F: FieldElem>(rows: &mut [Vec<F>], pivot_cols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for v in rows[r][c..].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() * inv.clone();
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
        let nz: Vec<usize> = (c..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and pivot columns.
pub fn rref<T: ExactScalar>(a: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut rows = a.to_rows();
    let pivots = rref_in_place(&mut rows, a.cols());
    let out =
        Matrix::new(a.rows(), a.cols(), rows.into_iter().flatten().collect(), a.involution()).expect("shape preserved");
    (out, pivots)
}

pub fn rank<T: ExactScalar>(a: &Matrix<T>) -> usize {
    rref(a).1.len()
}

/// Smallest positive `k` with `rank(A^k) = rank(A^{k+1})`. Invertible
/// matrices report 1.
pub fn drazin_index<T: ExactScalar>(a: &Matrix<T>) -> Result<u32> {
    a.ensure_square()?;
    let mut power = a.clone();
    let mut prev = rank(&power);
    let mut k = 1;
    loop {
        power = &power * a;
        let next = rank(&power);
        if next == prev {
            return Ok(k);
        }
        prev = next;
        k += 1;
    }
}

/// `rank(A^k)` for `k = 1..=kmax`.
pub fn power_ranks<T: ExactScalar>(a: &Matrix<T>, kmax: u32) -> Result<Vec<usize>> {
    a.ensure_square()?;
    let mut out = Vec::with_capacity(kmax as usize);
    let mut power = a.clone();
    for k in 1..=kmax {
        if k > 1 {
            power = &power * a;
        }
        out.push(rank(&power));
    }
    Ok(out)
}

/// Pivot columns of `a`: a basis of its column space.
pub fn column_basis<T: ExactScalar>(a: &Matrix<T>) -> Matrix<T> {
    let (_, pivots) = rref(a);
    a.select_columns(&pivots)
}

/// Basis of `{y : a·y = 0}` as columns, one per free variable.
pub fn null_space_basis<T: ExactScalar>(a: &Matrix<T>) -> Matrix<T> {
    let (r, pivots) = rref(a);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(n, free.len(), a.involution());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            basis[(p, k)] = -r[(i, f)].clone();
        }
    }
    basis
}

/// `A = F·G` with `F` the pivot columns of `A` and `G` the nonzero rows of
/// its reduced echelon form.
pub fn full_rank_factorization<T: ExactScalar>(a: &Matrix<T>) -> (Matrix<T>, Matrix<T>, Vec<usize>) {
    let (r, pivots) = rref(a);
    let f = a.select_columns(&pivots);
    let g = r.submatrix(0, pivots.len(), 0, a.cols());
    (f, g, pivots)
}

/// Gauss–Jordan inverse.
pub fn inverse<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.ensure_square()?;
    let aug = a.hstack(&Matrix::identity(n, a.involution()))?;
    let mut rows = aug.to_rows();
    let pivots = rref_in_place(&mut rows, n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, a.involution(), |i, j| rows[i][n + j].clone()))
}

/// Some `Y` with `b·Y = a` (free variables zero), or `None` if `a`'s
/// columns are not in the column space of `b`.
pub fn solve_right<T: ExactScalar>(b: &Matrix<T>, a: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch { op: "solve", lhs: b.shape(), rhs: a.shape() });
    }
    let aug = b.hstack(a)?;
    let mut rows = aug.to_rows();
    let pivots = rref_in_place(&mut rows, b.cols());
    let consistent = rows[pivots.len()..].iter().all(|row| row[b.cols()..].iter().all(Zero::is_zero));
    if !consistent {
        return Ok(None);
    }
    let mut y = Matrix::zeros(b.cols(), a.cols(), a.involution());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..a.cols() {
            y[(p, j)] = rows[i][b.cols() + j].clone();
        }
    }
    Ok(Some(y))
}

/// Some `Y` with `Y·b = a`, or `None`.
pub fn solve_left<T: ExactScalar>(b: &Matrix<T>, a: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    Ok(solve_right(&b.transpose(), &a.transpose())?.map(|y| y.transpose()))
}

/// Whether every column of `a` is a combination of columns of `b`.
pub fn column_space_contained<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<bool> {
    Ok(solve_right(b, a)?.is_some())
}

/// Whether every row of `a` is a combination of rows of `b` (`Ra ⊆ Rb`).
pub fn row_space_contained<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<bool> {
    Ok(solve_left(b, a)?.is_some())
}

/// Whether `{Y : Y·m = 0} ⊆ {Y : Y·n = 0}`, i.e. `col(n) ⊆ col(m)`.
pub fn left_annihilator_contained<T: ExactScalar>(m: &Matrix<T>, n: &Matrix<T>) -> Result<bool> {
    column_space_contained(n, m)
}

/// Whether `col(a) = col(b)`.
pub fn same_column_space<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<bool> {
    Ok(column_space_contained(a, b)? && column_space_contained(b, a)?)
}
