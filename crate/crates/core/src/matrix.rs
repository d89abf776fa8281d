//! Dense matrices over a [`Scalar`] field, tagged with the ring involution.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{to_float, FloatReal, Involution, RingContext, Scalar};

/// Row-major dense matrix. Operands of every binary operation must share
/// the same involution; the scalar mode is fixed by `T`.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    involution: Involution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>, involution: Involution) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { op: "construct", lhs: (rows, cols), rhs: (data.len(), 1) });
        }
        Ok(Matrix { rows, cols, data, involution })
    }

    pub fn try_from_rows(involution: Involution, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { op: "construct", lhs: (r, c), rhs: (1, bad.len()) });
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), involution)
    }

    /// Panics on ragged input.
    pub fn from_rows(involution: Involution, rows: Vec<Vec<T>>) -> Self {
        Self::try_from_rows(involution, rows).expect("ragged rows")
    }

    pub fn from_fn(rows: usize, cols: usize, involution: Involution, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data, involution }
    }

    pub fn zeros(rows: usize, cols: usize, involution: Involution) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols], involution }
    }

    pub fn identity(n: usize, involution: Involution) -> Self {
        Self::from_fn(n, n, involution, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(involution: Involution, diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n, involution);
        for (i, d) in diag.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    pub fn context(&self) -> RingContext {
        RingContext { scalar_mode: T::mode(), involution: self.involution }
    }

    pub fn with_involution(mut self, involution: Involution) -> Self {
        self.involution = involution;
        self
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare(self.rows, self.cols))
        }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.involution != other.involution {
            return Err(Error::ContextMismatch(self.context(), other.context()));
        }
        Ok(())
    }

    /// `A*` under the matrix's involution.
    pub fn adjoint(&self) -> Self {
        let inv = self.involution;
        Self::from_fn(self.cols, self.rows, inv, |i, j| inv.apply(&self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.involution, |i, j| self[(j, i)].clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        self.check_context(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, lhs: self.shape(), rhs: other.shape() });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, involution: self.involution })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mul", lhs: self.shape(), rhs: other.shape() });
        }
        let mut out = vec![T::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    if !b.is_zero() {
                        *o = o.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data: out, involution: self.involution })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|z| s.clone() * z.clone())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            involution: self.involution,
        }
    }

    /// `A^k`; `k = 0` gives the identity.
    pub fn power(&self, k: u32) -> Result<Self> {
        let n = self.ensure_square()?;
        let mut result = Self::identity(n, self.involution);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let z = &self[(i, j)];
                    if i == j {
                        z.is_one()
                    } else {
                        z.is_zero()
                    }
                })
            })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(Scalar::norm_sqr_f64).sum::<f64>().sqrt()
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, self.involution, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), self.involution, |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, self.involution, |i, j| self[(rows[i], j)].clone())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { op: "hstack", lhs: self.shape(), rhs: other.shape() });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, self.involution, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { op: "vstack", lhs: self.shape(), rhs: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data, involution: self.involution })
    }

    pub fn block_diag(involution: Involution, blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m, involution);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Write `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn to_float<F: FloatReal>(&self) -> Matrix<Complex<F>> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(to_float).collect(),
            involution: self.involution,
        }
    }
}

/// Binary arithmetic with dimension and context checks.
pub fn arith<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, op: ArithOp) -> Result<Matrix<T>> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape or context mismatch; use the `try_*`
// methods when operands come from outside.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<T: Scalar> $trait<&Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;

            fn $method(self, rhs: &Matrix<T>) -> Matrix<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<T: Scalar> $trait<Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;

            fn $method(self, rhs: Matrix<T>) -> Matrix<T> {
                (&self).$method(&rhs)
            }
        }

        impl<T: Scalar> $trait<&Matrix<T>> for Matrix<T> {
            type Output = Matrix<T>;

            fn $method(self, rhs: &Matrix<T>) -> Matrix<T> {
                (&self).$method(rhs)
            }
        }

        impl<T: Scalar> $trait<Matrix<T>> for &Matrix<T> {
            type Output = Matrix<T>;

            fn $method(self, rhs: Matrix<T>) -> Matrix<T> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|z| -z.clone())
    }
}

impl<T: Scalar> Neg for Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ({:?}) [", self.rows, self.cols, self.involution)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, GaussianRational};
    use crate::ExactMatrix;
    use Involution::*;

    fn m(inv: Involution, rows: &[&[(i64, i64)]]) -> ExactMatrix {
        Matrix::from_rows(inv, rows.iter().map(|r| r.iter().map(|&(a, b)| gaussian(a, b)).collect()).collect())
    }

    #[test]
    fn adjoint_examples() {
        let a = m(Transpose, &[&[(1, 0), (0, 1)], &[(0, 0), (0, 0)]]);
        assert_eq!(a.adjoint(), m(Transpose, &[&[(1, 0), (0, 0)], &[(0, 1), (0, 0)]]));
        let a = a.with_involution(ConjugateTranspose);
        assert_eq!(a.adjoint(), m(ConjugateTranspose, &[&[(1, 0), (0, 0)], &[(0, -1), (0, 0)]]));
        for inv in Involution::ALL {
            let id = ExactMatrix::identity(3, inv);
            assert_eq!(id.adjoint(), id);
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = m(ConjugateTranspose, &[&[(1, 0), (0, 1)], &[(0, 0), (0, 0)]]);
        let zero = ExactMatrix::zeros(2, 2, ConjugateTranspose);
        assert_eq!(&a + &zero, a);
        assert_eq!(&a * &ExactMatrix::identity(2, ConjugateTranspose), a);
        // a is idempotent
        assert_eq!(&a * &a, a);
        assert_eq!(arith(&a, &a, ArithOp::Sub).unwrap(), zero);
        assert_eq!(a.scale(&gaussian(0, 1)), m(ConjugateTranspose, &[&[(0, 1), (-1, 0)], &[(0, 0), (0, 0)]]));
    }

    #[test]
    fn mismatches_are_rejected() {
        let a = ExactMatrix::identity(2, Transpose);
        let b = ExactMatrix::identity(2, ConjugateTranspose);
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch(..))));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch(..))));
        let c = ExactMatrix::zeros(3, 1, Transpose);
        assert!(matches!(a.try_mul(&c), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.try_add(&c), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(c.power(2), Err(Error::NonSquare(3, 1))));
        assert!(ExactMatrix::new(2, 2, vec![gaussian(1, 0)], Transpose).is_err());
    }

    #[test]
    fn power_examples() {
        let a = m(Transpose, &[&[(2, 1), (1, 0)], &[(0, 3), (-1, 0)]]);
        assert_eq!(a.power(1).unwrap(), a);
        assert_eq!(a.power(3).unwrap(), &(&a * &a) * &a);
        let n = m(Transpose, &[&[(0, 0), (1, 0)], &[(0, 0), (0, 0)]]);
        assert!(n.power(2).unwrap().is_zero());
        // (a+b) from the sum counterexample: odd powers ±(a+b), even powers ±(a+b)²
        let s = m(Transpose, &[&[(0, 1), (0, 0)], &[(-1, 0), (0, 0)]]);
        let s2 = s.power(2).unwrap();
        for k in 1..=9u32 {
            let expect = if k % 2 == 1 {
                let sign = if ((k - 1) / 2) % 2 == 0 { 1 } else { -1 };
                s.scale(&gaussian(sign, 0))
            } else {
                let sign = if (k / 2 + 1) % 2 == 0 { 1 } else { -1 };
                s2.scale(&gaussian(sign, 0))
            };
            assert_eq!(s.power(k).unwrap(), expect, "k = {k}");
        }
    }

    #[test]
    fn stacking_and_blocks() {
        let a = m(Transpose, &[&[(1, 0)], &[(2, 0)]]);
        let b = m(Transpose, &[&[(3, 0)], &[(4, 0)]]);
        let h = a.hstack(&b).unwrap();
        assert_eq!(h.shape(), (2, 2));
        assert_eq!(h.select_columns(&[1]), b);
        let v = a.vstack(&b).unwrap();
        assert_eq!(v.submatrix(2, 4, 0, 1), b);
        let bd = ExactMatrix::block_diag(Transpose, &[a.clone(), b.transpose()]);
        assert_eq!(bd.shape(), (3, 3));
        assert_eq!(bd[(2, 2)], gaussian(4, 0));
        assert_eq!(bd[(0, 2)], GaussianRational::zero());
    }
}
