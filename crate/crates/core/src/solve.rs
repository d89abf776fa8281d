//! Simultaneous linear matrix equations `Σ_j P_j·op_j(X)·Q_j = R`, where
//! `op_j` is either the identity or the ring involution.
//!
//! Conjugation is not linear over ℚ(i), so every unknown entry is split into
//! real and imaginary parts and the system is vectorized and row-reduced over
//! the real subfield. The returned solution sets all free variables to zero.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::rref_in_place;
use crate::matrix::Matrix;
use crate::scalar::{ExactScalar, Involution, Scalar};

/// One summand `left · X · right` (or `left · X* · right`).
#[derive(Clone, Debug)]
pub struct Term<T> {
    pub left: Matrix<T>,
    pub right: Matrix<T>,
    pub adjoint: bool,
}

impl<T: Scalar> Term<T> {
    pub fn plain(left: Matrix<T>, right: Matrix<T>) -> Self {
        Term { left, right, adjoint: false }
    }

    pub fn adjointed(left: Matrix<T>, right: Matrix<T>) -> Self {
        Term { left, right, adjoint: true }
    }

    fn apply(&self, x: &Matrix<T>) -> Matrix<T> {
        let inner = if self.adjoint { x.adjoint() } else { x.clone() };
        &(&self.left * &inner) * &self.right
    }
}

#[derive(Clone, Debug)]
pub struct LinearConstraint<T> {
    pub terms: Vec<Term<T>>,
    pub rhs: Matrix<T>,
}

impl<T: Scalar> LinearConstraint<T> {
    pub fn new(terms: Vec<Term<T>>, rhs: Matrix<T>) -> Self {
        LinearConstraint { terms, rhs }
    }

    /// `Σ terms(X) − rhs`.
    pub fn residual(&self, x: &Matrix<T>) -> Matrix<T> {
        self.terms.iter().fold(-&self.rhs, |acc, t| &acc + &t.apply(x))
    }

    fn check(&self, shape: (usize, usize)) -> Result<()> {
        let (p, q) = shape;
        for t in &self.terms {
            let (a, b) = if t.adjoint { (q, p) } else { (p, q) };
            let ok = t.left.rows() == self.rhs.rows()
                && t.left.cols() == a
                && t.right.rows() == b
                && t.right.cols() == self.rhs.cols();
            if !ok {
                return Err(Error::DimensionMismatch {
                    op: "linear constraint",
                    lhs: (t.left.rows(), t.left.cols()),
                    rhs: (t.right.rows(), t.right.cols()),
                });
            }
            if t.left.involution() != self.rhs.involution() || t.right.involution() != self.rhs.involution() {
                return Err(Error::ContextMismatch(t.left.context(), self.rhs.context()));
            }
        }
        Ok(())
    }
}

/// Accumulates the real coefficient rows for one scalar equation pair.
struct EquationRows<R> {
    re: Vec<R>,
    im: Vec<R>,
}

impl<R: Clone + Zero + std::ops::Add<Output = R> + std::ops::Neg<Output = R>> EquationRows<R> {
    fn new(width: usize) -> Self {
        EquationRows { re: vec![R::zero(); width], im: vec![R::zero(); width] }
    }

    fn add(v: &mut R, x: R) {
        if !x.is_zero() {
            *v = v.clone() + x;
        }
    }

    /// Adds `c·x` (or `c·conj(x)` when `conjugate`) for unknown number `var`.
    fn push(&mut self, var: usize, cr: R, ci: R, conjugate: bool) {
        let (u, v) = (2 * var, 2 * var + 1);
        if conjugate {
            Self::add(&mut self.re[u], cr.clone());
            Self::add(&mut self.re[v], ci.clone());
            Self::add(&mut self.im[u], ci);
            Self::add(&mut self.im[v], -cr);
        } else {
            Self::add(&mut self.re[u], cr.clone());
            Self::add(&mut self.re[v], -ci.clone());
            Self::add(&mut self.im[u], ci);
            Self::add(&mut self.im[v], cr);
        }
    }
}

/// Any `X` of shape `unknown_shape` satisfying every constraint, or
/// [`Error::NoSolution`] when the system is inconsistent.
pub fn solve_linear_system<T: ExactScalar>(
    constraints: &[LinearConstraint<T>],
    unknown_shape: (usize, usize),
) -> Result<Matrix<T>> {
    let involution =
        constraints.first().map(|c| c.rhs.involution()).ok_or_else(|| Error::Parse("empty constraint set".into()))?;
    for c in constraints {
        c.check(unknown_shape)?;
        if c.rhs.involution() != involution {
            return Err(Error::ContextMismatch(c.rhs.context(), constraints[0].rhs.context()));
        }
    }
    solve_split(constraints, unknown_shape, involution)
}

/// For the scalar equation at `(s, t)`, calls `f(var, coeff)` for every
/// contribution `coeff·op(X)[..]`, where `var` indexes the entry of `X`
/// involved.
fn for_each_coefficient<T: Scalar>(term: &Term<T>, q: usize, s: usize, t: usize, mut f: impl FnMut(usize, T)) {
    let (a, b) = (term.left.cols(), term.right.rows());
    for k in 0..a {
        let l_sk = &term.left[(s, k)];
        if l_sk.is_zero() {
            continue;
        }
        for l in 0..b {
            let q_lt = &term.right[(l, t)];
            if q_lt.is_zero() {
                continue;
            }
            // op(X)[k, l] is X[k, l] or inv(X[l, k])
            let var = if term.adjoint { l * q + k } else { k * q + l };
            f(var, l_sk.clone() * q_lt.clone());
        }
    }
}

/// Split every entry into real and imaginary parts and solve over the real
/// subfield.
fn solve_split<T: ExactScalar>(
    constraints: &[LinearConstraint<T>],
    (p, q): (usize, usize),
    involution: Involution,
) -> Result<Matrix<T>> {
    let nvars = 2 * p * q;
    let mut rows: Vec<Vec<T::Real>> = Vec::new();

    for c in constraints {
        let (nr, nc) = c.rhs.shape();
        for s in 0..nr {
            for t in 0..nc {
                let mut eq = EquationRows::new(nvars + 1);
                for term in &c.terms {
                    let conjugate = term.adjoint && involution == Involution::ConjugateTranspose;
                    for_each_coefficient(term, q, s, t, |var, coeff| {
                        eq.push(var, coeff.re(), coeff.im(), conjugate);
                    });
                }
                let r = &c.rhs[(s, t)];
                eq.re[nvars] = r.re();
                eq.im[nvars] = r.im();
                for row in [eq.re, eq.im] {
                    if row[..nvars].iter().all(Zero::is_zero) {
                        if !row[nvars].is_zero() {
                            return Err(Error::NoSolution("inconsistent linear system".into()));
                        }
                        continue;
                    }
                    rows.push(row);
                }
            }
        }
    }

    let pivots = rref_in_place(&mut rows, nvars);
    if rows[pivots.len()..].iter().any(|row| !row[nvars].is_zero()) {
        return Err(Error::NoSolution("inconsistent linear system".into()));
    }
    let mut values = vec![T::Real::zero(); nvars];
    for (i, &pc) in pivots.iter().enumerate() {
        debug_assert!(rows[i][pc].is_one());
        values[pc] = rows[i][nvars].clone();
    }
    let data = (0..p * q).map(|v| T::from_parts(values[2 * v].clone(), values[2 * v + 1].clone())).collect();
    Matrix::new(p, q, data, involution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, gaussian_ratio, Involution::*};
    use crate::ExactMatrix;

    fn m(inv: Involution, rows: &[&[(i64, i64)]]) -> ExactMatrix {
        Matrix::from_rows(inv, rows.iter().map(|r| r.iter().map(|&(a, b)| gaussian(a, b)).collect()).collect())
    }

    fn inner_eq(a: &ExactMatrix) -> LinearConstraint<crate::GaussianRational> {
        LinearConstraint::new(vec![Term::plain(a.clone(), a.clone())], a.clone())
    }

    /// `(A·X)* − A·X = 0`
    fn sym_left(a: &ExactMatrix) -> LinearConstraint<crate::GaussianRational> {
        let n = a.rows();
        let id = ExactMatrix::identity(n, a.involution());
        LinearConstraint::new(
            vec![Term::adjointed(id.clone(), a.adjoint()), Term::plain(-a, id.clone())],
            ExactMatrix::zeros(n, n, a.involution()),
        )
    }

    /// `(X·A)* − X·A = 0`
    fn sym_right(a: &ExactMatrix) -> LinearConstraint<crate::GaussianRational> {
        let n = a.rows();
        let id = ExactMatrix::identity(n, a.involution());
        LinearConstraint::new(
            vec![Term::adjointed(a.adjoint(), id.clone()), Term::plain(-&id, a.clone())],
            ExactMatrix::zeros(n, n, a.involution()),
        )
    }

    #[test]
    fn identity_inner_inverse() {
        let id = ExactMatrix::identity(3, Transpose);
        let x = solve_linear_system(&[inner_eq(&id)], (3, 3)).unwrap();
        assert!(x.is_identity());
    }

    #[test]
    fn one_three_nonexistent_under_transpose() {
        let s = m(Transpose, &[&[(0, 1), (0, 0)], &[(-1, 0), (0, 0)]]);
        let r = solve_linear_system(&[inner_eq(&s), sym_left(&s)], (2, 2));
        assert!(matches!(r, Err(Error::NoSolution(_))));
        let s2 = s.power(2).unwrap();
        let r = solve_linear_system(&[inner_eq(&s2), sym_left(&s2)], (2, 2));
        assert!(matches!(r, Err(Error::NoSolution(_))));
    }

    #[test]
    fn penrose_linear_part_and_projection() {
        // {1,3,4}-solutions Y are not unique, but Y·A·Y is the Moore–Penrose inverse.
        let a = m(ConjugateTranspose, &[&[(1, 0), (0, 1)], &[(0, 0), (0, 0)]]);
        let cs = [inner_eq(&a), sym_left(&a), sym_right(&a)];
        let y = solve_linear_system(&cs, (2, 2)).unwrap();
        for c in &cs {
            assert!(c.residual(&y).is_zero());
        }
        let x = &(&y * &a) * &y;
        let expect = Matrix::from_rows(
            ConjugateTranspose,
            vec![vec![gaussian_ratio(1, 2, 0, 1), gaussian(0, 0)], vec![gaussian_ratio(0, 1, -1, 2), gaussian(0, 0)]],
        );
        assert_eq!(x, expect);
        assert_eq!(&(&x * &a) * &x, x);
    }

    #[test]
    fn rectangular_unknown_with_adjoint_term() {
        // X* = B for a 2x3 unknown X: solution is B*.
        let b = m(ConjugateTranspose, &[&[(1, 2), (0, 0)], &[(3, 0), (0, -1)], &[(0, 0), (5, 5)]]);
        let i3 = ExactMatrix::identity(3, ConjugateTranspose);
        let i2 = ExactMatrix::identity(2, ConjugateTranspose);
        let c = LinearConstraint::new(vec![Term::adjointed(i3, i2)], b.clone());
        let x = solve_linear_system(&[c], (2, 3)).unwrap();
        assert_eq!(x, b.adjoint());
    }

    #[test]
    fn bad_shapes_rejected() {
        let a = ExactMatrix::identity(2, Transpose);
        let c = LinearConstraint::new(vec![Term::plain(a.clone(), a.clone())], a.clone());
        assert!(matches!(solve_linear_system(&[c], (3, 3)), Err(Error::DimensionMismatch { .. })));
        let mixed = LinearConstraint::new(
            vec![Term::plain(a.clone(), a.clone())],
            a.clone().with_involution(ConjugateTranspose),
        );
        assert!(matches!(solve_linear_system(&[mixed], (2, 2)), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn returned_solution_satisfies_constraints() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for inv in Involution::ALL {
            for _ in 0..20 {
                let n = rng.gen_range(1..=3);
                let a = Matrix::from_fn(n, n, inv, |_, _| gaussian(rng.gen_range(-2..=2), rng.gen_range(-2..=2)));
                let cs = [inner_eq(&a), sym_left(&a)];
                if let Ok(x) = solve_linear_system(&cs, (n, n)) {
                    assert!(cs.iter().all(|c| c.residual(&x).is_zero()));
                }
            }
        }
    }
}
