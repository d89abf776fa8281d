//! Classical generalized inverses: {1}, {1,3}, {1,4}, Moore–Penrose, group,
//! Drazin, core and dual core.
//!
//! [`equation_inverse`] decides existence by solving the defining equations.
//! The Penrose equation `XAX = X` and `AX² = X` are quadratic, so the solver
//! first finds a `Y` satisfying the linear part of the system and then
//! returns `Y·A·Y`, which satisfies the full system whenever `Y` satisfies the
//! linear part. Every returned value carries the residuals of the full system.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{self, full_rank_factorization};
use crate::matrix::Matrix;
use crate::scalar::{ExactScalar, Involution, Scalar};
use crate::solve::{solve_linear_system, LinearConstraint, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InverseKind {
    Inner,
    OneThree,
    OneFour,
    MoorePenrose,
    Group,
    Drazin,
    Core,
    DualCore,
}

impl InverseKind {
    pub const ALL: [InverseKind; 8] = [
        InverseKind::Inner,
        InverseKind::OneThree,
        InverseKind::OneFour,
        InverseKind::MoorePenrose,
        InverseKind::Group,
        InverseKind::Drazin,
        InverseKind::Core,
        InverseKind::DualCore,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            InverseKind::Inner => "inner",
            InverseKind::OneThree => "one_three",
            InverseKind::OneFour => "one_four",
            InverseKind::MoorePenrose => "moore_penrose",
            InverseKind::Group => "group",
            InverseKind::Drazin => "drazin",
            InverseKind::Core => "core",
            InverseKind::DualCore => "dual_core",
        }
    }

    fn needs_square(self) -> bool {
        matches!(self, InverseKind::Group | InverseKind::Drazin | InverseKind::Core | InverseKind::DualCore)
    }
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for InverseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.replace('-', "_");
        InverseKind::ALL.into_iter().find(|k| k.tag() == norm).ok_or_else(|| format!("unknown inverse kind `{s}`"))
    }
}

/// A labelled equation residual (`lhs − rhs`).
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<T> {
    pub label: String,
    pub residual: Matrix<T>,
}

impl<T: Scalar> Certificate<T> {
    pub fn new(label: impl Into<String>, lhs: &Matrix<T>, rhs: &Matrix<T>) -> Self {
        Certificate { label: label.into(), residual: lhs - rhs }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InverseResult<T> {
    pub value: Matrix<T>,
    pub kind: InverseKind,
    /// Drazin index; present only for [`InverseKind::Drazin`].
    pub index: Option<u32>,
    pub certificates: Vec<Certificate<T>>,
}

impl<T: Scalar> InverseResult<T> {
    pub fn verified(&self) -> bool {
        self.certificates.iter().all(Certificate::holds)
    }
}

/// Residuals of the full defining system of `kind` at `x`. `index` is only
/// read for the Drazin system.
pub fn defining_equations<T: Scalar>(
    kind: InverseKind,
    a: &Matrix<T>,
    x: &Matrix<T>,
    index: u32,
) -> Vec<Certificate<T>> {
    let ax = a * x;
    let xa = x * a;
    let eq1 = || Certificate::new("axa=a", &(&ax * a), a);
    let eq2 = || Certificate::new("xax=x", &(&xa * x), x);
    let eq3 = || Certificate::new("(ax)*=ax", &ax.adjoint(), &ax);
    let eq4 = || Certificate::new("(xa)*=xa", &xa.adjoint(), &xa);
    match kind {
        InverseKind::Inner => vec![eq1()],
        InverseKind::OneThree => vec![eq1(), eq3()],
        InverseKind::OneFour => vec![eq1(), eq4()],
        InverseKind::MoorePenrose => vec![eq1(), eq2(), eq3(), eq4()],
        InverseKind::Group => vec![eq1(), eq2(), Certificate::new("ax=xa", &ax, &xa)],
        InverseKind::Drazin => {
            let ak = a.power(index).expect("square");
            vec![Certificate::new("a^k·x·a=a^k", &(&(&ak * x) * a), &ak), eq2(), Certificate::new("ax=xa", &ax, &xa)]
        }
        InverseKind::Core => {
            vec![Certificate::new("xa^2=a", &(&xa * a), a), Certificate::new("ax^2=x", &(&ax * x), x), eq3()]
        }
        InverseKind::DualCore => {
            vec![Certificate::new("a^2x=a", &(a * &ax), a), Certificate::new("x^2a=x", &(x * &xa), x), eq4()]
        }
    }
}

fn eq_inner<T: Scalar>(a: &Matrix<T>) -> LinearConstraint<T> {
    LinearConstraint::new(vec![Term::plain(a.clone(), a.clone())], a.clone())
}

/// `(A·X)* − A·X = 0`
fn eq_left_hermitian<T: Scalar>(a: &Matrix<T>) -> LinearConstraint<T> {
    let inv = a.involution();
    let m = a.rows();
    let id = Matrix::identity(m, inv);
    LinearConstraint::new(vec![Term::adjointed(id.clone(), a.adjoint()), Term::plain(-a, id)], Matrix::zeros(m, m, inv))
}

/// `(X·A)* − X·A = 0`
fn eq_right_hermitian<T: Scalar>(a: &Matrix<T>) -> LinearConstraint<T> {
    let inv = a.involution();
    let n = a.cols();
    let id = Matrix::identity(n, inv);
    LinearConstraint::new(
        vec![Term::adjointed(a.adjoint(), id.clone()), Term::plain(-&id, a.clone())],
        Matrix::zeros(n, n, inv),
    )
}

/// Linear part of each defining system; `None` for Drazin.
fn linear_relaxation<T: Scalar>(kind: InverseKind, a: &Matrix<T>) -> Option<Vec<LinearConstraint<T>>> {
    let inv = a.involution();
    let n = a.rows();
    Some(match kind {
        InverseKind::Inner => vec![eq_inner(a)],
        InverseKind::OneThree => vec![eq_inner(a), eq_left_hermitian(a)],
        InverseKind::OneFour => vec![eq_inner(a), eq_right_hermitian(a)],
        InverseKind::MoorePenrose => vec![eq_inner(a), eq_left_hermitian(a), eq_right_hermitian(a)],
        InverseKind::Group => {
            let id = Matrix::identity(n, inv);
            vec![
                eq_inner(a),
                LinearConstraint::new(
                    vec![Term::plain(a.clone(), id.clone()), Term::plain(-&id, a.clone())],
                    Matrix::zeros(n, n, inv),
                ),
            ]
        }
        InverseKind::Core => {
            let id = Matrix::identity(n, inv);
            vec![LinearConstraint::new(vec![Term::plain(id, a * a)], a.clone()), eq_left_hermitian(a)]
        }
        InverseKind::DualCore => {
            let id = Matrix::identity(n, inv);
            vec![LinearConstraint::new(vec![Term::plain(a * a, id)], a.clone()), eq_right_hermitian(a)]
        }
        InverseKind::Drazin => return None,
    })
}

/// Solve the defining equation set of `kind` for `a`.
pub fn equation_inverse<T: ExactScalar>(a: &Matrix<T>, kind: InverseKind) -> Result<InverseResult<T>> {
    if kind.needs_square() {
        a.ensure_square()?;
    }
    let Some(system) = linear_relaxation(kind, a) else {
        return drazin_inverse(a);
    };
    let y = solve_linear_system(&system, (a.cols(), a.rows())).map_err(|e| match e {
        Error::NoSolution(_) => Error::NoSolution(format!("{kind} inverse does not exist")),
        other => other,
    })?;
    let value = match kind {
        InverseKind::Inner | InverseKind::OneThree | InverseKind::OneFour => y,
        _ => &(&y * a) * &y,
    };
    let certificates = defining_equations(kind, a, &value, 1);
    debug_assert!(certificates.iter().all(Certificate::holds), "{kind}: {certificates:?}");
    Ok(InverseResult { value, kind, index: None, certificates })
}

pub fn group_inverse<T: ExactScalar>(a: &Matrix<T>) -> Result<InverseResult<T>> {
    equation_inverse(a, InverseKind::Group)
}

/// Factors of the similarity `A = [Q1 Q2]·diag(D, N)·[P1; P2]` where `Q1`
/// spans the column space of `A^m`, `Q2` its null space, and `m` is the
/// Drazin index.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreNilpotentFactors<T> {
    pub q1: Matrix<T>,
    pub q2: Matrix<T>,
    pub p1: Matrix<T>,
    pub p2: Matrix<T>,
    pub d: Matrix<T>,
    pub n: Matrix<T>,
    pub index: u32,
}

impl<T: Scalar> CoreNilpotentFactors<T> {
    pub fn drazin(&self, d_inv: &Matrix<T>) -> Matrix<T> {
        &(&self.q1 * d_inv) * &self.p1
    }
}

pub fn core_nilpotent_factors<T: ExactScalar>(a: &Matrix<T>) -> Result<CoreNilpotentFactors<T>> {
    a.ensure_square()?;
    let index = linalg::drazin_index(a)?;
    let am = a.power(index)?;
    let q1 = linalg::column_basis(&am);
    let q2 = linalg::null_space_basis(&am);
    let r = q1.cols();
    let n = a.rows();
    let p = linalg::inverse(&q1.hstack(&q2)?)?;
    let p1 = p.submatrix(0, r, 0, n);
    let p2 = p.submatrix(r, n, 0, n);
    let d = &(&p1 * a) * &q1;
    let nil = &(&p2 * a) * &q2;
    Ok(CoreNilpotentFactors { q1, q2, p1, p2, d, n: nil, index })
}

/// Drazin inverse through the core-nilpotent similarity, `A^D = Q1·D⁻¹·P1`.
pub fn drazin_inverse<T: ExactScalar>(a: &Matrix<T>) -> Result<InverseResult<T>> {
    let f = core_nilpotent_factors(a)?;
    let d_inv = linalg::inverse(&f.d)?;
    let value = f.drazin(&d_inv);
    let certificates = defining_equations(InverseKind::Drazin, a, &value, f.index);
    Ok(InverseResult { value, kind: InverseKind::Drazin, index: Some(f.index), certificates })
}

/// `G*·(F*·A·G*)⁻¹·F*` from a full-rank factorization `A = F·G`. Only valid
/// under conjugate transposition.
pub fn moore_penrose_closed_form<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if a.involution() != Involution::ConjugateTranspose {
        return Err(Error::Unsupported("closed-form Moore–Penrose needs conjugate transposition".into()));
    }
    let (f, g, pivots) = full_rank_factorization(a);
    if pivots.is_empty() {
        return Ok(Matrix::zeros(a.cols(), a.rows(), a.involution()));
    }
    let (fs, gs) = (f.adjoint(), g.adjoint());
    let middle = linalg::inverse(&(&(&fs * a) * &gs))?;
    Ok(&(&gs * &middle) * &fs)
}

/// `{1,3}`-inverse as `E·(F*F)⁻¹·F*`, where `F` holds the pivot columns of
/// `A` and `E` selects the pivot coordinates, so that `A·X` is the self-adjoint
/// projector onto the column space. Exists iff the Gram matrix `F*F` is
/// invertible.
pub fn one_three_by_projector<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let (f, _, pivots) = full_rank_factorization(a);
    let inv = a.involution();
    if pivots.is_empty() {
        return Ok(Matrix::zeros(a.cols(), a.rows(), inv));
    }
    let fs = f.adjoint();
    let gram_inv =
        linalg::inverse(&(&fs * &f)).map_err(|_| Error::NoSolution("one_three inverse does not exist".into()))?;
    let mut select = Matrix::zeros(a.cols(), pivots.len(), inv);
    for (j, &p) in pivots.iter().enumerate() {
        select[(p, j)] = T::one();
    }
    Ok(&(&select * &gram_inv) * &fs)
}

/// `{1,4}`-inverse via `((A*)^{(1,3)})*`.
pub fn one_four_by_projector<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    one_three_by_projector(&a.adjoint())
        .map(|x| x.adjoint())
        .map_err(|_| Error::NoSolution("one_four inverse does not exist".into()))
}

/// `A^{(1,4)}·A·A^{(1,3)}`; exists iff both factors do.
pub fn moore_penrose_by_projector<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let (x13, x14) = match (one_three_by_projector(a), one_four_by_projector(a)) {
        (Ok(x13), Ok(x14)) => (x13, x14),
        _ => return Err(Error::NoSolution(format!("{} inverse does not exist", InverseKind::MoorePenrose))),
    };
    Ok(&(&x14 * a) * &x13)
}

/// Group inverse as the Drazin inverse of an index-one matrix.
pub fn group_by_drazin<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if linalg::drazin_index(a)? > 1 {
        return Err(Error::NoSolution(format!("{} inverse does not exist", InverseKind::Group)));
    }
    Ok(drazin_inverse(a)?.value)
}

/// `A^#·A·A^{(1,3)}`; exists iff both factors do.
pub fn core_by_projector<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let not_core = || Error::NoSolution(format!("{} inverse does not exist", InverseKind::Core));
    let g = group_by_drazin(a).map_err(|_| not_core())?;
    let x13 = one_three_by_projector(a).map_err(|_| not_core())?;
    Ok(&(&g * a) * &x13)
}
