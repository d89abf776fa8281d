//! Inverse along an element, (b,c)-inverses, and the product and sum rules.

use crate::classical::one_four_by_projector;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

use super::{pseudo_core_inverse, PseudoCoreResult};

/// Checks that `x` is the inverse of `a` along `d = a^m·(a^m)*`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlongReport<T> {
    pub m: u32,
    pub d: Matrix<T>,
    pub xad_eq_d: bool,
    pub dax_eq_d: bool,
    /// `Rx ⊆ Rd`
    pub row_contained: bool,
    /// `xR ⊆ dR`
    pub col_contained: bool,
}

impl<T> AlongReport<T> {
    pub fn holds(&self) -> bool {
        self.xad_eq_d && self.dax_eq_d && self.row_contained && self.col_contained
    }
}

/// Checks that `x` is the `(b, c)`-inverse of `a` with `b = a^m`, `c = b*`.
#[derive(Clone, Debug, PartialEq)]
pub struct BcReport<T> {
    pub m: u32,
    pub b: Matrix<T>,
    pub c: Matrix<T>,
    /// `x ∈ bRx`
    pub in_b_r_x: bool,
    /// `x ∈ xRc`
    pub in_x_r_c: bool,
    pub xab_eq_b: bool,
    pub cax_eq_c: bool,
}

impl<T> BcReport<T> {
    pub fn holds(&self) -> bool {
        self.in_b_r_x && self.in_x_r_c && self.xab_eq_b && self.cax_eq_c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport<T> {
    pub index: u32,
    pub value: Matrix<T>,
    /// One entry per `m ∈ {I(a), I(a)+1}` where `a^m` has a {1,4}-inverse.
    pub along: Vec<AlongReport<T>>,
    /// The `m` values skipped because `a^m` has no {1,4}-inverse.
    pub along_skipped: Vec<u32>,
    pub bc: Vec<BcReport<T>>,
}

impl<T> RelationReport<T> {
    pub fn holds(&self) -> bool {
        self.along.iter().all(AlongReport::holds) && self.bc.iter().all(BcReport::holds)
    }
}

pub(crate) fn along_report<T: ExactScalar>(a: &Matrix<T>, x: &Matrix<T>, m: u32) -> Result<AlongReport<T>> {
    let am = a.power(m)?;
    let d = &am * &am.adjoint();
    let xad = &(x * a) * &d;
    let dax = &(&d * a) * x;
    Ok(AlongReport {
        m,
        xad_eq_d: xad == d,
        dax_eq_d: dax == d,
        row_contained: linalg::row_space_contained(x, &d)?,
        col_contained: linalg::column_space_contained(x, &d)?,
        d,
    })
}

pub(crate) fn bc_report<T: ExactScalar>(a: &Matrix<T>, x: &Matrix<T>, m: u32) -> Result<BcReport<T>> {
    let b = a.power(m)?;
    let c = b.adjoint();
    // every matrix is regular: if x = b·w then x = b·(w·x⁻)·x, so x ∈ bRx iff x ∈ bR
    let bx = linalg::column_space_contained(x, &b)?;
    let xc = linalg::row_space_contained(x, &c)?;
    Ok(BcReport { m, in_b_r_x: bx, in_x_r_c: xc, xab_eq_b: &(x * a) * &b == b, cax_eq_c: &(&c * a) * x == c, b, c })
}

/// Inverse-along and `(a^m, (a^m)*)`-inverse relations of the pseudo core
/// inverse at `m = I(a)` and `m = I(a) + 1`.
pub fn relation_check<T: ExactScalar>(a: &Matrix<T>) -> Result<RelationReport<T>> {
    let pc = pseudo_core_inverse(a).map_err(not_applicable)?;
    relation_report(a, &pc)
}

pub(crate) fn relation_report<T: ExactScalar>(a: &Matrix<T>, pc: &PseudoCoreResult<T>) -> Result<RelationReport<T>> {
    let x = &pc.value;
    let mut along = Vec::new();
    let mut along_skipped = Vec::new();
    let mut bc = Vec::new();
    for m in [pc.index, pc.index + 1] {
        if one_four_by_projector(&a.power(m)?).is_ok() {
            along.push(along_report(a, x, m)?);
        } else {
            along_skipped.push(m);
        }
        bc.push(bc_report(a, x, m)?);
    }
    Ok(RelationReport { index: pc.index, value: x.clone(), along, along_skipped, bc })
}

fn not_applicable(e: Error) -> Error {
    match e {
        Error::NoSolution(r) => Error::NotApplicable(r),
        other => other,
    }
}

/// Whether `a^⊕·x = x·a^⊕`, given `a·x = x·a` and `a*·x = x·a*`.
pub fn commute_transfer_check<T: ExactScalar>(a: &Matrix<T>, x: &Matrix<T>) -> Result<bool> {
    if a.shape() != x.shape() {
        return Err(Error::DimensionMismatch { op: "commute", lhs: a.shape(), rhs: x.shape() });
    }
    if a * x != x * a {
        return Err(Error::NotApplicable("a·x ≠ x·a".into()));
    }
    let star = a.adjoint();
    if &star * x != x * &star {
        return Err(Error::NotApplicable("a*·x ≠ x·a*".into()));
    }
    let pc = pseudo_core_inverse(a).map_err(not_applicable)?;
    Ok(&pc.value * x == x * &pc.value)
}

/// A computed pseudo core inverse of a product or sum, next to the value the
/// rule predicts.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductLaw<T> {
    pub result: PseudoCoreResult<T>,
    /// `a^⊕·b^⊕` for products, `a^⊕ + b^⊕` for sums.
    pub expected: Matrix<T>,
    /// `b^⊕·a^⊕` for products, equal to `expected` for sums.
    pub alternate: Matrix<T>,
}

impl<T: ExactScalar> ProductLaw<T> {
    pub fn holds(&self) -> bool {
        self.result.value == self.expected && self.expected == self.alternate
    }
}

fn both_inverses<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(PseudoCoreResult<T>, PseudoCoreResult<T>)> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { op: "pair", lhs: a.shape(), rhs: b.shape() });
    }
    if a.involution() != b.involution() {
        return Err(Error::ContextMismatch(a.context(), b.context()));
    }
    let pa = pseudo_core_inverse(a).map_err(not_applicable)?;
    let pb = pseudo_core_inverse(b).map_err(not_applicable)?;
    Ok((pa, pb))
}

/// `(a·b)^⊕` next to `a^⊕·b^⊕` and `b^⊕·a^⊕`, when `a·b = b·a` and
/// `a·b* = b*·a`.
pub fn reverse_order_product<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<ProductLaw<T>> {
    let (pa, pb) = both_inverses(a, b)?;
    let ab = a * b;
    if ab != b * a {
        return Err(Error::HypothesisViolated("a·b ≠ b·a".into()));
    }
    let bs = b.adjoint();
    if a * &bs != &bs * a {
        return Err(Error::HypothesisViolated("a·b* ≠ b*·a".into()));
    }
    Ok(ProductLaw {
        result: pseudo_core_inverse(&ab)?,
        expected: &pa.value * &pb.value,
        alternate: &pb.value * &pa.value,
    })
}

/// `(a + b)^⊕` next to `a^⊕ + b^⊕`, when `a·b = b·a = 0` and `a*·b = 0`.
pub fn additive_sum<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<ProductLaw<T>> {
    let (pa, pb) = both_inverses(a, b)?;
    if !(a * b).is_zero() {
        return Err(Error::HypothesisViolated("a·b ≠ 0".into()));
    }
    if !(b * a).is_zero() {
        return Err(Error::HypothesisViolated("b·a ≠ 0".into()));
    }
    if !(&a.adjoint() * b).is_zero() {
        return Err(Error::HypothesisViolated("a*·b ≠ 0".into()));
    }
    let expected = &pa.value + &pb.value;
    Ok(ProductLaw { result: pseudo_core_inverse(&(a + b))?, alternate: expected.clone(), expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian, gaussian_ratio, Involution, Involution::*};
    use crate::ExactMatrix;

    fn m(inv: Involution, rows: &[&[(i64, i64)]]) -> ExactMatrix {
        Matrix::from_rows(inv, rows.iter().map(|r| r.iter().map(|&(a, b)| gaussian(a, b)).collect()).collect())
    }

    fn diag(inv: Involution, d: &[(i64, i64)]) -> ExactMatrix {
        ExactMatrix::diagonal(inv, d.iter().map(|&(a, b)| gaussian(a, b)).collect())
    }

    #[test]
    fn relations_for_identity_and_small_examples() {
        for inv in Involution::ALL {
            let id = ExactMatrix::identity(2, inv);
            let r = relation_check(&id).unwrap();
            assert!(r.holds());
            assert!(r.along[0].d.is_identity());
            assert!(r.bc[0].b.is_identity() && r.bc[0].c.is_identity());
        }
        let a = diag(Transpose, &[(0, 1), (0, 0)]);
        let r = relation_check(&a).unwrap();
        assert_eq!(r.index, 1);
        assert!(r.holds());
        assert_eq!(r.along.len(), 2);

        let j = m(ConjugateTranspose, &[&[(0, 0), (1, 0)], &[(0, 0), (0, 0)]]);
        let r = relation_check(&j).unwrap();
        assert!(r.holds());
        assert!(r.value.is_zero() && r.along[0].d.is_zero());

        let s = m(Transpose, &[&[(0, 1), (0, 0)], &[(-1, 0), (0, 0)]]);
        assert!(matches!(relation_check(&s), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn commute_transfer_examples() {
        let a = diag(ConjugateTranspose, &[(2, 0), (0, 0), (-1, 0)]);
        assert!(commute_transfer_check(&a, &ExactMatrix::identity(3, ConjugateTranspose)).unwrap());
        assert!(commute_transfer_check(&a, &diag(ConjugateTranspose, &[(1, 1), (2, 0), (0, 3)])).unwrap());
        let a = diag(Transpose, &[(0, 1), (0, 0)]);
        let x = m(Transpose, &[&[(0, 0), (0, 0)], &[(1, 0), (0, 0)]]);
        assert!(matches!(commute_transfer_check(&a, &x), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn reverse_order_examples() {
        let id = ExactMatrix::identity(2, Transpose);
        let r = reverse_order_product(&id, &id).unwrap();
        assert!(r.holds() && r.result.value.is_identity());

        let a = diag(Transpose, &[(2, 0), (0, 0)]);
        let b = diag(Transpose, &[(3, 0), (0, 0)]);
        let r = reverse_order_product(&a, &b).unwrap();
        let sixth = ExactMatrix::diagonal(Transpose, vec![gaussian_ratio(1, 6, 0, 1), gaussian(0, 0)]);
        assert_eq!(r.result.value, sixth);
        assert!(r.holds());

        let a = diag(ConjugateTranspose, &[(0, 1), (0, 0)]);
        let r = reverse_order_product(&a, &a).unwrap();
        assert!(r.holds());

        let b = m(Transpose, &[&[(0, 0), (1, 0)], &[(0, 0), (0, 0)]]);
        let a = diag(Transpose, &[(1, 0), (2, 0)]);
        assert!(matches!(reverse_order_product(&a, &b), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn additive_examples() {
        let a = diag(Transpose, &[(1, 0), (0, 0)]);
        let b = diag(Transpose, &[(0, 0), (1, 0)]);
        let r = additive_sum(&a, &b).unwrap();
        assert!(r.holds() && r.result.value.is_identity());

        let a = diag(ConjugateTranspose, &[(0, 1), (0, 0), (0, 0)]);
        let b =
            m(ConjugateTranspose, &[&[(0, 0), (0, 0), (0, 0)], &[(0, 0), (0, 0), (1, 0)], &[(0, 0), (0, 0), (0, 0)]]);
        let r = additive_sum(&a, &b).unwrap();
        assert!(r.holds());
        assert_eq!(r.result.index, 2);

        let a = diag(Transpose, &[(0, 1), (0, 0)]);
        let b = m(Transpose, &[&[(0, 0), (0, 0)], &[(-1, 0), (0, 0)]]);
        match additive_sum(&a, &b) {
            Err(Error::HypothesisViolated(r)) => assert_eq!(r, "b·a ≠ 0"),
            other => panic!("{other:?}"),
        }
    }
}
