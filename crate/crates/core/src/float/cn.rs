//! Core-nilpotent factors in floating point, and the two formulas built on
//! them.

use serde::Serialize;

use super::svd::{inverse_checked, pinv, svd};
use super::{require_unitary_setting, FloatMat, SvdReal, Tolerance};
use crate::error::Result;
use crate::matrix::Matrix;

/// `A = [Q1 Q2]·diag(D, N)·[P1; P2]` with `Q1` an orthonormal basis of the
/// column space of `A^m`, `Q2` of its null space, and `m` the index.
#[derive(Clone, Debug, PartialEq)]
pub struct CNFactors<F> {
    pub q1: FloatMat<F>,
    pub q2: FloatMat<F>,
    pub p1: FloatMat<F>,
    pub p2: FloatMat<F>,
    pub d: FloatMat<F>,
    pub n: FloatMat<F>,
    pub index: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CnInvariants {
    /// `‖[Q1 Q2]·[P1; P2] − I‖`.
    pub inverse_pair: f64,
    /// `‖A − [Q1 Q2]·diag(D, N)·[P1; P2]‖ / ‖A‖`.
    pub reconstruction: f64,
}

impl<F: SvdReal> CNFactors<F> {
    pub fn rank(&self) -> usize {
        self.q1.cols()
    }

    pub fn invariants(&self, a: &FloatMat<F>) -> CnInvariants {
        let inv = a.involution();
        let q = self.q1.hstack(&self.q2).expect("same rows");
        let p = self.p1.vstack(&self.p2).expect("same cols");
        let mid = Matrix::block_diag(inv, &[self.d.clone(), self.n.clone()]);
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        CnInvariants {
            inverse_pair: (&(&q * &p) - &Matrix::identity(a.rows(), inv)).frobenius_norm(),
            reconstruction: (a - &(&(&q * &mid) * &p)).frobenius_norm() / scale,
        }
    }
}

/// Rank threshold for `A^k`: the tolerance factor times `σ_max(A)^k`,
/// which bounds the roundoff in forming the power.
fn power_threshold<F: SvdReal>(n: usize, sigma_max: F, k: u32, tol: Tolerance) -> F {
    tol.threshold(n, num_traits::Float::powi(sigma_max, k as i32))
}

/// Smallest `k ≥ 1` with `rank(A^k) = rank(A^{k+1})` at the tolerance.
pub fn float_index<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<u32> {
    let n = a.ensure_square()?;
    let s1 = svd(a)?;
    let top = s1.sigma_max();
    let mut rank = s1.rank_above(tol.threshold(n, top));
    let mut power = a.clone();
    for k in 1..=n.max(1) as u32 {
        let next = &power * a;
        let next_rank = svd(&next)?.rank_above(power_threshold(n, top, k + 1, tol));
        if next_rank == rank {
            return Ok(k);
        }
        power = next;
        rank = next_rank;
    }
    Ok(n.max(1) as u32)
}

/// The factors, with `A^m` and its rank threshold.
fn factors_with_power<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<(CNFactors<F>, FloatMat<F>, F)> {
    let n = a.ensure_square()?;
    let index = float_index(a, tol)?;
    let top = svd(a)?.sigma_max();
    let threshold = power_threshold(n, top, index, tol);
    let am = a.power(index)?;
    let s = svd(&am)?;
    let r = s.rank_above(threshold);
    let q1 = s.u.submatrix(0, n, 0, r);
    let q2 = s.v.submatrix(0, n, r, n);
    let p = inverse_checked(&q1.hstack(&q2)?, tol)?;
    let (p1, p2) = (p.submatrix(0, r, 0, n), p.submatrix(r, n, 0, n));
    let d = &(&p1 * a) * &q1;
    let nil = &(&p2 * a) * &q2;
    Ok((CNFactors { q1, q2, p1, p2, d, n: nil, index }, am, threshold))
}

pub fn cn_factors<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<CNFactors<F>> {
    Ok(factors_with_power(a, tol)?.0)
}

/// `A^D = Q1·D⁻¹·P1`.
pub fn drazin_float<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<FloatMat<F>> {
    let f = cn_factors(a, tol)?;
    drazin_from(&f, tol)
}

fn drazin_from<F: SvdReal>(f: &CNFactors<F>, tol: Tolerance) -> Result<FloatMat<F>> {
    let d_inv = inverse_checked(&f.d, tol)?;
    Ok(&(&f.q1 * &d_inv) * &f.p1)
}

/// `Q1·D⁻¹·(Q1*Q1)⁻¹·Q1*`.
pub fn pseudo_core_cn<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<FloatMat<F>> {
    require_unitary_setting(a, "core-nilpotent formula")?;
    let f = cn_factors(a, tol)?;
    let d_inv = inverse_checked(&f.d, tol)?;
    let q1s = f.q1.adjoint();
    let gram_inv = inverse_checked(&(&q1s * &f.q1), tol)?;
    Ok(&(&(&f.q1 * &d_inv) * &gram_inv) * &q1s)
}

/// `A^D·A^m·(A^m)^†`.
pub fn pseudo_core_direct<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<FloatMat<F>> {
    require_unitary_setting(a, "direct formula")?;
    let (f, am, threshold) = factors_with_power(a, tol)?;
    let ad = drazin_from(&f, tol)?;
    Ok(&(&ad * &am) * &pinv(&am, threshold)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::scalar::Involution::ConjugateTranspose as CT;
    use crate::FloatMatrix;
    use num_complex::Complex;

    fn real(rows: &[&[f64]]) -> FloatMatrix {
        FloatMatrix::from_rows(CT, rows.iter().map(|r| r.iter().map(|&x| Complex::new(x, 0.)).collect()).collect())
    }

    fn close(a: &FloatMatrix, b: &FloatMatrix, eps: f64) -> bool {
        (a - b).frobenius_norm() <= eps
    }

    #[test]
    fn index_by_rank_stabilization() {
        let tol = Tolerance::default();
        assert_eq!(float_index(&FloatMatrix::identity(3, CT), tol).unwrap(), 1);
        assert_eq!(float_index(&real(&[&[0., 1.], &[0., 0.]]), tol).unwrap(), 2);
        assert_eq!(float_index(&real(&[&[1., 0., 0.], &[0., 0., 1.], &[0., 0., 0.]]), tol).unwrap(), 2);
    }

    #[test]
    fn formulas_on_small_examples() {
        let tol = Tolerance::default();
        let id = FloatMatrix::identity(3, CT);
        assert!(close(&pseudo_core_cn(&id, tol).unwrap(), &id, 1e-14));
        assert!(close(&pseudo_core_direct(&id, tol).unwrap(), &id, 1e-14));

        let d = real(&[&[3., 0.], &[0., 0.]]);
        assert!(close(&pseudo_core_cn(&d, tol).unwrap(), &real(&[&[1. / 3., 0.], &[0., 0.]]), 1e-15));

        let nil = real(&[&[0., 1.], &[0., 0.]]);
        assert!(pseudo_core_direct(&nil, tol).unwrap().frobenius_norm() < 1e-15);
        assert!(pseudo_core_cn(&nil, tol).unwrap().frobenius_norm() < 1e-15);

        let a = FloatMatrix::diagonal(CT, vec![Complex::new(0., 1.), Complex::new(0., 0.)]);
        let x = pseudo_core_direct(&a, tol).unwrap();
        assert!(close(&x, &FloatMatrix::diagonal(CT, vec![Complex::new(0., -1.), Complex::new(0., 0.)]), 1e-15));
    }

    #[test]
    fn factors_reconstruct() {
        let a = real(&[&[1., 2., 0.], &[0., 0., 1.], &[0., 0., 0.]]);
        let f = cn_factors(&a, Tolerance::default()).unwrap();
        assert_eq!((f.index, f.rank()), (2, 1));
        let inv = f.invariants(&a);
        assert!(inv.inverse_pair < 1e-13 && inv.reconstruction < 1e-13, "{inv:?}");
        let nn = f.n.power(2).unwrap();
        assert!(nn.frobenius_norm() < 1e-13);
    }

    #[test]
    fn singular_block_is_reported() {
        let a = real(&[&[1., 0.], &[0., 1e-3]]);
        let f = cn_factors(&a, Tolerance::default()).unwrap();
        assert_eq!(f.rank(), 2);
        let coarse = Tolerance::relative(1e-2);
        assert_eq!(inverse_checked(&f.d, coarse), Err(Error::SingularBlock { rank: 1, expected: 2 }));
    }
}
