//! `A = U·[ΣK ΣL; 0 0]·U*` and the pseudo core inverse recursion on `ΣK`.

use num_complex::Complex;
use serde::Serialize;

use super::svd::{svd, truncated_inverse, Svd};
use super::{require_unitary_setting, FloatMat, SvdReal, Tolerance};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct HSDecomposition<F> {
    pub u: FloatMat<F>,
    /// Diagonal of `Σ`, non-increasing and positive.
    pub sigma: Vec<F>,
    pub k: FloatMat<F>,
    pub l: FloatMat<F>,
    pub r: usize,
}

/// Residuals of the decomposition; the reconstruction error is relative to
/// `‖A‖`, the others absolute (Frobenius norm throughout).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HsInvariants {
    pub unitarity: f64,
    pub kk_plus_ll: f64,
    pub reconstruction: f64,
    pub sigma_ordered: bool,
}

impl HsInvariants {
    pub fn within(&self, tol: f64) -> bool {
        self.sigma_ordered && self.unitarity <= tol && self.kk_plus_ll <= tol && self.reconstruction <= tol
    }

    pub fn max_residual(&self) -> f64 {
        self.unitarity.max(self.kk_plus_ll).max(self.reconstruction)
    }
}

impl<F: SvdReal> HSDecomposition<F> {
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    pub fn sigma_matrix(&self) -> FloatMat<F> {
        Matrix::diagonal(self.u.involution(), self.sigma.iter().map(|&s| Complex::new(s, F::zero())).collect())
    }

    /// `ΣK`, the block the recursion continues on.
    pub fn sigma_k(&self) -> FloatMat<F> {
        &self.sigma_matrix() * &self.k
    }

    /// `U·[ΣK ΣL; 0 0]·U*`.
    pub fn reconstruct(&self) -> FloatMat<F> {
        let s = self.sigma_matrix();
        let mut inner = Matrix::zeros(self.n(), self.n(), self.u.involution());
        inner.set_block(0, 0, &(&s * &self.k));
        inner.set_block(0, self.r, &(&s * &self.l));
        &(&self.u * &inner) * &self.u.adjoint()
    }

    pub fn invariants(&self, a: &FloatMat<F>) -> HsInvariants {
        let inv = a.involution();
        let id_n = Matrix::identity(self.n(), inv);
        let id_r = Matrix::identity(self.r, inv);
        let kk_ll = &(&self.k * &self.k.adjoint()) + &(&self.l * &self.l.adjoint());
        let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
        HsInvariants {
            unitarity: (&(&self.u * &self.u.adjoint()) - &id_n).frobenius_norm(),
            kk_plus_ll: (&kk_ll - &id_r).frobenius_norm(),
            reconstruction: (a - &self.reconstruct()).frobenius_norm() / scale,
            sigma_ordered: self.sigma.windows(2).all(|w| w[0] >= w[1]) && self.sigma.iter().all(|&s| s > F::zero()),
        }
    }
}

fn from_svd<F: SvdReal>(s: &Svd<F>, r: usize) -> HSDecomposition<F> {
    let n = s.u.rows();
    // U*·A·U = diag(Σ, 0)·V*·U, so [K L] is the top r rows of V*·U
    let m = &s.v.adjoint() * &s.u;
    HSDecomposition {
        u: s.u.clone(),
        sigma: s.sigma[..r].to_vec(),
        k: m.submatrix(0, r, 0, r),
        l: m.submatrix(0, r, r, n),
        r,
    }
}

pub fn hartwig_spindelbock<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<HSDecomposition<F>> {
    let n = a.ensure_square()?;
    require_unitary_setting(a, "Hartwig–Spindelböck decomposition")?;
    let s = svd(a)?;
    let r = s.rank(n, tol);
    if r == 0 {
        return Err(Error::RankZero);
    }
    Ok(from_svd(&s, r))
}

/// `A^⊕ = U·diag((ΣK)^⊕, 0)·U*`, re-decomposing `ΣK` at every level until
/// it is zero or numerically invertible. Each level shrinks the size, so the
/// depth is at most `n`. All levels share the rank threshold of `A` itself,
/// since `ΣK` inherits the roundoff of `A` rather than its own scale.
pub fn pseudo_core_hs<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<FloatMat<F>> {
    let n = a.ensure_square()?;
    require_unitary_setting(a, "HS recursion")?;
    let s = svd(a)?;
    let threshold = tol.threshold(n, s.sigma_max());
    Ok(recurse(a, s, threshold)?.0)
}

/// Depth of the recursion, for reporting.
pub fn hs_depth<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<usize> {
    let n = a.ensure_square()?;
    let s = svd(a)?;
    let threshold = tol.threshold(n, s.sigma_max());
    Ok(recurse(a, s, threshold)?.1)
}

fn recurse<F: SvdReal>(a: &FloatMat<F>, s: Svd<F>, threshold: F) -> Result<(FloatMat<F>, usize)> {
    let n = a.rows();
    let inv = a.involution();
    let r = s.rank_above(threshold);
    if r == 0 {
        return Ok((Matrix::zeros(n, n, inv), 1));
    }
    if r == n {
        return Ok((truncated_inverse(&s, n, inv), 1));
    }
    let hs = from_svd(&s, r);
    let sk = hs.sigma_k();
    let inner_svd = svd(&sk)?;
    let (inner, depth) = recurse(&sk, inner_svd, threshold)?;
    let mut padded = Matrix::zeros(n, n, inv);
    padded.set_block(0, 0, &inner);
    Ok((&(&hs.u * &padded) * &hs.u.adjoint(), depth + 1))
}
