//! Floating-point pseudo core inverses of complex matrices.
//!
//! Only conjugate transposition is supported: the decomposition needs a
//! unitary factor and the core-nilpotent formula a positive definite Gram
//! matrix. Rank decisions count singular values above `factor·σ_max`, where
//! the factor is `n·ε` unless a [`Tolerance`] overrides it.

mod cn;
mod compare;
mod hs;
mod svd;

pub use cn::{cn_factors, drazin_float, float_index, pseudo_core_cn, pseudo_core_direct, CNFactors, CnInvariants};
pub use compare::{compare, exact_from_float, float_pseudo_core, CompareReport, Method, MethodOutcome, PairDiff};
pub use hs::{hartwig_spindelbock, hs_depth, pseudo_core_hs, HSDecomposition, HsInvariants};
pub use svd::{inverse_checked, numeric_rank, pinv, svd, Svd};

use num_complex::Complex;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FloatReal, Involution, RealScalar, Scalar};

pub type FloatMat<F> = Matrix<Complex<F>>;

/// Real types the engine runs over (`f32`, `f64`).
pub trait SvdReal: FloatReal + Copy {}

impl<F: FloatReal + Copy> SvdReal for F {}

/// Rank threshold factor relative to the largest singular value.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tolerance {
    /// `None` means `n·ε`.
    pub relative: Option<f64>,
}

impl Tolerance {
    pub fn relative(factor: f64) -> Self {
        Tolerance { relative: Some(factor) }
    }

    pub fn threshold<F: SvdReal>(&self, n: usize, sigma_max: F) -> F {
        let factor = match self.relative {
            Some(f) => <F as FloatReal>::from_f64(f),
            None => <F as RealScalar>::from_i64(n as i64) * <F as Float>::epsilon(),
        };
        factor * sigma_max
    }
}

pub(crate) fn require_unitary_setting<T>(a: &Matrix<T>, what: &str) -> Result<()>
where
    T: Scalar,
{
    if a.involution() != Involution::ConjugateTranspose {
        return Err(Error::Unsupported(format!("{what} needs conjugate transposition")));
    }
    Ok(())
}

/// `‖a − b‖ / max(‖a‖, ‖b‖)` in the Frobenius norm; 0 when both vanish.
pub fn rel_diff<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> f64 {
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    if scale == 0.0 {
        return 0.0;
    }
    (a - b).frobenius_norm() / scale
}

/// Relative residuals of `x·a^{m+1} = a^m`, `a·x² = x` and `(a·x)* = a·x`.
pub fn defining_residuals<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, m: u32) -> Result<[f64; 3]> {
    let am = a.power(m)?;
    let ax = a.try_mul(x)?;
    Ok([rel_diff(&(x * &(&am * a)), &am), rel_diff(&(&ax * x), x), rel_diff(&ax.adjoint(), &ax)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FloatMatrix;
    use Involution::ConjugateTranspose as CT;

    #[test]
    fn default_threshold_scales_with_size() {
        let t = Tolerance::default().threshold(4, 2.0f64);
        assert_eq!(t, 8.0 * f64::EPSILON);
        assert_eq!(Tolerance::relative(1e-6).threshold(4, 2.0f64), 2e-6);
    }

    #[test]
    fn rel_diff_edges() {
        let z = FloatMatrix::zeros(2, 2, CT);
        let id = FloatMatrix::identity(2, CT);
        assert_eq!(rel_diff(&z, &z), 0.0);
        assert_eq!(rel_diff(&z, &id), 1.0);
        assert_eq!(rel_diff(&id, &id), 0.0);
    }
}
