//! Singular value decomposition and what the engine derives from it.

use num_complex::Complex;
use num_traits::{Float, One, Zero};

use super::{FloatMat, SvdReal, Tolerance};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Involution;

const MAX_SWEEPS: usize = 80;

/// `a = u·diag(sigma)·v*` with `sigma` non-increasing. For an `r×c` input,
/// `u` is `r×k` and `v` is `c×k` with `k = min(r, c)`, so both are unitary
/// when `a` is square.
#[derive(Clone, Debug, PartialEq)]
pub struct Svd<F> {
    pub u: FloatMat<F>,
    pub sigma: Vec<F>,
    pub v: FloatMat<F>,
}

pub fn svd<F: SvdReal>(a: &FloatMat<F>) -> Result<Svd<F>> {
    let (r, c) = a.shape();
    if a.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Unsupported("matrix has non-finite entries".into()));
    }
    if r < c {
        let t = svd(&a.adjoint())?;
        return Ok(Svd { u: t.v, sigma: t.sigma, v: t.u });
    }
    one_sided_jacobi(a)
}

/// One-sided Jacobi on the columns of `a` (`r ≥ c`): rotate column pairs
/// until all are mutually orthogonal, so that `a·V = G` with orthogonal
/// columns `G = U·Σ`.
fn one_sided_jacobi<F: SvdReal>(a: &FloatMat<F>) -> Result<Svd<F>> {
    let (r, c) = a.shape();
    let inv = a.involution();
    // dot products carry roundoff of about r·ε relative to the column norms
    let eps = <F as Float>::epsilon() * <F as crate::scalar::RealScalar>::from_i64(r.max(1) as i64);
    // column-major working copies
    let mut g: Vec<Vec<Complex<F>>> = (0..c).map(|j| (0..r).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<Complex<F>>> =
        (0..c).map(|j| (0..c).map(|i| if i == j { Complex::one() } else { Complex::zero() }).collect()).collect();

    // columns below ε·‖A‖ are roundoff; they count as zero and are never rotated
    let negligible = {
        let total = g.iter().fold(F::zero(), |s, col| s + norm_sqr(col));
        <F as Float>::epsilon() * <F as Float>::epsilon() * total
    };
    let mut converged = c < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        converged = true;
        for p in 0..c {
            for q in p + 1..c {
                let alpha = norm_sqr(&g[p]);
                let beta = norm_sqr(&g[q]);
                let gamma = dot(&g[p], &g[q]);
                let mag = gamma.norm();
                if alpha <= negligible || beta <= negligible || mag <= eps * Float::sqrt(alpha * beta) {
                    continue;
                }
                converged = false;
                let phase = gamma / mag;
                let two = F::one() + F::one();
                let zeta = (beta - alpha) / (two * mag);
                let sign = if zeta < F::zero() { -F::one() } else { F::one() };
                let t = sign / (Float::abs(zeta) + Float::sqrt(F::one() + zeta * zeta));
                let cs = F::one() / Float::sqrt(F::one() + t * t);
                let sn = cs * t;
                // with q' = conj(phase)·q the pair is a real rotation
                let rotate = |cols: &mut Vec<Vec<Complex<F>>>| {
                    let (lo, hi) = cols.split_at_mut(q);
                    let (xp, xq) = (&mut lo[p], &mut hi[0]);
                    for (x, y) in xp.iter_mut().zip(xq.iter_mut()) {
                        let yq = phase.conj() * *y;
                        let nx = *x * cs - yq * sn;
                        let ny = *x * sn + yq * cs;
                        *x = nx;
                        *y = ny;
                    }
                };
                rotate(&mut g);
                rotate(&mut v);
            }
        }
    }
    if !converged {
        return Err(Error::Unsupported("Jacobi SVD did not converge".into()));
    }

    let norms: Vec<F> = g.iter().map(|col| Float::sqrt(norm_sqr(col))).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite"));
    let sigma: Vec<F> =
        order.iter().map(|&j| if norms[j] * norms[j] > negligible { norms[j] } else { F::zero() }).collect();
    let mut u_cols: Vec<Vec<Complex<F>>> = Vec::with_capacity(c);
    for &j in &order {
        if norms[j] * norms[j] > negligible {
            u_cols.push(g[j].iter().map(|z| *z / norms[j]).collect());
        } else {
            u_cols.push(complete_basis(&u_cols, r));
        }
    }
    Ok(Svd {
        u: Matrix::from_fn(r, c, inv, |i, k| u_cols[k][i]),
        sigma,
        v: Matrix::from_fn(c, c, inv, |i, k| v[order[k]][i]),
    })
}

fn dot<F: SvdReal>(x: &[Complex<F>], y: &[Complex<F>]) -> Complex<F> {
    x.iter().zip(y).fold(Complex::zero(), |s, (p, q)| s + p.conj() * *q)
}

fn norm_sqr<F: SvdReal>(x: &[Complex<F>]) -> F {
    x.iter().fold(F::zero(), |s, z| s + z.norm_sqr())
}

/// A unit vector orthogonal to `basis`: the standard basis vector with the
/// largest residual after two rounds of Gram–Schmidt.
fn complete_basis<F: SvdReal>(basis: &[Vec<Complex<F>>], r: usize) -> Vec<Complex<F>> {
    let mut best: Option<(F, Vec<Complex<F>>)> = None;
    for e in 0..r {
        let mut x: Vec<Complex<F>> = (0..r).map(|i| if i == e { Complex::one() } else { Complex::zero() }).collect();
        for _ in 0..2 {
            for b in basis {
                let h = dot(b, &x);
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi = *xi - *bi * h;
                }
            }
        }
        let n = Float::sqrt(norm_sqr(&x));
        if best.as_ref().map_or(true, |(m, _)| n > *m) {
            best = Some((n, x.iter().map(|z| *z / n).collect()));
        }
    }
    best.map(|(_, x)| x).unwrap_or_default()
}

impl<F: SvdReal> Svd<F> {
    pub fn sigma_max(&self) -> F {
        self.sigma.first().copied().unwrap_or_else(F::zero)
    }

    /// Singular values above the rank threshold for an `n`-sized problem,
    /// relative to this matrix's own `σ_max`.
    pub fn rank(&self, n: usize, tol: Tolerance) -> usize {
        self.rank_above(tol.threshold(n, self.sigma_max()))
    }

    pub fn rank_above(&self, threshold: F) -> usize {
        self.sigma.iter().filter(|&&s| s > threshold).count()
    }
}

/// Count of singular values above `tol`, by default `n·ε·σ_max`.
pub fn numeric_rank<F: SvdReal>(a: &FloatMat<F>, tol: Option<F>) -> Result<usize> {
    let s = svd(a)?;
    let n = a.rows().max(a.cols());
    let t = tol.unwrap_or_else(|| Tolerance::default().threshold(n, s.sigma_max()));
    Ok(s.sigma.iter().filter(|&&x| x > t).count())
}

/// `v·diag(1/σ_i)·u*` over the first `rank` singular values.
pub(crate) fn truncated_inverse<F: SvdReal>(s: &Svd<F>, rank: usize, inv: Involution) -> FloatMat<F> {
    let (rows, cols) = (s.v.rows(), s.u.rows());
    Matrix::from_fn(rows, cols, inv, |i, j| {
        (0..rank).fold(Complex::zero(), |acc, k| acc + s.v[(i, k)] * s.u[(j, k)].conj() / s.sigma[k])
    })
}

/// Moore–Penrose inverse, dropping singular values at or below `threshold`.
pub fn pinv<F: SvdReal>(a: &FloatMat<F>, threshold: F) -> Result<FloatMat<F>> {
    let s = svd(a)?;
    Ok(truncated_inverse(&s, s.rank_above(threshold), a.involution()))
}

/// Inverse of a square matrix, or [`Error::SingularBlock`] when its
/// numerical rank falls short.
pub fn inverse_checked<F: SvdReal>(a: &FloatMat<F>, tol: Tolerance) -> Result<FloatMat<F>> {
    let n = a.ensure_square()?;
    let s = svd(a)?;
    let rank = s.rank(n, tol);
    if rank < n {
        return Err(Error::SingularBlock { rank, expected: n });
    }
    Ok(truncated_inverse(&s, n, a.involution()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FloatMatrix;
    use Involution::ConjugateTranspose as CT;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn reconstructs_and_orders() {
        let a = FloatMatrix::from_rows(
            CT,
            vec![
                vec![c(1., 2.), c(0., 0.), c(3., -1.)],
                vec![c(0., 1.), c(2., 0.), c(0., 0.)],
                vec![c(1., 0.), c(1., 1.), c(-2., 0.)],
            ],
        );
        let s = svd(&a).unwrap();
        assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
        let sig = Matrix::diagonal(CT, s.sigma.iter().map(|&x| c(x, 0.)).collect());
        let back = &(&s.u * &sig) * &s.v.adjoint();
        assert!((&back - &a).frobenius_norm() < 1e-12 * a.frobenius_norm());
        let id = FloatMatrix::identity(3, CT);
        assert!((&(&s.u * &s.u.adjoint()) - &id).frobenius_norm() < 1e-13);
        assert!((&(&s.v * &s.v.adjoint()) - &id).frobenius_norm() < 1e-13);
    }

    #[test]
    fn numeric_rank_examples() {
        assert_eq!(numeric_rank(&FloatMatrix::identity(3, CT), None).unwrap(), 3);
        assert_eq!(numeric_rank(&FloatMatrix::zeros(3, 3, CT), None).unwrap(), 0);
        let tiny = |e: f64| FloatMatrix::diagonal(CT, vec![c(1., 0.), c(e, 0.)]);
        // the default threshold is 2·ε ≈ 4.4e-16
        assert_eq!(numeric_rank(&tiny(1e-16), None).unwrap(), 1);
        assert_eq!(numeric_rank(&tiny(1e-15), None).unwrap(), 2);
        assert_eq!(numeric_rank(&tiny(1e-15), Some(1e-14)).unwrap(), 1);
    }

    #[test]
    fn pinv_of_rank_one() {
        let a = FloatMatrix::from_rows(CT, vec![vec![c(1., 0.), c(0., 1.)], vec![c(0., 0.), c(0., 0.)]]);
        let p = pinv(&a, 1e-14).unwrap();
        let want = FloatMatrix::from_rows(CT, vec![vec![c(0.5, 0.), c(0., 0.)], vec![c(0., -0.5), c(0., 0.)]]);
        assert!((&p - &want).frobenius_norm() < 1e-14);
        assert!(matches!(
            inverse_checked(&a, Tolerance::default()),
            Err(Error::SingularBlock { rank: 1, expected: 2 })
        ));
    }
}
