//! Regularity witnesses: `a^p = u·(a*)^{p+1}·a^p` and `a^q = v·a^{q+1}`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::ExactScalar;

/// `a^m = a^m·(a*)^{m+1}·y` and `a^m = z·(a*)^{m+1}·a^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSidedMembership<T> {
    pub m: u32,
    pub y: Matrix<T>,
    pub z: Matrix<T>,
}

impl<T: ExactScalar> TwoSidedMembership<T> {
    pub fn holds(&self, a: &Matrix<T>) -> bool {
        let am = a.power(self.m).expect("square");
        let s = a.adjoint().power(self.m + 1).expect("square");
        &(&am * &s) * &self.y == am && &(&self.z * &s) * &am == am
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityCertificate<T> {
    pub u: Matrix<T>,
    pub p: u32,
    pub v: Matrix<T>,
    pub q: u32,
    pub two_sided: Option<TwoSidedMembership<T>>,
}

impl<T: ExactScalar> RegularityCertificate<T> {
    pub fn holds(&self, a: &Matrix<T>) -> bool {
        let ap = a.power(self.p).expect("square");
        let sp = a.adjoint().power(self.p + 1).expect("square");
        let aq = a.power(self.q).expect("square");
        let lhs_ok = &(&self.u * &sp) * &ap == ap;
        let rhs_ok = &self.v * &(&aq * a) == aq;
        lhs_ok && rhs_ok && self.two_sided.as_ref().map_or(true, |t| t.holds(a))
    }
}

fn search_bound(n: usize) -> u32 {
    n.max(1) as u32
}

/// First `p, q` in `1..=n` admitting witnesses, or [`Error::NoSolution`]
/// when no `p` works (exactly when `a` has no pseudo core inverse).
pub fn regularity_certificates<T: ExactScalar>(a: &Matrix<T>) -> Result<RegularityCertificate<T>> {
    let n = a.ensure_square()?;
    let star = a.adjoint();
    let mut left = None;
    for p in 1..=search_bound(n) {
        let ap = a.power(p)?;
        let s = &star.power(p + 1)? * &ap;
        if let Some(u) = linalg::solve_left(&s, &ap)? {
            left = Some((u, p));
            break;
        }
    }
    let Some((u, p)) = left else {
        return Err(Error::NoSolution(format!("no u with a^p = u·(a*)^(p+1)·a^p for p ≤ {n}")));
    };
    let mut right = None;
    for q in 1..=search_bound(n) {
        let aq = a.power(q)?;
        if let Some(v) = linalg::solve_left(&(&aq * a), &aq)? {
            right = Some((v, q));
            break;
        }
    }
    let (v, q) = right.expect("every square matrix is strongly pi-regular");
    Ok(RegularityCertificate { u, p, v, q, two_sided: two_sided_membership(a)? })
}

/// Smallest `m ≤ n + 1` with `a^m ∈ a^m(a*)^{m+1}R ∩ R(a*)^{m+1}a^m`.
pub fn two_sided_membership<T: ExactScalar>(a: &Matrix<T>) -> Result<Option<TwoSidedMembership<T>>> {
    let n = a.ensure_square()?;
    let star = a.adjoint();
    for m in 1..=search_bound(n) + 1 {
        let am = a.power(m)?;
        let s = star.power(m + 1)?;
        let Some(y) = linalg::solve_right(&(&am * &s), &am)? else {
            continue;
        };
        let Some(z) = linalg::solve_left(&(&s * &am), &am)? else {
            continue;
        };
        return Ok(Some(TwoSidedMembership { m, y, z }));
    }
    Ok(None)
}
