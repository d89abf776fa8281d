//! Pseudo core (core-EP) and dual pseudo core inverses.
//!
//! The pseudo core inverse of `a` is the unique `x` with
//!
//! ```text
//! (I) x·a^{m+1} = a^m for some m ≥ 1,   (II) a·x² = x,   (III) (a·x)* = a·x
//! ```
//!
//! and the smallest such `m` is its index, which always equals the Drazin
//! index. It exists iff `a^m` has a {1,3}-inverse at `m = i(a)`, and then
//! equals `a^D·a^m·(a^m)^{(1,3)}`.

mod certificates;
mod laws;
mod relations;

pub use certificates::{regularity_certificates, two_sided_membership, RegularityCertificate, TwoSidedMembership};
pub use laws::{
    check_additive_pair, check_all, check_commute_pair, check_reverse_order_pair, identity_check, Analysis, Detail,
    Fact, Law, LawReport, Outcome, Witness,
};
pub use relations::{
    additive_sum, commute_transfer_check, relation_check, reverse_order_product, AlongReport, BcReport, ProductLaw,
    RelationReport,
};

use crate::classical::{
    core_nilpotent_factors, drazin_inverse, equation_inverse, one_four_by_projector, one_three_by_projector,
    Certificate, InverseKind,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::{ExactScalar, Scalar};

/// Residuals of the three defining equations (or of their mirror images).
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningReport<T> {
    pub index: u32,
    pub equations: [Certificate<T>; 3],
}

impl<T: Scalar> DefiningReport<T> {
    pub fn all_hold(&self) -> bool {
        self.equations.iter().all(Certificate::holds)
    }

    /// Largest Frobenius norm among the residuals.
    pub fn max_residual(&self) -> f64 {
        self.equations.iter().map(|c| c.residual.frobenius_norm()).fold(0.0, f64::max)
    }
}

/// `x·a^{m+1} − a^m`, `a·x² − x`, `(a·x)* − a·x`.
pub fn verify_defining_equations<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, m: u32) -> Result<DefiningReport<T>> {
    a.ensure_square()?;
    if a.shape() != x.shape() {
        return Err(Error::DimensionMismatch { op: "verify", lhs: a.shape(), rhs: x.shape() });
    }
    let am = a.power(m)?;
    let ax = a * x;
    Ok(DefiningReport {
        index: m,
        equations: [
            Certificate::new("(I) x·a^{m+1}=a^m", &(&(x * &am) * a), &am),
            Certificate::new("(II) a·x^2=x", &(&ax * x), x),
            Certificate::new("(III) (a·x)*=a·x", &ax.adjoint(), &ax),
        ],
    })
}

/// Mirrored system: `a^{m+1}·x − a^m`, `x²·a − x`, `(x·a)* − x·a`.
pub fn verify_dual_equations<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, m: u32) -> Result<DefiningReport<T>> {
    a.ensure_square()?;
    if a.shape() != x.shape() {
        return Err(Error::DimensionMismatch { op: "verify", lhs: a.shape(), rhs: x.shape() });
    }
    let am = a.power(m)?;
    let xa = x * a;
    Ok(DefiningReport {
        index: m,
        equations: [
            Certificate::new("(I') a^{m+1}·x=a^m", &(a * &(&am * x)), &am),
            Certificate::new("(II') x^2·a=x", &(x * &xa), x),
            Certificate::new("(III') (x·a)*=x·a", &xa.adjoint(), &xa),
        ],
    })
}

/// Whether `x·a^{k+1} = a^k`.
pub fn condition_one_holds<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, k: u32) -> bool {
    let ak = a.power(k).expect("square");
    &(x * &ak) * a == ak
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoCoreResult<T> {
    pub value: Matrix<T>,
    pub index: u32,
    pub drazin_part: Matrix<T>,
    /// `a·x` for the pseudo core inverse, `x·a` for the dual.
    pub projector: Matrix<T>,
    pub certificates: DefiningReport<T>,
}

fn nonexistence_reason<T: ExactScalar>(a: &Matrix<T>, index: u32) -> String {
    let n = a.rows() as u32;
    let any_power_has_one = (1..=n.max(1)).any(|k| one_three_by_projector(&a.power(k).expect("square")).is_ok());
    if any_power_has_one {
        format!("{{1,3}}-inverse of A^m nonexistent for all m ≥ i(A) = {index}")
    } else {
        "{1,3}-inverse of A^m nonexistent for all m ≤ n".to_string()
    }
}

/// `a^D·a^m·(a^m)^{(1,3)}` at `m = i(a)`, or [`Error::NoSolution`] when
/// `a^m` has no {1,3}-inverse.
pub fn pseudo_core_inverse<T: ExactScalar>(a: &Matrix<T>) -> Result<PseudoCoreResult<T>> {
    a.ensure_square()?;
    let drazin = drazin_inverse(a)?;
    let m = drazin.index.expect("drazin index");
    let am = a.power(m)?;
    let x13 = one_three_by_projector(&am).map_err(|_| Error::NoSolution(nonexistence_reason(a, m)))?;
    let value = &(&drazin.value * &am) * &x13;
    let projector = a * &value;
    let certificates = verify_defining_equations(a, &value, m)?;
    Ok(PseudoCoreResult { value, index: m, drazin_part: drazin.value, projector, certificates })
}

/// Dual pseudo core inverse as `(pseudo_core_inverse(a*))*`, verified
/// against the mirrored equations.
pub fn dual_pseudo_core_inverse<T: ExactScalar>(a: &Matrix<T>) -> Result<PseudoCoreResult<T>> {
    let star = pseudo_core_inverse(&a.adjoint())?;
    let value = star.value.adjoint();
    let projector = &value * a;
    let certificates = verify_dual_equations(a, &value, star.index)?;
    Ok(PseudoCoreResult { value, index: star.index, drazin_part: star.drazin_part.adjoint(), projector, certificates })
}

/// Mirror formula `(a^m)^{(1,4)}·a^m·a^D`, computed without passing
/// through the adjoint.
pub fn dual_pseudo_core_direct<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let drazin = drazin_inverse(a)?;
    let m = drazin.index.expect("drazin index");
    let am = a.power(m)?;
    let x14 = one_four_by_projector(&am)?;
    Ok(&(&x14 * &am) * &drazin.value)
}

/// `a = c_a + n_a` with `c_a = a·a^D·a` and `n_a = (1 − a·a^D)·a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreNilpotentRecord<T> {
    pub core_part: Matrix<T>,
    pub nilpotent_part: Matrix<T>,
    pub index: u32,
}

impl<T: ExactScalar> CoreNilpotentRecord<T> {
    /// Checks `a = c + n`, `c·n = n·c = 0`, `n^index = 0` and `c^# = a^D`.
    pub fn invariants(&self, a: &Matrix<T>, drazin: &Matrix<T>) -> Vec<(&'static str, bool)> {
        let (c, n) = (&self.core_part, &self.nilpotent_part);
        let group_ok = equation_inverse(c, InverseKind::Group).map_or(false, |g| g.value == *drazin);
        vec![
            ("a=c+n", &(c + n) == a),
            ("c·n=0", (c * n).is_zero()),
            ("n·c=0", (n * c).is_zero()),
            ("n^index=0", n.power(self.index).map_or(false, |p| p.is_zero())),
            ("c^#=a^D", group_ok),
        ]
    }
}

pub fn core_nilpotent<T: ExactScalar>(a: &Matrix<T>) -> Result<CoreNilpotentRecord<T>> {
    let n = a.ensure_square()?;
    let drazin = drazin_inverse(a)?;
    let ad = &drazin.value;
    let core_part = &(a * ad) * a;
    let id = Matrix::identity(n, a.involution());
    let nilpotent_part = &(&id - &(a * ad)) * a;
    Ok(CoreNilpotentRecord { core_part, nilpotent_part, index: drazin.index.expect("drazin index") })
}

/// Exact version of the core-nilpotent formula `Q1·D⁻¹·(Q1*·Q1)⁻¹·Q1*`.
/// Under transposition `Q1ᵀ·Q1` can be singular, which happens exactly when
/// the pseudo core inverse does not exist.
pub fn pseudo_core_by_core_nilpotent<T: ExactScalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let f = core_nilpotent_factors(a)?;
    if f.q1.cols() == 0 {
        return Ok(Matrix::zeros(a.rows(), a.cols(), a.involution()));
    }
    let d_inv = linalg::inverse(&f.d)?;
    let q1s = f.q1.adjoint();
    let gram_inv = linalg::inverse(&(&q1s * &f.q1)).map_err(|_| Error::NoSolution("Q1*·Q1 is singular".into()))?;
    Ok(&(&(&f.q1 * &d_inv) * &gram_inv) * &q1s)
}

/// One computation route for the pseudo core inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Drazin inverse times `a^m` times the projector {1,3}-inverse.
    Direct,
    /// Same formula with the {1,3}-inverse from the equation solver.
    DirectSolver,
    /// Core inverse of the core part `a·a^D·a`.
    CorePart,
    /// `a^{m−1}·(a^m)^core`.
    PowerCore,
    /// Core-nilpotent similarity formula.
    CoreNilpotent,
    /// `a^p·u*` from a regularity certificate.
    Regularity,
}

impl Route {
    pub const ALL: [Route; 6] = [
        Route::Direct,
        Route::DirectSolver,
        Route::CorePart,
        Route::PowerCore,
        Route::CoreNilpotent,
        Route::Regularity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::DirectSolver => "direct_solver",
            Route::CorePart => "core_part",
            Route::PowerCore => "power_core",
            Route::CoreNilpotent => "core_nilpotent",
            Route::Regularity => "regularity",
        }
    }
}

/// Run one route; `Ok(None)` means the route reports nonexistence.
pub fn compute_by_route<T: ExactScalar>(a: &Matrix<T>, route: Route) -> Result<Option<Matrix<T>>> {
    let found = |r: Result<Matrix<T>>| match r {
        Ok(x) => Ok(Some(x)),
        Err(Error::NoSolution(_)) => Ok(None),
        Err(e) => Err(e),
    };
    match route {
        Route::Direct => found(pseudo_core_inverse(a).map(|r| r.value)),
        Route::DirectSolver => {
            let drazin = drazin_inverse(a)?;
            let m = drazin.index.expect("drazin index");
            let am = a.power(m)?;
            found(equation_inverse(&am, InverseKind::OneThree).map(|x13| &(&drazin.value * &am) * &x13.value))
        }
        Route::CorePart => {
            let rec = core_nilpotent(a)?;
            found(equation_inverse(&rec.core_part, InverseKind::Core).map(|r| r.value))
        }
        Route::PowerCore => {
            let m = linalg::drazin_index(a)?;
            let am = a.power(m)?;
            found(equation_inverse(&am, InverseKind::Core).map(|core| &a.power(m - 1).expect("square") * &core.value))
        }
        Route::CoreNilpotent => found(pseudo_core_by_core_nilpotent(a)),
        Route::Regularity => found(regularity_certificates(a).map(|c| &a.power(c.p).expect("square") * &c.u.adjoint())),
    }
}
