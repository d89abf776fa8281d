//! Cross-method comparison of the float formulas and the exact result.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;
use serde::Serialize;

use super::{
    defining_residuals, float_index, pseudo_core_cn, pseudo_core_direct, pseudo_core_hs, rel_diff, FloatMat, SvdReal,
    Tolerance,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::pseudo_core::pseudo_core_inverse;
use crate::scalar::Involution;
use crate::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hs,
    Cn,
    Direct,
    Exact,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Hs, Method::Cn, Method::Direct, Method::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hs => "hs",
            Method::Cn => "cn",
            Method::Direct => "direct",
            Method::Exact => "exact",
        }
    }

    pub fn is_float(self) -> bool {
        self != Method::Exact
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown method `{s}` (expected hs, cn, direct or exact)"))
    }
}

/// One float method run on `a`.
pub fn float_pseudo_core<F: SvdReal>(a: &FloatMat<F>, method: Method, tol: Tolerance) -> Result<FloatMat<F>> {
    match method {
        Method::Hs => pseudo_core_hs(a, tol),
        Method::Cn => pseudo_core_cn(a, tol),
        Method::Direct => pseudo_core_direct(a, tol),
        Method::Exact => Err(Error::Unsupported("the exact method takes an exact matrix".into())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodOutcome<F> {
    pub method: Method,
    /// Float methods report the index found by rank stabilization.
    pub index: Option<u32>,
    pub value: Option<FloatMat<F>>,
    /// Relative residuals of the three defining equations at `index`.
    pub residuals: Option<[f64; 3]>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairDiff {
    pub left: Method,
    pub right: Method,
    pub rel_diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport<F> {
    pub outcomes: Vec<MethodOutcome<F>>,
    pub pairwise: Vec<PairDiff>,
    /// Largest pairwise difference, 0 with fewer than two results.
    pub max_pairwise: f64,
    pub tolerance: Tolerance,
}

impl<F> CompareReport<F> {
    pub fn outcome(&self, m: Method) -> Option<&MethodOutcome<F>> {
        self.outcomes.iter().find(|o| o.method == m)
    }

    pub fn diff(&self, a: Method, b: Method) -> Option<f64> {
        self.pairwise.iter().find(|d| (d.left, d.right) == (a, b) || (d.left, d.right) == (b, a)).map(|d| d.rel_diff)
    }
}

/// The exact rational value of every float entry.
pub fn exact_from_float<F: SvdReal>(a: &FloatMat<F>) -> Result<ExactMatrix> {
    let conv =
        |x: F| Ratio::<BigInt>::from_float(x.approx_f64()).ok_or_else(|| Error::Parse(format!("non-finite entry {x}")));
    let data = a.data().iter().map(|z| Ok(Complex::new(conv(z.re)?, conv(z.im)?))).collect::<Result<Vec<_>>>()?;
    Matrix::new(a.rows(), a.cols(), data, a.involution())
}

/// Run `methods` on `a`. Failures of single methods are recorded in their
/// outcome; only a float method under transposition is an error.
pub fn compare<F: SvdReal>(a: &ExactMatrix, methods: &[Method], tol: Tolerance) -> Result<CompareReport<F>> {
    a.ensure_square()?;
    if a.involution() == Involution::Transpose {
        if let Some(m) = methods.iter().find(|m| m.is_float()) {
            return Err(Error::Unsupported(format!(
                "method {m} needs conjugate transposition; under transposition only `exact` applies"
            )));
        }
    }
    let af: FloatMat<F> = a.to_float();
    let mut outcomes = Vec::new();
    for &method in methods {
        let run = if method.is_float() {
            float_index(&af, tol).and_then(|m| Ok((m, float_pseudo_core(&af, method, tol)?)))
        } else {
            pseudo_core_inverse(a).map(|r| (r.index, r.value.to_float()))
        };
        outcomes.push(match run {
            Ok((m, x)) => MethodOutcome {
                method,
                index: Some(m),
                residuals: Some(defining_residuals(&af, &x, m)?),
                value: Some(x),
                error: None,
            },
            Err(e) => MethodOutcome { method, index: None, value: None, residuals: None, error: Some(e.to_string()) },
        });
    }
    let mut pairwise = Vec::new();
    for (i, p) in outcomes.iter().enumerate() {
        for q in &outcomes[i + 1..] {
            if let (Some(x), Some(y)) = (&p.value, &q.value) {
                pairwise.push(PairDiff { left: p.method, right: q.method, rel_diff: rel_diff(x, y) });
            }
        }
    }
    let max_pairwise = pairwise.iter().map(|d| d.rel_diff).fold(0.0, f64::max);
    Ok(CompareReport { outcomes, pairwise, max_pairwise, tolerance: tol })
}
