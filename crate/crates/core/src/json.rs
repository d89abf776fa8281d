//! JSON encoding of matrices and reports.
//!
//! A matrix is
//!
//! ```text
//! {"rows": n, "cols": m, "involution": "transpose" | "conjugate_transpose",
//!  "mode": "exact" | "float", "entries": [[{"re": "p/q", "im": "r/s"}, ...], ...]}
//! ```
//!
//! Exact entries are rational strings in lowest terms (`"p/q"`, always with a
//! denominator on output; `"p"` and JSON integers are accepted on input).
//! Float entries are JSON numbers. `involution` and `mode` may be omitted on
//! input, defaulting to conjugate transposition and exact mode.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::classical::InverseResult;
use crate::error::{Error, Result};
use crate::float::{CompareReport, HsInvariants, SvdReal};
use crate::matrix::Matrix;
use crate::pseudo_core::{DefiningReport, LawReport, Outcome, PseudoCoreResult, Witness};
use crate::scalar::{Involution, RealScalar, ScalarMode};
use crate::suite::SuiteReport;
use crate::{ExactMatrix, FloatMatrix};

/// A real field with a JSON representation.
pub trait JsonReal: RealScalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(what: impl std::fmt::Display) -> Error {
    Error::Parse(what.to_string())
}

pub fn parse_rational(s: &str) -> Result<Ratio<BigInt>> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| bad(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(bad(format!("zero denominator in `{s}`")));
    }
    Ok(Ratio::new(n, d))
}

impl JsonReal for Ratio<BigInt> {
    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
            other => Err(bad(format!("exact entries must be rational strings or integers, got {other}"))),
        }
    }
}

macro_rules! json_float {
    ($t:ty) => {
        impl JsonReal for $t {
            fn to_json(&self) -> Value {
                json!(*self)
            }

            fn from_json(v: &Value) -> Result<Self> {
                match v {
                    Value::Number(n) => n.as_f64().map(|x| x as $t).ok_or_else(|| bad(format!("bad number {n}"))),
                    Value::String(s) => {
                        let q = parse_rational(s)?;
                        Ok(q.to_f64().unwrap_or(f64::NAN) as $t)
                    }
                    other => Err(bad(format!("float entries must be numbers, got {other}"))),
                }
            }
        }
    };
}

json_float!(f64);
json_float!(f32);

pub fn matrix_to_json<R: JsonReal>(m: &Matrix<Complex<R>>) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(|z| json!({"re": z.re.to_json(), "im": z.im.to_json()})).collect()))
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "involution": m.involution().as_str(),
        "mode": R::MODE.to_string(),
        "entries": entries,
    })
}

/// Header fields of a matrix document, read before the entries.
fn header(v: &Value) -> Result<(usize, usize, Option<Involution>, Option<ScalarMode>)> {
    let obj = v.as_object().ok_or_else(|| bad("matrix must be a JSON object"))?;
    let dim = |key: &str| {
        obj.get(key)
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .ok_or_else(|| bad(format!("missing or invalid `{key}`")))
    };
    let involution = match obj.get("involution") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<Involution>().map_err(bad)?),
        Some(other) => return Err(bad(format!("bad involution {other}"))),
    };
    let mode = match obj.get("mode").and_then(Value::as_str) {
        None => None,
        Some("exact") => Some(ScalarMode::Exact),
        Some("float") => Some(ScalarMode::Float),
        Some(other) => return Err(bad(format!("unknown mode `{other}` (expected exact or float)"))),
    };
    Ok((dim("rows")?, dim("cols")?, involution, mode))
}

/// Parse a matrix over `R`, ignoring the document's `mode` field.
pub fn matrix_from_json<R: JsonReal>(v: &Value, involution: Option<Involution>) -> Result<Matrix<Complex<R>>> {
    let (rows, cols, doc_inv, _) = header(v)?;
    let inv = involution.or(doc_inv).unwrap_or(Involution::ConjugateTranspose);
    let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing `entries` array"))?;
    if entries.len() != rows {
        return Err(bad(format!("`rows` is {rows} but `entries` has {} rows", entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(format!("row {i} is not an array")))?;
        if row.len() != cols {
            return Err(bad(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            let part = |key: &str| -> Result<R> {
                match e.get(key) {
                    None | Some(Value::Null) => Ok(R::zero()),
                    Some(p) => R::from_json(p).map_err(|err| bad(format!("entry ({i},{j}).{key}: {err}"))),
                }
            };
            if !e.is_object() {
                return Err(bad(format!("entry ({i},{j}) must be an object with `re` and `im`")));
            }
            data.push(Complex::new(part("re")?, part("im")?));
        }
    }
    Matrix::new(rows, cols, data, inv)
}

/// A parsed matrix in whichever mode the document (or the caller) asked for.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(ExactMatrix),
    Float(FloatMatrix),
}

impl AnyMatrix {
    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyMatrix::Exact(_) => ScalarMode::Exact,
            AnyMatrix::Float(_) => ScalarMode::Float,
        }
    }

    pub fn involution(&self) -> Involution {
        match self {
            AnyMatrix::Exact(m) => m.involution(),
            AnyMatrix::Float(m) => m.involution(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Exact(m) => matrix_to_json(m),
            AnyMatrix::Float(m) => matrix_to_json(m),
        }
    }
}

/// Parse a matrix document. `involution` and `mode` override the document.
pub fn parse_matrix(text: &str, involution: Option<Involution>, mode: Option<ScalarMode>) -> Result<AnyMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let (_, _, _, doc_mode) = header(&v)?;
    match mode.or(doc_mode).unwrap_or(ScalarMode::Exact) {
        ScalarMode::Exact => {
            if doc_mode == Some(ScalarMode::Float) {
                // exact reading of float entries: every double is a dyadic rational
                let f = matrix_from_json::<f64>(&v, involution)?;
                return Ok(AnyMatrix::Exact(crate::float::exact_from_float(&f)?));
            }
            matrix_from_json(&v, involution).map(AnyMatrix::Exact)
        }
        ScalarMode::Float => matrix_from_json(&v, involution).map(AnyMatrix::Float),
    }
}

fn opt_matrix<R: JsonReal>(m: &Option<Matrix<Complex<R>>>) -> Value {
    m.as_ref().map_or(Value::Null, matrix_to_json)
}

fn witness_json<R: JsonReal>(w: &Witness<Complex<R>>) -> Value {
    json!({"equality": w.equality, "lhs": opt_matrix(&w.lhs), "rhs": opt_matrix(&w.rhs)})
}

/// Exact residuals are written as matrices of rational strings, float ones
/// as their Frobenius norm.
fn residual_json<R: JsonReal>(label: &str, holds: bool, residual: &Matrix<Complex<R>>) -> Value {
    let mut obj = Map::new();
    obj.insert("equation".into(), json!(label));
    obj.insert("holds".into(), json!(holds));
    obj.insert("residual_norm".into(), json!(residual.frobenius_norm()));
    if R::MODE == ScalarMode::Exact {
        obj.insert("residual".into(), matrix_to_json(residual));
    }
    Value::Object(obj)
}

pub fn inverse_result_json<R: JsonReal>(r: &InverseResult<Complex<R>>) -> Value {
    json!({
        "kind": r.kind.tag(),
        "value": matrix_to_json(&r.value),
        "index": r.index,
        "verified": r.verified(),
        "certificates": r.certificates.iter().map(|c| residual_json(&c.label, c.holds(), &c.residual)).collect::<Vec<_>>(),
    })
}

pub fn defining_report_json<R: JsonReal>(d: &DefiningReport<Complex<R>>) -> Value {
    json!({
        "index": d.index,
        "all_hold": d.all_hold(),
        "equations": d.equations.iter().map(|c| residual_json(&c.label, c.holds(), &c.residual)).collect::<Vec<_>>(),
    })
}

/// `kind` is `pseudo_core` or `dual_pseudo_core`.
pub fn pseudo_core_result_json<R: JsonReal>(kind: &str, r: &PseudoCoreResult<Complex<R>>) -> Value {
    json!({
        "kind": kind,
        "value": matrix_to_json(&r.value),
        "index": r.index,
        "drazin_part": matrix_to_json(&r.drazin_part),
        "projector": matrix_to_json(&r.projector),
        "certificates": defining_report_json(&r.certificates),
    })
}

pub fn law_report_json<R: JsonReal>(r: &LawReport<Complex<R>>) -> Value {
    let mut obj = Map::new();
    obj.insert("law".into(), json!(r.law.id()));
    obj.insert(
        "holds".into(),
        match r.outcome {
            Outcome::Pass => json!(true),
            Outcome::Fail => json!(false),
            Outcome::NotApplicable(_) => Value::Null,
        },
    );
    obj.insert("outcome".into(), json!(r.outcome.tag()));
    if let Outcome::NotApplicable(reason) = &r.outcome {
        obj.insert("reason".into(), json!(reason));
    }
    obj.insert("checks".into(), json!(r.checks));
    let details: Map<String, Value> =
        r.details.iter().map(|d| (d.key.clone(), serde_json::to_value(&d.value).unwrap_or(Value::Null))).collect();
    obj.insert("details".into(), Value::Object(details));
    if let Some(w) = &r.witness {
        obj.insert("witness".into(), witness_json(w));
    }
    Value::Object(obj)
}

pub fn suite_report_json<R: JsonReal>(r: &SuiteReport<Complex<R>>) -> Value {
    let per_law: Map<String, Value> = r.per_law.iter().map(|(law, c)| (law.id().to_string(), json!(c))).collect();
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "case": f.case,
                "law": f.law.id(),
                "involution": f.involution.as_str(),
                "equality": f.equality,
                "input": matrix_to_json(&f.input),
                "witness": f.witness.as_ref().map_or(Value::Null, witness_json),
            })
        })
        .collect();
    json!({
        "seed": r.seed,
        "cases": r.cases,
        "scope": r.scope.iter().map(|l| l.id()).collect::<Vec<_>>(),
        "summary": r.summary,
        "per_law": per_law,
        "failures": failures,
    })
}

pub fn compare_report_json<F: SvdReal + JsonReal>(r: &CompareReport<F>) -> Value {
    let methods: Vec<Value> = r
        .outcomes
        .iter()
        .map(|o| {
            json!({
                "method": o.method.name(),
                "index": o.index,
                "value": opt_matrix(&o.value),
                "residuals": o.residuals.map(|[r1, r2, r3]| json!({"I": r1, "II": r2, "III": r3})),
                "error": o.error,
            })
        })
        .collect();
    let pairwise: Vec<Value> = r
        .pairwise
        .iter()
        .map(|d| json!({"left": d.left.name(), "right": d.right.name(), "rel_diff": d.rel_diff}))
        .collect();
    json!({
        "tolerance": r.tolerance.relative,
        "methods": methods,
        "pairwise": pairwise,
        "max_pairwise": r.max_pairwise,
    })
}

pub fn hs_invariants_json(h: &HsInvariants) -> Value {
    json!({
        "unitarity": h.unitarity,
        "kk_plus_ll": h.kk_plus_ll,
        "reconstruction": h.reconstruction,
        "sigma_ordered": h.sigma_ordered,
    })
}
