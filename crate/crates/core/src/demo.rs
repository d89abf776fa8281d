//! Replays of the two counterexamples: `remark-2.15` (a core inverse `x`
//! with `a²·x ≠ a`) and `remark-4.5` (orthogonality `ab = a*b = 0` without
//! `ba = 0` does not give a pseudo core inverse of `a + b`).

use serde_json::{json, Value};

use crate::classical::{core_by_projector, equation_inverse, InverseKind};
use crate::error::{Error, Result};
use crate::json::matrix_to_json;
use crate::matrix::Matrix;
use crate::pseudo_core::{identity_check, pseudo_core_inverse, Law};
use crate::scalar::{gaussian, Involution};
use crate::ExactMatrix;

pub const NAMES: [&str; 2] = ["remark-2.15", "remark-4.5"];

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub label: String,
    pub matrix: Option<ExactMatrix>,
    pub note: Option<String>,
    /// The inequality or nonexistence the example hinges on.
    pub decisive: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Demo {
    pub name: &'static str,
    pub involution: Involution,
    pub steps: Vec<Step>,
    /// Every expected fact was confirmed.
    pub confirmed: bool,
}

impl Demo {
    fn new(name: &'static str, involution: Involution) -> Self {
        Demo { name, involution, steps: Vec::new(), confirmed: true }
    }

    fn show(&mut self, label: impl Into<String>, m: &ExactMatrix) {
        self.steps.push(Step { label: label.into(), matrix: Some(m.clone()), note: None, decisive: false });
    }

    fn note(&mut self, label: impl Into<String>, note: impl Into<String>) {
        self.steps.push(Step { label: label.into(), matrix: None, note: Some(note.into()), decisive: false });
    }

    /// A decisive fact; `ok` says whether it came out as expected.
    fn decide(&mut self, label: impl Into<String>, m: Option<&ExactMatrix>, note: impl Into<String>, ok: bool) {
        self.confirmed &= ok;
        self.steps.push(Step { label: label.into(), matrix: m.cloned(), note: Some(note.into()), decisive: true });
    }

    pub fn step(&self, label: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.label == label)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "demo": self.name,
            "involution": self.involution.as_str(),
            "confirmed": self.confirmed,
            "steps": self.steps.iter().map(|s| json!({
                "label": s.label,
                "matrix": s.matrix.as_ref().map_or(Value::Null, matrix_to_json),
                "note": s.note,
                "decisive": s.decisive,
            })).collect::<Vec<_>>(),
        })
    }
}

fn m(inv: Involution, rows: &[&[(i64, i64)]]) -> ExactMatrix {
    Matrix::from_rows(inv, rows.iter().map(|r| r.iter().map(|&(a, b)| gaussian(a, b)).collect()).collect())
}

pub fn run(name: &str) -> Result<Demo> {
    match name {
        "remark-2.15" => core_counterexample(),
        "remark-4.5" => sum_counterexample(),
        other => Err(Error::NotApplicable(format!("unknown demo `{other}` (expected {})", NAMES.join(" or ")))),
    }
}

fn core_counterexample() -> Result<Demo> {
    let inv = Involution::Transpose;
    let mut d = Demo::new("remark-2.15", inv);
    let a = m(inv, &[&[(1, 0), (0, 1)], &[(0, 0), (0, 0)]]);
    d.show("a", &a);
    let a2 = &a * &a;
    d.show("a^2", &a2);
    let group = equation_inverse(&a, InverseKind::Group)?.value;
    d.show("a^# (group inverse)", &group);
    let x13 = equation_inverse(&a, InverseKind::OneThree)?.value;
    d.show("a^(1,3)", &x13);
    let x = equation_inverse(&a, InverseKind::Core)?.value;
    d.show("x = core inverse of a (solver)", &x);
    let closed = &(&group * &a) * &x13;
    d.show("a^#·a·a^(1,3)", &closed);
    let expected = m(inv, &[&[(1, 0), (0, 0)], &[(0, 0), (0, 0)]]);
    let projector_route = core_by_projector(&a)?;
    d.decide(
        "x = [[1,0],[0,0]]",
        Some(&x),
        "solver, closed form and projector route agree",
        x == expected && closed == expected && projector_route == expected,
    );
    let axa = &(&a * &x) * &a;
    d.decide("a·x·a", Some(&axa), "a·x·a = a holds", axa == a);
    let a2x = &a2 * &x;
    d.decide("a^2·x", Some(&a2x), "a^2·x ≠ a", a2x != a);
    let report = identity_check(&a, Law::CoreCharacterization)?;
    let summary = match report.detail("summary") {
        Some(crate::pseudo_core::Fact::Text(s)) => s.clone(),
        _ => String::new(),
    };
    d.decide(
        Law::CoreCharacterization.id(),
        None,
        summary.clone(),
        summary.contains("(1) holds") && summary.contains("(3) fails"),
    );
    Ok(d)
}

fn sum_counterexample() -> Result<Demo> {
    let inv = Involution::Transpose;
    let mut d = Demo::new("remark-4.5", inv);
    let a = m(inv, &[&[(0, 1), (0, 0)], &[(0, 0), (0, 0)]]);
    let b = m(inv, &[&[(0, 0), (0, 0)], &[(-1, 0), (0, 0)]]);
    d.show("a", &a);
    d.show("b", &b);
    let pa = pseudo_core_inverse(&a)?;
    d.decide(
        "a^⊕",
        Some(&pa.value),
        format!("index {}", pa.index),
        pa.value == m(inv, &[&[(0, -1), (0, 0)], &[(0, 0), (0, 0)]]) && pa.index == 1,
    );
    let pb = pseudo_core_inverse(&b)?;
    d.decide("b^⊕", Some(&pb.value), format!("index {}", pb.index), pb.value.is_zero());
    let ab = &a * &b;
    let asb = &a.adjoint() * &b;
    let ba = &b * &a;
    d.decide("a·b", Some(&ab), "a·b = 0", ab.is_zero());
    d.decide("a*·b", Some(&asb), "a*·b = 0", asb.is_zero());
    d.decide("b·a", Some(&ba), "b·a ≠ 0", !ba.is_zero());
    let s = &a + &b;
    d.show("a+b", &s);
    let s2 = &s * &s;
    d.show("(a+b)^2", &s2);
    for k in 1..=2u32 {
        let p = s.power(k)?;
        let found = equation_inverse(&p, InverseKind::OneThree);
        d.decide(
            format!("(a+b)^{k} {{1,3}}-inverse"),
            Some(&p),
            match &found {
                Ok(_) => "solver found a {1,3}-inverse".to_string(),
                Err(e) => format!("solver: {e}"),
            },
            matches!(found, Err(Error::NoSolution(_))),
        );
    }
    // (a+b)^2 = i·(a+b), so every power is a unit multiple of a+b and the
    // {1,3} system at (a+b)^m is equivalent to the one at a+b
    let i = gaussian(0, 1);
    let periodic = s2 == s.scale(&i);
    d.decide(
        "periodicity",
        None,
        "(a+b)^2 = i·(a+b), hence (a+b)^m = i^(m-1)·(a+b) for all m ≥ 1: ±(a+b) for odd m, ±(a+b)^2 for even m",
        periodic,
    );
    let mut unit = gaussian(1, 0);
    let mut p = s.clone();
    let mut consistent = true;
    for _ in 1..=8 {
        consistent &= p == s.scale(&unit);
        p = &p * &s;
        unit = unit * i.clone();
    }
    d.note("powers checked", format!("(a+b)^m = i^(m-1)·(a+b) verified for m ≤ 8: {consistent}"));
    d.confirmed &= consistent;
    let pc = pseudo_core_inverse(&s);
    d.decide(
        "(a+b)^⊕",
        None,
        match &pc {
            Ok(_) => "exists".to_string(),
            Err(e) => e.to_string(),
        },
        matches!(pc, Err(Error::NoSolution(_))),
    );
    d.note("a^⊕ + b^⊕", "exists and equals a^⊕, but is not a pseudo core inverse of a+b");
    Ok(d)
}
