//! Law-by-law verification of the pseudo core inverse.
//!
//! Each law is identified by a short opaque id (`"T2.9"`, `"P2.14"`, ...)
//! used on the command line and in reports. A check reports the first
//! violated equality together with both sides.

use std::cell::{OnceCell, RefCell};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::certificates::{regularity_certificates, two_sided_membership};
use super::relations::{additive_sum, bc_report, commute_transfer_check, reverse_order_product};
use super::{
    compute_by_route, condition_one_holds, core_nilpotent, dual_pseudo_core_direct, dual_pseudo_core_inverse,
    pseudo_core_inverse, verify_defining_equations, verify_dual_equations, PseudoCoreResult, Route,
};
use crate::classical::{
    core_by_projector, drazin_inverse, equation_inverse, group_by_drazin, moore_penrose_by_projector,
    one_four_by_projector, one_three_by_projector, InverseKind,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::{ExactScalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// The three defining equations hold at the index and (I) fails below it.
    Definition,
    /// `a ∈ R^⊕` iff `a* ∈ R_⊕`, with `(a^⊕)* = (a*)_⊕`.
    Duality,
    /// `a·x = a^k·x^k`, `x·a·x = x`, `a^k·x^k·a^k = a^k`, `x^{m+1}·a^m = a^D`.
    ChainIdentities,
    /// Every computation route gives the same matrix, or all report nonexistence.
    Uniqueness,
    /// `a^D·a^k·(a^k)^{(1,3)}` for every `k ≥ m`.
    DirectFormula,
    /// Pseudo core index equals Drazin index.
    IndexAgreement,
    /// `(a^m)^core = x^m` and `x = a^{m−1}·(a^m)^core`.
    PowerCore,
    /// `(a^k)^⊕ = x^k`, `I(a^k) = ⌈m/k⌉`, `x = a^{k−1}·(a^k)^⊕`.
    PowerLaw,
    /// `(x)^⊕ = (x)^core = a²·x`.
    InverseOfInverse,
    /// `((x)^⊕)^⊕ = x` after three applications.
    TripleApplication,
    /// `x` is the core inverse of the core part `a·a^D·a`.
    CorePart,
    /// Column-space and annihilator characterizations.
    SpaceConditions,
    /// Regularity witnesses exist exactly when `x` does, and `x = a^p·u*`.
    Regularity,
    /// Pseudo core and dual both exist ⟺ two-sided membership ⟺ `a^m` has a Moore–Penrose inverse.
    ThreeWayEquivalence,
    /// Adding `axa = a` characterizes the core inverse; adding `a²x = a` implies it.
    CoreCharacterization,
    /// `x` is the inverse of `a` along `a^m·(a^m)*`.
    InverseAlong,
    /// `x` is the `(a^m, (a^m)*)`-inverse of `a`.
    BcInverse,
    /// `a·y = y·a`, `a*·y = y·a*` imply `x·y = y·x`.
    CommuteTransfer,
    /// `(a·b)^⊕ = a^⊕·b^⊕ = b^⊕·a^⊕` for `a·b = b·a`, `a·b* = b*·a`.
    ReverseOrder,
    /// `(a + b)^⊕ = a^⊕ + b^⊕` for `a·b = b·a = 0`, `a*·b = 0`.
    AdditiveSum,
}

impl Law {
    pub const ALL: [Law; 20] = [
        Law::Definition,
        Law::Duality,
        Law::ChainIdentities,
        Law::Uniqueness,
        Law::DirectFormula,
        Law::IndexAgreement,
        Law::PowerCore,
        Law::PowerLaw,
        Law::InverseOfInverse,
        Law::TripleApplication,
        Law::CorePart,
        Law::SpaceConditions,
        Law::Regularity,
        Law::ThreeWayEquivalence,
        Law::CoreCharacterization,
        Law::InverseAlong,
        Law::BcInverse,
        Law::CommuteTransfer,
        Law::ReverseOrder,
        Law::AdditiveSum,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::Definition => "D1.1",
            Law::Duality => "R1.3",
            Law::ChainIdentities => "L2.1",
            Law::Uniqueness => "T2.2",
            Law::DirectFormula => "T2.3",
            Law::IndexAgreement => "R2.4",
            Law::PowerCore => "T2.5",
            Law::PowerLaw => "T2.6",
            Law::InverseOfInverse => "T2.7",
            Law::TripleApplication => "P2.8",
            Law::CorePart => "T2.9",
            Law::SpaceConditions => "T2.10",
            Law::Regularity => "T2.12",
            Law::ThreeWayEquivalence => "T2.13",
            Law::CoreCharacterization => "P2.14",
            Law::InverseAlong => "T3.3",
            Law::BcInverse => "T3.4",
            Law::CommuteTransfer => "P4.2",
            Law::ReverseOrder => "T4.3",
            Law::AdditiveSum => "T4.4",
        }
    }

    /// One-line statement, used for CLI help.
    pub fn summary(self) -> &'static str {
        match self {
            Law::Definition => "x·a^(m+1)=a^m, a·x²=x, (a·x)*=a·x at m=I(a); (I) fails at m-1",
            Law::Duality => "a has x iff a* has a dual; (a^⊕)* = (a*)_⊕",
            Law::ChainIdentities => "a·x=a^k·x^k, x·a·x=x, a^k·x^k·a^k=a^k (k≥m), x^(m+1)·a^m=a^D",
            Law::Uniqueness => "all computation routes agree exactly",
            Law::DirectFormula => "x = a^D·a^k·(a^k)^(1,3) for k = m, m+1, m+2",
            Law::IndexAgreement => "pseudo core index equals Drazin index",
            Law::PowerCore => "(a^m)^core = x^m and x = a^(m-1)·(a^m)^core",
            Law::PowerLaw => "(a^k)^⊕ = x^k, I(a^k) = ceil(m/k), k = 1,2,3",
            Law::InverseOfInverse => "x^⊕ = x^core = a²·x",
            Law::TripleApplication => "((a^⊕)^⊕)^⊕ = a^⊕",
            Law::CorePart => "x is the core inverse of a·a^D·a",
            Law::SpaceConditions => "column-space / annihilator conditions (2)-(5) and the converse",
            Law::Regularity => "a^p = u·(a*)^(p+1)·a^p, a^q = v·a^(q+1) witnesses; x = a^p·u*",
            Law::ThreeWayEquivalence => "x and dual exist <=> two-sided membership <=> a^m has a Moore-Penrose inverse",
            Law::CoreCharacterization => "adding axa=a characterizes the core inverse; adding a²x=a implies it",
            Law::InverseAlong => "x is the inverse of a along a^m·(a^m)*",
            Law::BcInverse => "x is the (a^m, (a^m)*)-inverse of a",
            Law::CommuteTransfer => "y commuting with a and a* commutes with x",
            Law::ReverseOrder => "(ab)^⊕ = a^⊕·b^⊕ = b^⊕·a^⊕",
            Law::AdditiveSum => "(a+b)^⊕ = a^⊕ + b^⊕",
        }
    }

    /// Laws that only make sense once `a^⊕` exists. The others are
    /// equivalences and are checked on every input.
    pub fn requires_inverse(self) -> bool {
        !matches!(
            self,
            Law::Duality
                | Law::Uniqueness
                | Law::DirectFormula
                | Law::PowerLaw
                | Law::CorePart
                | Law::Regularity
                | Law::ThreeWayEquivalence
                | Law::CoreCharacterization
        )
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Law::ALL.into_iter().find(|l| l.id().eq_ignore_ascii_case(s.trim())).ok_or_else(|| format!("unknown law `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Fact {
    Bool(bool),
    Int(i64),
    Text(String),
}

impl From<bool> for Fact {
    fn from(b: bool) -> Self {
        Fact::Bool(b)
    }
}

impl From<u32> for Fact {
    fn from(v: u32) -> Self {
        Fact::Int(v.into())
    }
}

impl From<usize> for Fact {
    fn from(v: usize) -> Self {
        Fact::Int(v as i64)
    }
}

impl From<String> for Fact {
    fn from(s: String) -> Self {
        Fact::Text(s)
    }
}

impl From<&str> for Fact {
    fn from(s: &str) -> Self {
        Fact::Text(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Detail {
    pub key: String,
    pub value: Fact,
}

/// First violated equality. Plain boolean conditions carry no matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<T> {
    pub equality: String,
    pub lhs: Option<Matrix<T>>,
    pub rhs: Option<Matrix<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable(String),
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable(_) => "not_applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawReport<T> {
    pub law: Law,
    pub outcome: Outcome,
    pub witness: Option<Witness<T>>,
    /// Number of individual equalities and conditions evaluated.
    pub checks: usize,
    pub details: Vec<Detail>,
}

impl<T> LawReport<T> {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    pub fn not_applicable(law: Law, reason: impl Into<String>) -> Self {
        LawReport { law, outcome: Outcome::NotApplicable(reason.into()), witness: None, checks: 0, details: Vec::new() }
    }

    pub fn detail(&self, key: &str) -> Option<&Fact> {
        self.details.iter().find(|d| d.key == key).map(|d| &d.value)
    }
}

struct Checker<T> {
    law: Law,
    witness: Option<Witness<T>>,
    checks: usize,
    details: Vec<Detail>,
}

impl<T: Scalar> Checker<T> {
    fn new(law: Law) -> Self {
        Checker { law, witness: None, checks: 0, details: Vec::new() }
    }

    fn eq(&mut self, label: impl fmt::Display, lhs: &Matrix<T>, rhs: &Matrix<T>) -> bool {
        self.checks += 1;
        let ok = lhs == rhs;
        if !ok && self.witness.is_none() {
            self.witness =
                Some(Witness { equality: label.to_string(), lhs: Some(lhs.clone()), rhs: Some(rhs.clone()) });
        }
        ok
    }

    fn truth(&mut self, label: impl fmt::Display, ok: bool) -> bool {
        self.checks += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(Witness { equality: label.to_string(), lhs: None, rhs: None });
        }
        ok
    }

    fn fact(&mut self, key: impl Into<String>, value: impl Into<Fact>) {
        self.details.push(Detail { key: key.into(), value: value.into() });
    }

    fn finish(self) -> LawReport<T> {
        let outcome = if self.witness.is_some() { Outcome::Fail } else { Outcome::Pass };
        LawReport { law: self.law, outcome, witness: self.witness, checks: self.checks, details: self.details }
    }
}

/// `Ok(None)` for nonexistence, errors otherwise passed through.
fn optional<V>(r: Result<V>) -> Result<Option<V>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::NoSolution(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn pow<T: ExactScalar>(a: &Matrix<T>, k: u32) -> Matrix<T> {
    a.power(k).expect("square")
}

/// Everything the laws share about one input matrix.
#[derive(Clone, Debug)]
pub struct Analysis<T> {
    pub a: Matrix<T>,
    pub drazin: Matrix<T>,
    pub drazin_index: u32,
    pub inverse: Option<PseudoCoreResult<T>>,
    pub dual: Option<PseudoCoreResult<T>>,
    /// Why the pseudo core inverse is missing, when it is.
    pub reason: Option<String>,
    powers: RefCell<Vec<Matrix<T>>>,
    one_three_at_index: OnceCell<Option<Matrix<T>>>,
    core_at_index: OnceCell<Option<Matrix<T>>>,
    core_of_core_part: OnceCell<Option<Matrix<T>>>,
}

impl<T: ExactScalar> Analysis<T> {
    pub fn new(a: &Matrix<T>) -> Result<Self> {
        a.ensure_square()?;
        let dr = drazin_inverse(a)?;
        let (inverse, reason) = match pseudo_core_inverse(a) {
            Ok(r) => (Some(r), None),
            Err(Error::NoSolution(r)) => (None, Some(r)),
            Err(e) => return Err(e),
        };
        let dual = optional(dual_pseudo_core_inverse(a))?;
        Ok(Analysis {
            a: a.clone(),
            drazin: dr.value,
            drazin_index: dr.index.expect("drazin index"),
            inverse,
            dual,
            reason,
            powers: RefCell::new(vec![Matrix::identity(a.rows(), a.involution()), a.clone()]),
            one_three_at_index: OnceCell::new(),
            core_at_index: OnceCell::new(),
            core_of_core_part: OnceCell::new(),
        })
    }

    /// `a^k`, memoized.
    fn pow(&self, k: u32) -> Matrix<T> {
        let mut powers = self.powers.borrow_mut();
        while powers.len() <= k as usize {
            let next = powers.last().expect("seeded") * &self.a;
            powers.push(next);
        }
        powers[k as usize].clone()
    }

    fn cached(cell: &OnceCell<Option<Matrix<T>>>, f: impl FnOnce() -> Result<Matrix<T>>) -> Result<Option<Matrix<T>>> {
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        let v = optional(f())?;
        Ok(cell.get_or_init(|| v).clone())
    }

    /// Solver `{1,3}`-inverse of `a^m` at the Drazin index.
    fn solver_one_three(&self) -> Result<Option<Matrix<T>>> {
        let am = self.pow(self.drazin_index);
        Self::cached(&self.one_three_at_index, || equation_inverse(&am, InverseKind::OneThree).map(|r| r.value))
    }

    /// Solver core inverse of `a^m` at the Drazin index.
    fn solver_core(&self) -> Result<Option<Matrix<T>>> {
        let am = self.pow(self.drazin_index);
        Self::cached(&self.core_at_index, || equation_inverse(&am, InverseKind::Core).map(|r| r.value))
    }

    /// Solver core inverse of the core part `a·a^D·a`.
    fn solver_core_part(&self) -> Result<Option<Matrix<T>>> {
        let core_part = &(&self.a * &self.drazin) * &self.a;
        Self::cached(&self.core_of_core_part, || equation_inverse(&core_part, InverseKind::Core).map(|r| r.value))
    }

    /// [`compute_by_route`] with the solver routes shared across laws.
    fn route(&self, route: Route) -> Result<Option<Matrix<T>>> {
        let m = self.drazin_index;
        match route {
            Route::DirectSolver => Ok(self.solver_one_three()?.map(|g| &(&self.drazin * &self.pow(m)) * &g)),
            Route::CorePart => self.solver_core_part(),
            Route::PowerCore => Ok(self.solver_core()?.map(|k| &self.pow(m - 1) * &k)),
            other => compute_by_route(&self.a, other),
        }
    }

    fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn check(&self, law: Law) -> Result<LawReport<T>> {
        if law.requires_inverse() && self.inverse.is_none() {
            let reason = self.reason.clone().unwrap_or_default();
            return Ok(LawReport::not_applicable(law, format!("no pseudo core inverse: {reason}")));
        }
        let mut c = Checker::new(law);
        match law {
            Law::Definition => self.definition(&mut c)?,
            Law::Duality => self.duality(&mut c)?,
            Law::ChainIdentities => self.chain_identities(&mut c),
            Law::Uniqueness => self.uniqueness(&mut c)?,
            Law::DirectFormula => self.direct_formula(&mut c)?,
            Law::IndexAgreement => self.index_agreement(&mut c)?,
            Law::PowerCore => self.power_core(&mut c)?,
            Law::PowerLaw => self.power_law(&mut c)?,
            Law::InverseOfInverse => self.inverse_of_inverse(&mut c)?,
            Law::TripleApplication => self.triple(&mut c)?,
            Law::CorePart => self.core_part(&mut c)?,
            Law::SpaceConditions => self.space_conditions(&mut c)?,
            Law::Regularity => self.regularity(&mut c)?,
            Law::ThreeWayEquivalence => self.three_way(&mut c)?,
            Law::CoreCharacterization => self.core_characterization(&mut c)?,
            Law::InverseAlong => {
                if !self.inverse_along(&mut c)? {
                    return Ok(LawReport::not_applicable(law, "a^m has no {1,4}-inverse for m = I(a), I(a)+1"));
                }
            }
            Law::BcInverse => self.bc_inverse(&mut c)?,
            Law::CommuteTransfer => self.commute_transfer(&mut c)?,
            Law::ReverseOrder => self.reverse_order(&mut c)?,
            Law::AdditiveSum => self.additive(&mut c)?,
        }
        Ok(c.finish())
    }

    fn x(&self) -> (&Matrix<T>, u32) {
        let r = self.inverse.as_ref().expect("checked by requires_inverse");
        (&r.value, r.index)
    }

    fn definition(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let (x, m) = self.x();
        let am = self.pow(m);
        let ax = a * x;
        c.fact("index", m);
        c.eq(format_args!("(I) x·a^{} = a^{m}", m + 1), &(&(x * &am) * a), &am);
        c.eq("(II) a·x² = x", &(&ax * x), x);
        c.eq("(III) (a·x)* = a·x", &ax.adjoint(), &ax);
        if m >= 2 {
            c.truth(format_args!("(I) fails at m = {}", m - 1), !condition_one_holds(a, x, m - 1));
        }
        if let Some(d) = &self.dual {
            let xa = &d.value * a;
            c.eq(format_args!("(I') a^{}·y = a^{m}", m + 1), &(a * &(&am * &d.value)), &am);
            c.eq("(II') y²·a = y", &(&d.value * &xa), &d.value);
            c.eq("(III') (y·a)* = y·a", &xa.adjoint(), &xa);
            if m >= 2 {
                let below = self.pow(m - 1);
                c.truth(format_args!("(I') fails at m = {}", m - 1), &(&below * a) * &d.value != below);
            }
        }
        c.fact("dual_exists", self.dual.is_some());
        Ok(())
    }

    fn duality(&self, c: &mut Checker<T>) -> Result<()> {
        let star = self.a.adjoint();
        let dual_of_star = optional(dual_pseudo_core_direct(&star))?;
        match (&self.inverse, &dual_of_star) {
            (Some(pc), Some(y)) => {
                c.eq("(a^⊕)* = (a*)_⊕", &pc.value.adjoint(), y);
                c.truth(
                    "(a*)_⊕ satisfies the mirrored equations",
                    verify_dual_equations(&star, y, pc.index)?.all_hold(),
                );
            }
            (None, None) => {}
            (p, d) => {
                c.truth(format_args!("a ∈ R^⊕ ({}) iff a* ∈ R_⊕ ({})", p.is_some(), d.is_some()), false);
            }
        }
        c.fact("exists", self.inverse.is_some());
        Ok(())
    }

    fn chain_identities(&self, c: &mut Checker<T>) {
        let a = &self.a;
        let (x, m) = self.x();
        let ax = a * x;
        let (mut ak, mut xk) = (a.clone(), x.clone());
        for k in 1..=2 * m {
            if k > 1 {
                ak = &ak * a;
                xk = &xk * x;
            }
            c.eq(format_args!("(1) a·x = a^{k}·x^{k}"), &ax, &(&ak * &xk));
            if k >= m {
                c.eq(format_args!("(3) a^{k}·x^{k}·a^{k} = a^{k}"), &(&(&ak * &xk) * &ak), &ak);
            }
        }
        c.eq("(2) x·a·x = x", &(&(x * a) * x), x);
        c.eq(format_args!("(4) x^{}·a^{m} = a^D", m + 1), &(&pow(x, m + 1) * &self.pow(m)), &self.drazin);
    }

    fn uniqueness(&self, c: &mut Checker<T>) -> Result<()> {
        let mut paths = 0usize;
        if self.inverse.is_some() {
            paths += 1;
        }
        for route in Route::ALL.into_iter().filter(|r| *r != Route::Direct) {
            let got = self.route(route)?;
            match (&self.inverse, &got) {
                (Some(pc), Some(y)) => {
                    paths += 1;
                    c.eq(format_args!("{} route = direct route", route.name()), y, &pc.value);
                }
                (None, None) => {}
                (p, g) => {
                    c.truth(
                        format_args!(
                            "{} route existence ({}) matches direct route ({})",
                            route.name(),
                            g.is_some(),
                            p.is_some()
                        ),
                        false,
                    );
                }
            }
        }
        c.fact("paths", paths);
        Ok(())
    }

    fn direct_formula(&self, c: &mut Checker<T>) -> Result<()> {
        let i = self.drazin_index;
        for k in i..=i + 2 {
            let ak = self.pow(k);
            // the solver is the independent reference at the lowest power only
            let g = if k == i { self.solver_one_three()? } else { optional(one_three_by_projector(&ak))? };
            match (&self.inverse, g) {
                (Some(pc), Some(g)) => {
                    c.eq(format_args!("a^D·a^{k}·(a^{k})^(1,3) = x"), &(&(&self.drazin * &ak) * &g), &pc.value);
                }
                (None, None) => {}
                (p, g) => {
                    c.truth(
                        format_args!("a^{k} has a {{1,3}}-inverse ({}) iff x exists ({})", g.is_some(), p.is_some()),
                        false,
                    );
                }
            }
        }
        Ok(())
    }

    fn index_agreement(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let (x, m) = self.x();
        let bound = self.n() as u32 + 1;
        let searched = (1..=bound).find(|&k| condition_one_holds(a, x, k));
        let drazin = linalg::drazin_index(a)?;
        c.fact("pseudo_core_index", searched.map_or(0, |k| k));
        c.fact("drazin_index", drazin);
        c.truth(format_args!("smallest m with (I) = {searched:?}, Drazin index = {drazin}"), searched == Some(drazin));
        c.truth(format_args!("reported index {m} = Drazin index {drazin}"), m == drazin);
        if let Some(d) = &self.dual {
            let dual_index = (1..=bound).find(|&k| {
                let ak = self.pow(k);
                &(&ak * a) * &d.value == ak
            });
            c.fact("dual_index", dual_index.map_or(0, |k| k));
            c.truth(format_args!("dual index {dual_index:?} = Drazin index {drazin}"), dual_index == Some(drazin));
        }
        Ok(())
    }

    fn power_core(&self, c: &mut Checker<T>) -> Result<()> {
        let (x, m) = self.x();
        for k in [m, m + 1] {
            let ak = self.pow(k);
            let core = if k == m { self.solver_core()? } else { optional(core_by_projector(&ak))? };
            let Some(core) = core else {
                c.truth(format_args!("a^{k} is core invertible"), false);
                continue;
            };
            c.eq(format_args!("(a^{k})^core = x^{k}"), &core, &pow(x, k));
            c.eq(format_args!("a^{}·(a^{k})^core = x", k - 1), &(&self.pow(k - 1) * &core), x);
        }
        Ok(())
    }

    fn power_law(&self, c: &mut Checker<T>) -> Result<()> {
        for k in 1..=3u32 {
            let pk = optional(pseudo_core_inverse(&self.pow(k)))?;
            match (&self.inverse, pk) {
                (Some(pc), Some(pk)) => {
                    let (x, m) = (&pc.value, pc.index);
                    let expected = m.div_ceil(k);
                    c.fact(format!("index_a^{k}"), pk.index);
                    c.eq(format_args!("(a^{k})^⊕ = x^{k}"), &pk.value, &pow(x, k));
                    c.truth(format_args!("I(a^{k}) = {} = ceil({m}/{k}) = {expected}", pk.index), pk.index == expected);
                    c.eq(format_args!("a^{}·(a^{k})^⊕ = x", k - 1), &(&self.pow(k - 1) * &pk.value), x);
                }
                (None, None) => {}
                (p, q) => {
                    c.truth(format_args!("a^{k} ∈ R^⊕ ({}) iff a ∈ R^⊕ ({})", q.is_some(), p.is_some()), false);
                }
            }
        }
        Ok(())
    }

    fn inverse_of_inverse(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let (x, _) = self.x();
        let y = &(a * a) * x;
        match optional(equation_inverse(x, InverseKind::Core))? {
            Some(core) => {
                c.eq("x^core = a²·x", &core.value, &y);
            }
            None => {
                c.truth("x is core invertible", false);
            }
        }
        match optional(pseudo_core_inverse(x))? {
            Some(px) => {
                c.eq("x^⊕ = a²·x", &px.value, &y);
                c.fact("index_of_x", px.index);
                c.truth(format_args!("I(x) = {} = 1", px.index), px.index == 1);
            }
            None => {
                c.truth("x is pseudo core invertible", false);
            }
        }
        Ok(())
    }

    fn triple(&self, c: &mut Checker<T>) -> Result<()> {
        let (x, _) = self.x();
        let Some(p1) = optional(pseudo_core_inverse(x))? else {
            c.truth("(a^⊕)^⊕ exists", false);
            return Ok(());
        };
        let Some(p2) = optional(pseudo_core_inverse(&p1.value))? else {
            c.truth("((a^⊕)^⊕)^⊕ exists", false);
            return Ok(());
        };
        c.eq("((a^⊕)^⊕)^⊕ = a^⊕", &p2.value, x);
        Ok(())
    }

    fn core_part(&self, c: &mut Checker<T>) -> Result<()> {
        let rec = core_nilpotent(&self.a)?;
        for (label, ok) in rec.invariants(&self.a, &self.drazin) {
            c.truth(format_args!("core-nilpotent: {label}"), ok);
        }
        let core = self.solver_core_part()?;
        c.fact("core_part_core_invertible", core.is_some());
        match (&self.inverse, core) {
            (Some(pc), Some(k)) => {
                c.eq("(a·a^D·a)^core = x", &k, &pc.value);
            }
            (None, None) => {}
            (p, k) => {
                c.truth(format_args!("c_a core invertible ({}) iff a ∈ R^⊕ ({})", k.is_some(), p.is_some()), false);
            }
        }
        Ok(())
    }

    fn conditions(&self, x: &Matrix<T>, m: u32) -> Result<[bool; 4]> {
        let am = self.pow(m);
        let xs = x.adjoint();
        let xax = &(&(x * &self.a) * x) == x;
        let col_x = linalg::same_column_space(x, &am)?;
        let c2 = xax && col_x && linalg::same_column_space(&xs, &am)?;
        let c3 = xax && col_x && linalg::column_space_contained(&am, &xs)?;
        let ann_star = linalg::left_annihilator_contained(&xs, &am)?;
        let c4 = xax && col_x && ann_star;
        let c5 = xax
            && linalg::left_annihilator_contained(x, &am)?
            && linalg::left_annihilator_contained(&am, x)?
            && ann_star;
        Ok([c2, c3, c4, c5])
    }

    fn space_conditions(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let (x, m) = self.x();
        let labels = [
            "(2) xax=x, xR = x*R = a^mR",
            "(3) xax=x, xR = a^mR, a^mR ⊆ x*R",
            "(4) xax=x, xR = a^mR, °(x*) ⊆ °(a^m)",
            "(5) xax=x, °x = °(a^m), °(x*) ⊆ °(a^m)",
        ];
        for (label, ok) in labels.iter().zip(self.conditions(x, m)?) {
            c.truth(format_args!("{label} at m = {m}"), ok);
        }
        c.truth(format_args!("(2) at m = {}", m + 1), self.conditions(x, m + 1)?[0]);
        let smaller = (1..m).map(|k| self.conditions(x, k).map(|cs| cs[0])).collect::<Result<Vec<_>>>()?;
        c.fact("smaller_m_satisfies_2", smaller.iter().any(|&b| b));

        let id = Matrix::identity(self.n(), a.involution());
        let mut candidates = vec![
            ("a^D", self.drazin.clone()),
            ("x*", x.adjoint()),
            ("a^m", self.pow(m)),
            ("a·x", a * x),
            ("x·a", x * a),
            ("a^D·a", &self.drazin * a),
            ("0", Matrix::zeros(self.n(), self.n(), a.involution())),
            ("I", id),
        ];
        if let Some(d) = &self.dual {
            candidates.push(("dual", d.value.clone()));
        }
        let closed_forms: [(&str, fn(&Matrix<T>) -> Result<Matrix<T>>); 3] = [
            (InverseKind::MoorePenrose.tag(), moore_penrose_by_projector),
            (InverseKind::Group.tag(), group_by_drazin),
            (InverseKind::Core.tag(), core_by_projector),
        ];
        for (tag, f) in closed_forms {
            if let Some(v) = optional(f(a))? {
                candidates.push((tag, v));
            }
        }
        let mut passing = 0usize;
        for (name, cand) in &candidates {
            if self.conditions(cand, m)?[3] {
                passing += 1;
                c.eq(format_args!("candidate {name} satisfies (5), so equals x"), cand, x);
            }
        }
        c.fact("converse_candidates", candidates.len());
        c.fact("converse_candidates_passing_5", passing);
        Ok(())
    }

    fn regularity(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let cert = optional(regularity_certificates(a))?;
        match (&self.inverse, cert) {
            (Some(pc), Some(cert)) => {
                let (p, q) = (cert.p, cert.q);
                let ap = self.pow(p);
                let aq = self.pow(q);
                c.fact("p", p);
                c.fact("q", q);
                c.eq(
                    format_args!("a^{p} = u·(a*)^{}·a^{p}", p + 1),
                    &(&(&cert.u * &pow(&a.adjoint(), p + 1)) * &ap),
                    &ap,
                );
                c.eq(format_args!("a^{q} = v·a^{}", q + 1), &(&cert.v * &(&aq * a)), &aq);
                c.eq(format_args!("a^{p}·u* = x"), &(&ap * &cert.u.adjoint()), &pc.value);
            }
            (None, None) => {}
            (p, cert) => {
                c.truth(
                    format_args!("regularity witnesses exist ({}) iff x exists ({})", cert.is_some(), p.is_some()),
                    false,
                );
            }
        }
        Ok(())
    }

    fn three_way(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let i = self.drazin_index;
        let mp_i = optional(moore_penrose_by_projector(&self.pow(i)))?.is_some();
        let mp_next = optional(moore_penrose_by_projector(&self.pow(i + 1)))?.is_some();
        c.truth(format_args!("a^{i} and a^{} agree on Moore–Penrose invertibility", i + 1), mp_i == mp_next);
        let cond1 = mp_i || mp_next;
        let cond2 = self.inverse.is_some() && self.dual.is_some();
        let cond3 = two_sided_membership(a)?;
        c.fact("cond1", cond1);
        c.fact("cond2", cond2);
        c.fact("cond3", cond3.is_some());
        if let Some(t) = &cond3 {
            c.fact("cond3_m", t.m);
        }
        c.truth(format_args!("(1) {cond1} ⟺ (2) {cond2}"), cond1 == cond2);
        c.truth(format_args!("(2) {cond2} ⟺ (3) {}", cond3.is_some()), cond2 == cond3.is_some());
        Ok(())
    }

    fn core_characterization(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let core = optional(core_by_projector(a))?;
        let (c1, c2, c3) = match &self.inverse {
            Some(pc) => {
                let x = &pc.value;
                let base = verify_defining_equations(a, x, pc.index)?.all_hold();
                let c1 = core.as_ref().is_some_and(|k| k == x);
                let c2 = base && &(&(a * x) * a) == a;
                let c3 = base && &(&(a * a) * x) == a;
                c.truth(format_args!("(1) {c1} ⟺ I(a) = 1 ({})", pc.index == 1), c1 == (pc.index == 1));
                c.truth("core inverse, when it exists, is the pseudo core inverse", core.is_none() || c1);
                (c1, c2, c3)
            }
            None => {
                c.truth("core invertible ⟹ pseudo core invertible", core.is_none());
                (false, false, false)
            }
        };
        let word = |b: bool| if b { "holds" } else { "fails" };
        c.fact("cond1", c1);
        c.fact("cond2", c2);
        c.fact("cond3", c3);
        c.fact("summary", format!("(1) {}, (2) {}, (3) {}", word(c1), word(c2), word(c3)));
        c.truth(format_args!("(1) {c1} ⟺ (2) {c2}"), c1 == c2);
        c.truth(format_args!("(3) {c3} ⟹ (1) {c1}"), !c3 || c1);
        Ok(())
    }

    /// Returns false when no `m` satisfies the standing {1,4} hypothesis.
    fn inverse_along(&self, c: &mut Checker<T>) -> Result<bool> {
        let a = &self.a;
        let (x, m) = self.x();
        let mut applied = Vec::new();
        for k in [m, m + 1] {
            let ak = self.pow(k);
            if one_four_by_projector(&ak).is_err() {
                continue;
            }
            applied.push(k);
            let d = &ak * &ak.adjoint();
            c.eq(format_args!("m={k}: x·a·d = d"), &(&(x * a) * &d), &d);
            c.eq(format_args!("m={k}: d·a·x = d"), &(&(&d * a) * x), &d);
            c.truth(format_args!("m={k}: Rx ⊆ Rd"), linalg::row_space_contained(x, &d)?);
            c.truth(format_args!("m={k}: xR ⊆ dR"), linalg::column_space_contained(x, &d)?);
        }
        c.fact("m_values", applied.len());
        Ok(!applied.is_empty())
    }

    fn bc_inverse(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let (x, m) = self.x();
        for k in [m, m + 1] {
            let r = bc_report(a, x, k)?;
            c.truth(format_args!("m={k}: x ∈ a^m·R·x"), r.in_b_r_x);
            c.truth(format_args!("m={k}: x ∈ x·R·(a^m)*"), r.in_x_r_c);
            c.eq(format_args!("m={k}: x·a·b = b"), &(&(x * a) * &r.b), &r.b);
            c.eq(format_args!("m={k}: c·a·x = c"), &(&(&r.c * a) * x), &r.c);
        }
        Ok(())
    }

    fn is_normal(&self) -> bool {
        let s = self.a.adjoint();
        &self.a * &s == &s * &self.a
    }

    fn scalar_multiple(&self, re: i64, im: i64) -> Matrix<T> {
        Matrix::identity(self.n(), self.a.involution()).scale(&T::from_parts(
            <T::Real as crate::scalar::RealScalar>::from_i64(re),
            <T::Real as crate::scalar::RealScalar>::from_i64(im),
        ))
    }

    fn commute_transfer(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let mut partners = vec![
            ("I", Matrix::identity(self.n(), a.involution())),
            ("(2+i)·I", self.scalar_multiple(2, 1)),
            ("0", Matrix::zeros(self.n(), self.n(), a.involution())),
        ];
        if self.is_normal() {
            partners.push(("a", a.clone()));
            partners.push(("a*", a.adjoint()));
            partners.push(("a²", a * a));
        }
        let mut applied = 0usize;
        for (name, y) in &partners {
            commute_partner(c, a, self.x().0, name, y, &mut applied)?;
        }
        c.fact("partners", applied);
        Ok(())
    }

    fn reverse_order(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let mut partners =
            vec![("I", Matrix::identity(self.n(), a.involution())), ("(1+i)·I", self.scalar_multiple(1, 1))];
        if self.is_normal() {
            partners.push(("a", a.clone()));
            partners.push(("a²", a * a));
        }
        let mut applied = 0usize;
        for (name, b) in &partners {
            product_partner(c, a, b, name, &mut applied)?;
        }
        c.fact("partners", applied);
        Ok(())
    }

    fn additive(&self, c: &mut Checker<T>) -> Result<()> {
        let a = &self.a;
        let zero = Matrix::zeros(self.n(), self.n(), a.involution());
        let mut applied = 0usize;
        sum_partner(c, a, &zero, "(a, 0)", &mut applied)?;
        sum_partner(c, &zero, a, "(0, a)", &mut applied)?;
        c.fact("partners", applied);
        Ok(())
    }
}

fn commute_partner<T: ExactScalar>(
    c: &mut Checker<T>,
    a: &Matrix<T>,
    x: &Matrix<T>,
    name: &str,
    y: &Matrix<T>,
    applied: &mut usize,
) -> Result<()> {
    match commute_transfer_check(a, y) {
        Ok(_) => {
            *applied += 1;
            c.eq(format_args!("x·y = y·x for y = {name}"), &(x * y), &(y * x));
            Ok(())
        }
        Err(Error::NotApplicable(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

fn product_partner<T: ExactScalar>(
    c: &mut Checker<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    name: &str,
    applied: &mut usize,
) -> Result<()> {
    match reverse_order_product(a, b) {
        Ok(r) => {
            *applied += 1;
            c.eq(format_args!("(a·b)^⊕ = a^⊕·b^⊕ for b = {name}"), &r.result.value, &r.expected);
            c.eq(format_args!("a^⊕·b^⊕ = b^⊕·a^⊕ for b = {name}"), &r.expected, &r.alternate);
            Ok(())
        }
        Err(Error::NoSolution(_)) => {
            *applied += 1;
            c.truth(format_args!("(a·b)^⊕ exists for b = {name}"), false);
            Ok(())
        }
        Err(Error::HypothesisViolated(_) | Error::NotApplicable(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

fn sum_partner<T: ExactScalar>(
    c: &mut Checker<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    name: &str,
    applied: &mut usize,
) -> Result<()> {
    match additive_sum(a, b) {
        Ok(r) => {
            *applied += 1;
            c.eq(format_args!("(a+b)^⊕ = a^⊕ + b^⊕ for {name}"), &r.result.value, &r.expected);
            Ok(())
        }
        Err(Error::NoSolution(_)) => {
            *applied += 1;
            c.truth(format_args!("(a+b)^⊕ exists for {name}"), false);
            Ok(())
        }
        Err(Error::HypothesisViolated(_) | Error::NotApplicable(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

fn pair_report<T: ExactScalar>(law: Law, applied: usize, c: Checker<T>, reason: &str) -> LawReport<T> {
    if applied == 0 {
        LawReport::not_applicable(law, reason)
    } else {
        c.finish()
    }
}

/// P4.2 on an explicit partner `y`.
pub fn check_commute_pair<T: ExactScalar>(a: &Matrix<T>, y: &Matrix<T>) -> Result<LawReport<T>> {
    let law = Law::CommuteTransfer;
    let x = match pseudo_core_inverse(a) {
        Ok(r) => r.value,
        Err(Error::NoSolution(r)) => return Ok(LawReport::not_applicable(law, r)),
        Err(e) => return Err(e),
    };
    let mut c = Checker::new(law);
    let mut applied = 0;
    commute_partner(&mut c, a, &x, "partner", y, &mut applied)?;
    Ok(pair_report(law, applied, c, "partner does not commute with a and a*"))
}

/// T4.3 on an explicit pair.
pub fn check_reverse_order_pair<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<LawReport<T>> {
    let mut c = Checker::new(Law::ReverseOrder);
    let mut applied = 0;
    product_partner(&mut c, a, b, "partner", &mut applied)?;
    Ok(pair_report(Law::ReverseOrder, applied, c, "hypotheses of the product rule fail"))
}

/// T4.4 on an explicit pair.
pub fn check_additive_pair<T: ExactScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<LawReport<T>> {
    let mut c = Checker::new(Law::AdditiveSum);
    let mut applied = 0;
    sum_partner(&mut c, a, b, "partner", &mut applied)?;
    Ok(pair_report(Law::AdditiveSum, applied, c, "hypotheses of the sum rule fail"))
}

/// One law on one matrix.
pub fn identity_check<T: ExactScalar>(a: &Matrix<T>, law: Law) -> Result<LawReport<T>> {
    Analysis::new(a)?.check(law)
}

/// Several laws on one matrix, sharing the expensive setup.
pub fn check_all<T: ExactScalar>(a: &Matrix<T>, laws: &[Law]) -> Result<Vec<LawReport<T>>> {
    let an = Analysis::new(a)?;
    laws.iter().map(|&l| an.check(l)).collect()
}
