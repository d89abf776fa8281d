//! Randomized law suites over generated instances.
//!
//! Every case is generated from its own `(seed, case)` stream, so parallel
//! and serial runs give identical reports. Even cases use conjugate
//! transposition, odd cases transposition.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generator::{case_rng, commuting_pair, orthogonal_pair, product_pair, random_instance, GeneratorConfig};
use crate::linalg;
use crate::matrix::Matrix;
use crate::pseudo_core::{
    check_additive_pair, check_commute_pair, check_reverse_order_pair, Analysis, Law, LawReport, Outcome, Witness,
};
use crate::scalar::{ExactScalar, Involution};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub scope: Vec<Law>,
    pub generator: GeneratorConfig,
}

impl SuiteConfig {
    pub fn new(seed: u64, cases: usize, scope: Vec<Law>) -> Self {
        SuiteConfig { seed, cases, scope, generator: GeneratorConfig::default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

impl Counts {
    fn add(&mut self, outcome: &Outcome) {
        match outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::NotApplicable(_) => self.not_applicable += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult<T> {
    pub case: usize,
    pub involution: Involution,
    pub input: Matrix<T>,
    pub drazin_index: u32,
    pub pseudo_core_exists: bool,
    pub reports: Vec<LawReport<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure<T> {
    pub case: usize,
    pub law: Law,
    pub involution: Involution,
    pub equality: String,
    pub input: Matrix<T>,
    pub witness: Option<Witness<T>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport<T> {
    pub seed: u64,
    pub cases: usize,
    pub scope: Vec<Law>,
    pub summary: Counts,
    pub per_law: BTreeMap<Law, Counts>,
    pub failures: Vec<Failure<T>>,
}

impl<T> SuiteReport<T> {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }
}

pub fn involution_for_case(case: usize) -> Involution {
    if case % 2 == 0 {
        Involution::ConjugateTranspose
    } else {
        Involution::Transpose
    }
}

fn is_pair_law(law: Law) -> bool {
    matches!(law, Law::CommuteTransfer | Law::ReverseOrder | Law::AdditiveSum)
}

fn failed_report<T>(law: Law, message: String) -> LawReport<T> {
    LawReport {
        law,
        outcome: Outcome::Fail,
        witness: Some(Witness { equality: message, lhs: None, rhs: None }),
        checks: 1,
        details: Vec::new(),
    }
}

/// Laws on a generated pair draw from a separate stream, so the main
/// instance of a case does not depend on the scope.
fn pair_report<T: ExactScalar>(seed: u64, case: usize, law: Law, config: &GeneratorConfig) -> LawReport<T> {
    let inv = involution_for_case(case);
    let salt = match law {
        Law::CommuteTransfer => 1,
        Law::ReverseOrder => 2,
        _ => 3,
    };
    let mut rng = case_rng(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt), case as u64);
    let _warm: u32 = rng.gen();
    let result = match law {
        Law::CommuteTransfer => {
            let (a, y) = commuting_pair::<T>(&mut rng, config, inv);
            check_commute_pair(&a, &y)
        }
        Law::ReverseOrder => {
            let (a, b) = product_pair::<T>(&mut rng, config, inv);
            check_reverse_order_pair(&a, &b)
        }
        _ => {
            let (a, b) = orthogonal_pair::<T>(&mut rng, config, inv);
            check_additive_pair(&a, &b)
        }
    };
    result.unwrap_or_else(|e| failed_report(law, format!("error: {e}")))
}

pub fn run_case<T: ExactScalar + Send + Sync>(
    seed: u64,
    case: usize,
    scope: &[Law],
    config: &GeneratorConfig,
) -> Result<CaseResult<T>> {
    let inv = involution_for_case(case);
    let input: Matrix<T> = random_instance(&mut case_rng(seed, case as u64), config, inv);
    let analysis = Analysis::new(&input)?;
    let reports = scope
        .iter()
        .map(|&law| {
            if is_pair_law(law) {
                pair_report(seed, case, law, config)
            } else {
                analysis.check(law).unwrap_or_else(|e| failed_report(law, format!("error: {e}")))
            }
        })
        .collect();
    Ok(CaseResult {
        case,
        involution: inv,
        drazin_index: linalg::drazin_index(&input)?,
        pseudo_core_exists: analysis.inverse.is_some(),
        input,
        reports,
    })
}

/// Run every case (in parallel) and merge in case order.
pub fn run_suite<T: ExactScalar + Send + Sync>(config: &SuiteConfig) -> Result<SuiteReport<T>> {
    let results: Vec<Result<CaseResult<T>>> = (0..config.cases)
        .into_par_iter()
        .map(|case| run_case(config.seed, case, &config.scope, &config.generator))
        .collect();
    let mut summary = Counts::default();
    let mut per_law: BTreeMap<Law, Counts> = config.scope.iter().map(|&l| (l, Counts::default())).collect();
    let mut failures = Vec::new();
    for result in results {
        let result = result?;
        for report in &result.reports {
            summary.add(&report.outcome);
            per_law.entry(report.law).or_default().add(&report.outcome);
            if report.failed() {
                failures.push(Failure {
                    case: result.case,
                    law: report.law,
                    involution: result.involution,
                    equality: report.witness.as_ref().map(|w| w.equality.clone()).unwrap_or_default(),
                    input: result.input.clone(),
                    witness: report.witness.clone(),
                });
            }
        }
    }
    Ok(SuiteReport { seed: config.seed, cases: config.cases, scope: config.scope.clone(), summary, per_law, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational;

    #[test]
    fn single_uniqueness_case_passes() {
        let cfg = SuiteConfig::new(1, 1, vec![Law::Uniqueness]);
        let r = run_suite::<GaussianRational>(&cfg).unwrap();
        assert_eq!(r.summary, Counts { pass: 1, fail: 0, not_applicable: 0 });
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SuiteConfig::new(3, 6, vec![Law::Definition, Law::CorePart, Law::ReverseOrder]);
        let a = run_suite::<GaussianRational>(&cfg).unwrap();
        let b = run_suite::<GaussianRational>(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.summary.fail, 0, "{:?}", a.failures);
    }
}
