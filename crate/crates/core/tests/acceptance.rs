//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gencore::classical::{core_by_projector, equation_inverse, InverseKind};
use gencore::float::{compare, hartwig_spindelbock, Method, Tolerance};
use gencore::generator::{case_rng, random_instance, GeneratorConfig};
use gencore::linalg;
use gencore::pseudo_core::{condition_one_holds, pseudo_core_inverse, Analysis, Fact, Law};
use gencore::scalar::{gaussian, Involution};
use gencore::suite::{run_suite, SuiteConfig};
use gencore::{Error, ExactMatrix, FloatMatrix, Matrix};

const EXACT_SEED: u64 = 20261017;
const FLOAT_SEED: u64 = 11;
const CASES_PER_MODE: usize = 200;
const FLOAT_CASES: u64 = 100;
const PAIR_TOL: f64 = 1e-8;
const EXACT_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-9;
const HS_TOL: f64 = 1e-10;

type Check = Result<String, String>;

fn m(inv: Involution, rows: &[&[(i64, i64)]]) -> ExactMatrix {
    Matrix::from_rows(inv, rows.iter().map(|r| r.iter().map(|&(a, b)| gaussian(a, b)).collect()).collect())
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn core_counterexample() -> Check {
    let inv = Involution::Transpose;
    let a = m(inv, &[&[(1, 0), (0, 1)], &[(0, 0), (0, 0)]]);
    let expected = m(inv, &[&[(1, 0), (0, 0)], &[(0, 0), (0, 0)]]);
    let x = equation_inverse(&a, InverseKind::Core).map_err(err)?.value;
    ensure(x == expected, format!("core inverse {x:?}"))?;
    let group = equation_inverse(&a, InverseKind::Group).map_err(err)?.value;
    let x13 = equation_inverse(&a, InverseKind::OneThree).map_err(err)?.value;
    ensure(&(&group * &a) * &x13 == expected, "a^#·a·a^(1,3) differs")?;
    ensure(core_by_projector(&a).map_err(err)? == expected, "projector route differs")?;
    let a2x = &(&a * &a) * &x;
    ensure(a2x != a, "a^2·x = a")?;
    Ok("x = [[1,0],[0,0]] by three routes; a^2·x = [[1,0],[0,0]] ≠ a".into())
}

fn sum_counterexample() -> Check {
    let inv = Involution::Transpose;
    let a = m(inv, &[&[(0, 1), (0, 0)], &[(0, 0), (0, 0)]]);
    let b = m(inv, &[&[(0, 0), (0, 0)], &[(-1, 0), (0, 0)]]);
    let pa = pseudo_core_inverse(&a).map_err(err)?;
    ensure(pa.value == m(inv, &[&[(0, -1), (0, 0)], &[(0, 0), (0, 0)]]), "a^⊕ wrong")?;
    let pb = pseudo_core_inverse(&b).map_err(err)?;
    ensure(pb.value.is_zero(), "b^⊕ ≠ 0")?;
    ensure((&a * &b).is_zero() && (&a.adjoint() * &b).is_zero(), "ab or a*b nonzero")?;
    ensure(!(&b * &a).is_zero(), "ba = 0")?;
    let s = &a + &b;
    for k in 1..=2 {
        let p = s.power(k).map_err(err)?;
        let r = equation_inverse(&p, InverseKind::OneThree);
        ensure(matches!(r, Err(Error::NoSolution(_))), format!("(a+b)^{k} has a {{1,3}}-inverse"))?;
    }
    // (a+b)^2 = i·(a+b): all powers are unit multiples of a+b
    let i = gaussian(0, 1);
    ensure(s.power(2).map_err(err)? == s.scale(&i), "(a+b)^2 ≠ i·(a+b)")?;
    ensure(matches!(pseudo_core_inverse(&s), Err(Error::NoSolution(_))), "(a+b)^⊕ exists")?;
    Ok("a^⊕ = [[-i,0],[0,0]], b^⊕ = 0, ba ≠ 0; no {1,3} at m = 1, 2; (a+b)^2 = i·(a+b)".into())
}

fn instances(inv: Involution) -> Vec<ExactMatrix> {
    let cfg = GeneratorConfig::default();
    (0..CASES_PER_MODE).map(|c| random_instance(&mut case_rng(EXACT_SEED, c as u64), &cfg, inv)).collect()
}

fn defining_equations() -> Check {
    let mut summary = Vec::new();
    for inv in Involution::ALL {
        let (mut ok, mut missing, mut below) = (0, 0, 0);
        for (case, a) in instances(inv).iter().enumerate() {
            ensure(a.rows() <= 6, format!("case {case} has n = {}", a.rows()))?;
            let r = match pseudo_core_inverse(a) {
                Ok(r) => r,
                Err(Error::NoSolution(_)) => {
                    missing += 1;
                    continue;
                }
                Err(e) => return Err(format!("{inv} case {case}: {e}")),
            };
            ensure(r.certificates.all_hold(), format!("{inv} case {case}: nonzero residual"))?;
            ensure(r.index == linalg::drazin_index(a).map_err(err)?, format!("{inv} case {case}: index"))?;
            // below index 1 the condition reads x·a = 1, which holds for invertible a
            if r.index >= 2 {
                below += 1;
                ensure(
                    !condition_one_holds(a, &r.value, r.index - 1),
                    format!("{inv} case {case}: (I) holds at index - 1"),
                )?;
            }
            ok += 1;
        }
        summary.push(format!("{inv}: {ok} exact, {below} with index ≥ 2 fail (I) below, {missing} nonexistent"));
    }
    Ok(summary.join("; "))
}

fn uniqueness() -> Check {
    let (mut multi, mut total) = (0, 0);
    for inv in Involution::ALL {
        for (case, a) in instances(inv).iter().enumerate() {
            let an = Analysis::new(a).map_err(err)?;
            let r = an.check(Law::Uniqueness).map_err(err)?;
            ensure(r.passed(), format!("{inv} case {case}: {:?}", r.witness.as_ref().map(|w| &w.equality)))?;
            total += 1;
            if matches!(r.detail("paths"), Some(Fact::Int(p)) if *p >= 2) {
                multi += 1;
            }
        }
    }
    Ok(format!("{multi} of {total} instances with ≥ 2 routes, all identical"))
}

fn identity_suites() -> Check {
    let cfg = SuiteConfig::new(EXACT_SEED, 2 * CASES_PER_MODE, Law::ALL.to_vec());
    let r = run_suite::<gencore::GaussianRational>(&cfg).map_err(err)?;
    if let Some(f) = r.failures.first() {
        return Err(format!("{} failures, first: case {} {} {}", r.failures.len(), f.case, f.law, f.equality));
    }
    let laws: Vec<String> = r.per_law.iter().map(|(l, c)| format!("{l} {}/{}", c.pass, c.not_applicable)).collect();
    Ok(format!(
        "{} pass, 0 fail, {} n/a over {} cases (pass/n-a: {})",
        r.summary.pass,
        r.summary.not_applicable,
        r.cases,
        laws.join(", ")
    ))
}

fn float_instances() -> Vec<ExactMatrix> {
    let cfg = GeneratorConfig::float_default();
    (0..FLOAT_CASES)
        .map(|c| random_instance(&mut case_rng(FLOAT_SEED, c), &cfg, Involution::ConjugateTranspose))
        .collect()
}

fn float_agreement() -> Check {
    let float_methods = [Method::Hs, Method::Cn, Method::Direct];
    let (mut pair, mut exact, mut residual) = (0f64, 0f64, 0f64);
    for (case, a) in float_instances().iter().enumerate() {
        ensure(a.rows() <= 12, format!("case {case} has n = {}", a.rows()))?;
        let r = compare::<f64>(a, &Method::ALL, Tolerance::default()).map_err(err)?;
        for o in &r.outcomes {
            if let Some(e) = &o.error {
                return Err(format!("case {case}: {} failed: {e}", o.method));
            }
            residual = residual.max(o.residuals.unwrap_or_default().into_iter().fold(0.0, f64::max));
        }
        for d in &r.pairwise {
            if float_methods.contains(&d.left) && float_methods.contains(&d.right) {
                pair = pair.max(d.rel_diff);
            } else {
                exact = exact.max(d.rel_diff);
            }
        }
    }
    ensure(pair <= PAIR_TOL, format!("pairwise {pair:.2e} > {PAIR_TOL:e}"))?;
    ensure(exact <= EXACT_TOL, format!("vs exact {exact:.2e} > {EXACT_TOL:e}"))?;
    ensure(residual <= RESIDUAL_TOL, format!("residual {residual:.2e} > {RESIDUAL_TOL:e}"))?;
    Ok(format!(
        "{FLOAT_CASES} instances: max pairwise {pair:.2e} (≤ {PAIR_TOL:e}), vs exact {exact:.2e} (≤ {EXACT_TOL:e}), \
         residuals {residual:.2e}"
    ))
}

fn hs_invariants() -> Check {
    let inv = Involution::ConjugateTranspose;
    let mut mats: Vec<FloatMatrix> = float_instances().iter().map(|a| a.to_float()).collect();
    mats.push(ExactMatrix::identity(4, inv).to_float());
    mats.push(m(inv, &[&[(0, 1), (0, 0)], &[(0, 0), (0, 0)]]).to_float());
    mats.push(m(inv, &[&[(0, 0), (1, 0), (0, 0)], &[(0, 0), (0, 0), (1, 0)], &[(0, 0), (0, 0), (0, 0)]]).to_float());
    mats.push(m(inv, &[&[(1, 0), (0, 1)], &[(0, 0), (0, 0)]]).to_float());
    let (mut worst, mut checked, mut zero) = (0f64, 0, 0);
    for (i, a) in mats.iter().enumerate() {
        match hartwig_spindelbock(a, Tolerance::default()) {
            Ok(hs) => {
                let v = hs.invariants(a);
                ensure(v.sigma_ordered, format!("matrix {i}: singular values out of order"))?;
                worst = worst.max(v.max_residual());
                checked += 1;
            }
            Err(Error::RankZero) => zero += 1,
            Err(e) => return Err(format!("matrix {i}: {e}")),
        }
    }
    ensure(worst <= HS_TOL, format!("worst invariant {worst:.2e} > {HS_TOL:e}"))?;
    Ok(format!("{checked} matrices ({zero} of rank zero skipped): worst invariant {worst:.2e} (≤ {HS_TOL:e})"))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Option<Duration>, fn() -> Check); 7] = [
        ("1", "core inverse counterexample", Some(Duration::from_secs(1)), core_counterexample),
        ("2", "orthogonal sum counterexample", Some(Duration::from_secs(1)), sum_counterexample),
        ("3", "defining-equation suite", Some(Duration::from_secs(30)), defining_equations),
        ("4", "uniqueness across routes", None, uniqueness),
        ("5", "identity suites", Some(Duration::from_secs(120)), identity_suites),
        ("6", "float cross-method agreement", Some(Duration::from_secs(60)), float_agreement),
        ("7", "HS decomposition invariants", None, hs_invariants),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let over = budget.filter(|b| took > *b);
        let (status, text) = match (&result, over) {
            (Ok(s), None) => ("PASS", s.clone()),
            (Ok(s), Some(b)) => ("FAIL", format!("{s}; over the {:.0} s budget", b.as_secs_f64())),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let budget = budget.map_or(String::new(), |b| format!(", budget {} s", b.as_secs()));
        println!("{status} criterion {id} ({name}) [{:.2} s{budget}]: {text}", took.as_secs_f64());
    }
    println!("acceptance: {} of 7 criteria pass", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
