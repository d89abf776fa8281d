use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gencore::float::{self, compare, hartwig_spindelbock, Method, Tolerance};
use gencore::json::{self, AnyMatrix};
use gencore::pseudo_core::{Analysis, Law, Outcome};
use gencore::scalar::{Involution, ScalarMode};
use gencore::suite::{run_suite, SuiteConfig};
use gencore::{demo, equation_inverse, Error, ExactMatrix, FloatMatrix, InverseKind};
use serde_json::{json, Value};

/// Generalized inverses (Moore–Penrose, group, Drazin, core, pseudo core, ...)
/// of square matrices over the Gaussian rationals or complex doubles.
#[derive(Parser, Debug)]
#[command(name = "gencore", version, about)]
struct Cli {
    /// Indented JSON instead of one line.
    #[arg(long, global = true)]
    pretty: bool,

    /// Relative rank tolerance for float computations (default n·ε).
    #[arg(long, global = true, env = "GENCORE_TOL", value_parser = parse_tol)]
    tol: Option<f64>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Compute one inverse of the input matrix.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// inner, one-three, one-four, moore-penrose, group, drazin, core,
        /// dual-core, pseudo-core or dual-pseudo-core.
        #[arg(long)]
        inverse: String,
    },
    /// Check laws on the input matrix.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Law id (e.g. T2.9) or `all`.
        #[arg(long, default_value = "all")]
        law: String,
    },
    /// Run several pseudo core methods and compare them.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated subset of hs, cn, direct, exact.
        #[arg(long, default_value = "hs,cn,direct,exact")]
        methods: String,
    },
    /// Replay a counterexample: remark-2.15 or remark-4.5.
    Demo { name: String },
    /// Seeded randomized law suite.
    Suite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Comma-separated law ids or `all`.
        #[arg(long, default_value = "all")]
        scope: String,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Matrix JSON file, or `-` for standard input.
    #[arg(long)]
    input: String,
    /// Overrides the involution in the file.
    #[arg(long, value_parser = parse_involution)]
    involution: Option<Involution>,
    /// Overrides the mode in the file: exact or float.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<ScalarMode>,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got `{s}`")),
    }
}

fn parse_involution(s: &str) -> Result<Involution, String> {
    s.parse()
}

fn parse_mode(s: &str) -> Result<ScalarMode, String> {
    match s {
        "exact" => Ok(ScalarMode::Exact),
        "float" => Ok(ScalarMode::Float),
        other => Err(format!("unknown mode `{other}` (expected exact or float)")),
    }
}

/// A failed invocation: exit status plus an optional JSON body for stdout.
struct Failure {
    code: u8,
    message: String,
    body: Option<Value>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into(), body: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_nonexistence() { NONEXISTENT } else { USAGE };
        Failure { code, message: e.to_string(), body: None }
    }
}

const USAGE: u8 = 1;
const NONEXISTENT: u8 = 2;
const LAW_FAILED: u8 = 3;

/// Output plus exit status of a verb that ran to completion.
struct Report {
    body: Value,
    code: u8,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let tol = Tolerance { relative: cli.tol };
    let outcome = match cli.verb {
        Verb::Compute { input, inverse } => compute(&input, &inverse, tol),
        Verb::Verify { input, law } => verify(&input, &law),
        Verb::Compare { input, methods } => compare_verb(&input, &methods, tol),
        Verb::Demo { name } => run_demo(&name),
        Verb::Suite { seed, cases, scope } => suite(seed, cases, &scope),
    };
    let (body, code) = match outcome {
        Ok(r) => (Some(r.body), r.code),
        Err(f) => {
            eprintln!("gencore: {}", f.message);
            (f.body, f.code)
        }
    };
    if let Some(body) = body {
        let text = if cli.pretty { serde_json::to_string_pretty(&body) } else { serde_json::to_string(&body) };
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("JSON values always serialize"));
    }
    ExitCode::from(code)
}

fn read_input(args: &InputArgs) -> Result<AnyMatrix, Failure> {
    let text = if args.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&args.input).map_err(|e| Failure::usage(format!("reading {}: {e}", args.input)))?
    };
    Ok(json::parse_matrix(&text, args.involution, args.mode)?)
}

fn read_exact(args: &InputArgs) -> Result<ExactMatrix, Failure> {
    let exact_args =
        InputArgs { mode: Some(ScalarMode::Exact), input: args.input.clone(), involution: args.involution };
    match read_input(&exact_args)? {
        AnyMatrix::Exact(m) => Ok(m),
        AnyMatrix::Float(_) => unreachable!("mode forced to exact"),
    }
}

fn nonexistence(kind: &str, e: Error) -> Failure {
    if let Error::NoSolution(reason) = &e {
        return Failure {
            code: NONEXISTENT,
            message: format!("{kind}: {reason}"),
            body: Some(json!({"kind": kind, "exists": false, "reason": reason})),
        };
    }
    e.into()
}

fn compute(args: &InputArgs, inverse: &str, tol: Tolerance) -> Result<Report, Failure> {
    let norm = inverse.trim().replace('-', "_");
    if norm != "pseudo_core" && norm != "dual_pseudo_core" {
        norm.parse::<InverseKind>().map_err(Failure::usage)?;
    }
    match read_input(args)? {
        AnyMatrix::Exact(a) => compute_exact(&a, &norm),
        AnyMatrix::Float(a) => compute_float(&a, &norm, tol),
    }
}

fn compute_exact(a: &ExactMatrix, kind: &str) -> Result<Report, Failure> {
    let body = match kind {
        "pseudo_core" => {
            let r = gencore::pseudo_core_inverse(a).map_err(|e| nonexistence(kind, e))?;
            json::pseudo_core_result_json(kind, &r)
        }
        "dual_pseudo_core" => {
            let r = gencore::dual_pseudo_core_inverse(a).map_err(|e| nonexistence(kind, e))?;
            json::pseudo_core_result_json(kind, &r)
        }
        _ => {
            let k: InverseKind = kind.parse().map_err(Failure::usage)?;
            let r = equation_inverse(a, k).map_err(|e| nonexistence(k.tag(), e))?;
            json::inverse_result_json(&r)
        }
    };
    Ok(Report::ok(body))
}

fn compute_float(a: &FloatMatrix, kind: &str, tol: Tolerance) -> Result<Report, Failure> {
    a.ensure_square()?;
    let (value, index, residuals) = match kind {
        "pseudo_core" | "dual_pseudo_core" => {
            let dual = kind == "dual_pseudo_core";
            let src = if dual { a.adjoint() } else { a.clone() };
            let m = float::float_index(&src, tol)?;
            let x = float::pseudo_core_direct(&src, tol)?;
            let r = float::defining_residuals(&src, &x, m)?;
            (if dual { x.adjoint() } else { x }, Some(m), Some(r))
        }
        "moore_penrose" => {
            let s = float::svd(a)?;
            let threshold = tol.threshold(a.rows(), s.sigma_max());
            (float::pinv(a, threshold)?, None, None)
        }
        "drazin" => (float::drazin_float(a, tol)?, Some(float::float_index(a, tol)?), None),
        other => {
            return Err(Failure::usage(format!(
                "{other} is only available in exact mode (float mode offers pseudo-core, dual-pseudo-core, moore-penrose, drazin)"
            )))
        }
    };
    let mut body = json!({"kind": kind, "value": json::matrix_to_json(&value), "index": index});
    if let Some([r1, r2, r3]) = residuals {
        body["residuals"] = json!({"I": r1, "II": r2, "III": r3});
    }
    Ok(Report::ok(body))
}

fn parse_laws(spec: &str) -> Result<Vec<Law>, Failure> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(Law::ALL.to_vec());
    }
    let laws = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Law>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    if laws.is_empty() {
        return Err(Failure::usage("no laws given"));
    }
    Ok(laws)
}

fn verify(args: &InputArgs, law: &str) -> Result<Report, Failure> {
    let laws = parse_laws(law)?;
    let a = read_exact(args)?;
    let analysis = Analysis::new(&a)?;
    let reports = laws.iter().map(|&l| analysis.check(l)).collect::<Result<Vec<_>, _>>()?;
    let failed = reports.iter().filter(|r| r.failed()).count();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let skipped = reports.iter().filter(|r| matches!(r.outcome, Outcome::NotApplicable(_))).count();
    let body = json!({
        "involution": a.involution().as_str(),
        "pseudo_core_exists": analysis.inverse.is_some(),
        "index": analysis.drazin_index,
        "reason": analysis.reason,
        "summary": {"pass": passed, "fail": failed, "not_applicable": skipped},
        "laws": reports.iter().map(json::law_report_json).collect::<Vec<_>>(),
    });
    let code = if failed > 0 {
        LAW_FAILED
    } else if passed == 0 && analysis.inverse.is_none() {
        NONEXISTENT
    } else {
        0
    };
    Ok(Report { body, code })
}

fn compare_verb(args: &InputArgs, methods: &str, tol: Tolerance) -> Result<Report, Failure> {
    let methods = methods
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<Method>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    if methods.is_empty() {
        return Err(Failure::usage("no methods given"));
    }
    let a = read_exact(args)?;
    let report = compare::<f64>(&a, &methods, tol)?;
    let mut body = json::compare_report_json(&report);
    if methods.contains(&Method::Hs) {
        let af: FloatMatrix = a.to_float();
        body["hs_invariants"] = match hartwig_spindelbock(&af, tol) {
            Ok(hs) => json::hs_invariants_json(&hs.invariants(&af)),
            Err(e) => json!({"error": e.to_string()}),
        };
    }
    let exact_missing =
        report.outcome(Method::Exact).and_then(|o| o.error.as_ref()).is_some_and(|e| e.starts_with("no solution"));
    Ok(Report { body, code: if exact_missing { NONEXISTENT } else { 0 } })
}

fn run_demo(name: &str) -> Result<Report, Failure> {
    let d = demo::run(name).map_err(|e| Failure::usage(e.to_string()))?;
    let code = if d.confirmed { 0 } else { LAW_FAILED };
    Ok(Report { body: d.to_json(), code })
}

fn suite(seed: u64, cases: usize, scope: &str) -> Result<Report, Failure> {
    if cases == 0 {
        return Err(Failure::usage("--cases must be at least 1"));
    }
    let scope = parse_laws(scope)?;
    let report = run_suite::<gencore::GaussianRational>(&SuiteConfig::new(seed, cases, scope))?;
    let code = if report.all_passed() { 0 } else { LAW_FAILED };
    Ok(Report { body: json::suite_report_json(&report), code })
}
