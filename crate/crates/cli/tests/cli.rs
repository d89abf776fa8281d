use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gencore"));
    c.env_remove("GENCORE_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

/// Entries are `(re, im)` rational strings.
fn write_matrix(dir: &TempDir, name: &str, involution: &str, rows: &[&[(&str, &str)]]) -> PathBuf {
    let entries: Vec<Value> = rows
        .iter()
        .map(|r| Value::Array(r.iter().map(|(re, im)| serde_json::json!({"re": re, "im": im})).collect()))
        .collect();
    let doc = serde_json::json!({
        "rows": rows.len(),
        "cols": rows[0].len(),
        "involution": involution,
        "mode": "exact",
        "entries": entries,
    });
    let path = dir.path().join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

fn diag_i(dir: &TempDir) -> PathBuf {
    write_matrix(dir, "a.json", "transpose", &[&[("0", "1"), ("0", "0")], &[("0", "0"), ("0", "0")]])
}

fn sum_matrix(dir: &TempDir) -> PathBuf {
    write_matrix(dir, "s.json", "transpose", &[&[("0", "1"), ("0", "0")], &[("-1", "0"), ("0", "0")]])
}

fn idempotent(dir: &TempDir) -> PathBuf {
    write_matrix(dir, "e.json", "transpose", &[&[("1", "0"), ("0", "1")], &[("0", "0"), ("0", "0")]])
}

fn identity(dir: &TempDir, involution: &str) -> PathBuf {
    write_matrix(dir, "id.json", involution, &[&[("1", "0"), ("0", "0")], &[("0", "0"), ("1", "0")]])
}

fn entry(m: &Value, i: usize, j: usize) -> (String, String) {
    let e = &m["entries"][i][j];
    (e["re"].as_str().unwrap().to_string(), e["im"].as_str().unwrap().to_string())
}

#[test]
fn compute_pseudo_core_of_diagonal() {
    let dir = TempDir::new().unwrap();
    let a = diag_i(&dir);
    let o = run(&["compute", "--input", a.to_str().unwrap(), "--inverse", "pseudo-core", "--involution", "transpose"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["index"], 1);
    assert_eq!(entry(&v["value"], 0, 0), ("0/1".into(), "-1/1".into()));
    assert_eq!(entry(&v["value"], 1, 1), ("0/1".into(), "0/1".into()));
    assert_eq!(v["certificates"]["all_hold"], true);
}

#[test]
fn compute_nonexistence_exits_two() {
    let dir = TempDir::new().unwrap();
    let s = sum_matrix(&dir);
    let o = run(&["compute", "--input", s.to_str().unwrap(), "--inverse", "pseudo-core", "--involution", "transpose"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json_out(&o);
    assert_eq!(v["exists"], false);
    assert_eq!(v["reason"], "{1,3}-inverse of A^m nonexistent for all m ≤ n");
    let o = run(&["compute", "--input", s.to_str().unwrap(), "--inverse", "one-three"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compute_moore_penrose_of_identity() {
    let dir = TempDir::new().unwrap();
    let id = identity(&dir, "conjugate_transpose");
    let o = run(&["compute", "--input", id.to_str().unwrap(), "--inverse", "moore-penrose"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["kind"], "moore_penrose");
    assert_eq!(entry(&v["value"], 0, 0), ("1/1".into(), "0/1".into()));
    assert_eq!(entry(&v["value"], 0, 1), ("0/1".into(), "0/1".into()));
    assert_eq!(v["verified"], true);
}

#[test]
fn compute_core_of_isotropic_idempotent() {
    let dir = TempDir::new().unwrap();
    let e = idempotent(&dir);
    let o = run(&["compute", "--input", e.to_str().unwrap(), "--inverse", "core"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(entry(&v["value"], 0, 0), ("1/1".into(), "0/1".into()));
    assert_eq!(entry(&v["value"], 0, 1), ("0/1".into(), "0/1".into()));
}

#[test]
fn compute_float_mode() {
    let dir = TempDir::new().unwrap();
    let a = diag_i(&dir);
    let o = run(&[
        "compute",
        "--input",
        a.to_str().unwrap(),
        "--inverse",
        "pseudo-core",
        "--mode",
        "float",
        "--involution",
        "conjugate_transpose",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["value"]["mode"], "float");
    assert!((v["value"]["entries"][0][0]["im"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    for k in ["I", "II", "III"] {
        assert!(v["residuals"][k].as_f64().unwrap() < 1e-12);
    }
    let o = run(&["compute", "--input", a.to_str().unwrap(), "--inverse", "pseudo-core", "--mode", "float"]);
    assert_eq!(o.status.code(), Some(1), "transpose input in float mode");
}

#[test]
fn bad_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"rows\": 2}").unwrap();
    let o = run(&["compute", "--input", junk.to_str().unwrap(), "--inverse", "drazin"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    let o = run(&["compute", "--input", "/nonexistent/m.json", "--inverse", "drazin"]);
    assert_eq!(o.status.code(), Some(1));
    let id = identity(&dir, "transpose");
    let o = run(&["compute", "--input", id.to_str().unwrap(), "--inverse", "sideways"]);
    assert_eq!(o.status.code(), Some(1));
    let nonsquare = write_matrix(&dir, "r.json", "transpose", &[&[("1", "0"), ("2", "0")]]);
    let o = run(&["compute", "--input", nonsquare.to_str().unwrap(), "--inverse", "group"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_flags_and_verbs_exit_one() {
    assert_eq!(run(&["compute", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["transmogrify"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn input_from_stdin() {
    use std::io::Write;
    let doc = r#"{"rows":1,"cols":1,"involution":"transpose","mode":"exact","entries":[[{"re":"2","im":"0"}]]}"#;
    let mut child = bin()
        .args(["compute", "--input", "-", "--inverse", "group"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(entry(&json_out(&o)["value"], 0, 0), ("1/2".into(), "0/1".into()));
}

#[test]
fn verify_reports_core_characterization() {
    let dir = TempDir::new().unwrap();
    let e = idempotent(&dir);
    let o = run(&["verify", "--input", e.to_str().unwrap(), "--law", "P2.14"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let law = &v["laws"][0];
    assert_eq!(law["law"], "P2.14");
    assert_eq!(law["holds"], true);
    assert_eq!(law["details"]["cond1"], true);
    assert_eq!(law["details"]["cond3"], false);
    assert!(law["details"]["summary"].as_str().unwrap().starts_with("(1) holds"));
}

#[test]
fn verify_all_on_identity() {
    let dir = TempDir::new().unwrap();
    for inv in ["transpose", "conjugate_transpose"] {
        let id = identity(&dir, inv);
        let o = run(&["verify", "--input", id.to_str().unwrap(), "--law", "all"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json_out(&o);
        assert_eq!(v["summary"]["fail"], 0);
        assert_eq!(v["laws"].as_array().unwrap().len(), 20);
        for law in v["laws"].as_array().unwrap() {
            assert_ne!(law["holds"], false, "{law}");
        }
    }
}

#[test]
fn verify_core_part_law() {
    let dir = TempDir::new().unwrap();
    let j = write_matrix(
        &dir,
        "j.json",
        "conjugate_transpose",
        &[
            &[("1", "1"), ("2", "0"), ("0", "0")],
            &[("0", "0"), ("0", "0"), ("1", "0")],
            &[("0", "0"), ("0", "0"), ("0", "0")],
        ],
    );
    let o = run(&["verify", "--input", j.to_str().unwrap(), "--law", "T2.9"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["laws"][0]["holds"], true);
}

#[test]
fn verify_on_noninvertible_input() {
    let dir = TempDir::new().unwrap();
    let s = sum_matrix(&dir);
    let o = run(&["verify", "--input", s.to_str().unwrap(), "--law", "D1.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_out(&o)["laws"][0]["outcome"], "not_applicable");
    let o = run(&["verify", "--input", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "equivalence laws still apply and pass");
    assert_eq!(json_out(&o)["pseudo_core_exists"], false);
    let o = run(&["verify", "--input", s.to_str().unwrap(), "--law", "X9.9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compare_identity_all_methods() {
    let dir = TempDir::new().unwrap();
    let id = identity(&dir, "conjugate_transpose");
    let o = run(&["compare", "--input", id.to_str().unwrap(), "--methods", "hs,cn,direct,exact"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["pairwise"].as_array().unwrap().len(), 6);
    assert!(v["max_pairwise"].as_f64().unwrap() <= 1e-14);
    for m in v["methods"].as_array().unwrap() {
        assert!(m["error"].is_null());
        assert!(m["residuals"]["I"].as_f64().unwrap() <= 1e-14);
    }
}

#[test]
fn compare_generated_instance() {
    let dir = TempDir::new().unwrap();
    // block-diag(2, 1+i, J3) conjugated by a unimodular integer matrix
    let p = write_matrix(
        &dir,
        "g.json",
        "conjugate_transpose",
        &[
            &[("3", "0"), ("1", "1"), ("0", "0"), ("1", "0"), ("0", "0")],
            &[("0", "0"), ("1", "0"), ("1", "0"), ("0", "0"), ("-1", "0")],
            &[("0", "0"), ("0", "0"), ("0", "0"), ("1", "0"), ("0", "0")],
            &[("0", "0"), ("0", "0"), ("0", "0"), ("0", "0"), ("1", "0")],
            &[("0", "0"), ("0", "0"), ("0", "0"), ("0", "0"), ("0", "0")],
        ],
    );
    let o = run(&["compare", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_out(&o);
    assert!(v["max_pairwise"].as_f64().unwrap() <= 1e-8, "{v}");
    assert!(v["hs_invariants"]["unitarity"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn compare_rejects_transpose_for_float_methods() {
    let dir = TempDir::new().unwrap();
    let a = diag_i(&dir);
    let o = run(&["compare", "--input", a.to_str().unwrap(), "--methods", "hs"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conjugate transposition"));
    let o = run(&["compare", "--input", a.to_str().unwrap(), "--methods", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["compare", "--input", a.to_str().unwrap(), "--methods", "svd"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tolerance_from_environment() {
    let dir = TempDir::new().unwrap();
    let id = identity(&dir, "conjugate_transpose");
    let o = bin().args(["compare", "--input", id.to_str().unwrap()]).env("GENCORE_TOL", "1e-6").output().unwrap();
    assert_eq!(json_out(&o)["tolerance"], 1e-6);
    let o = bin().args(["compare", "--input", id.to_str().unwrap()]).env("GENCORE_TOL", "-1").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin()
        .args(["compare", "--input", id.to_str().unwrap(), "--tol", "1e-9"])
        .env("GENCORE_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(json_out(&o)["tolerance"], 1e-9, "flag wins over environment");
}

#[test]
fn demo_core_counterexample() {
    let o = run(&["demo", "remark-2.15"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["confirmed"], true);
    let steps = v["steps"].as_array().unwrap();
    let a2x = steps.iter().find(|s| s["label"] == "a^2·x").unwrap();
    assert_eq!(a2x["decisive"], true);
    assert_eq!(entry(&a2x["matrix"], 0, 1), ("0/1".into(), "0/1".into()));
}

#[test]
fn demo_sum_counterexample() {
    let o = run(&["demo", "remark-4.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["confirmed"], true);
    let steps = v["steps"].as_array().unwrap();
    let labels: Vec<&str> = steps.iter().map(|s| s["label"].as_str().unwrap()).collect();
    for needed in ["a^⊕", "b^⊕", "b·a", "(a+b)^1 {1,3}-inverse", "(a+b)^2 {1,3}-inverse", "periodicity"] {
        assert!(labels.contains(&needed), "{needed} missing from {labels:?}");
    }
}

#[test]
fn demo_unknown_name() {
    let o = run(&["demo", "remark-9.9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn suite_single_uniqueness_case() {
    let o = run(&["suite", "--seed", "1", "--cases", "1", "--scope", "T2.2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["summary"]["pass"], 1);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn suite_rejects_zero_cases() {
    let o = run(&["suite", "--seed", "1", "--cases", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn suite_output_is_byte_identical() {
    let args = ["suite", "--seed", "5", "--cases", "12", "--scope", "D1.1,T2.2,T4.3,T4.4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pretty_output_parses_to_the_same_value() {
    let plain = json_out(&run(&["demo", "remark-2.15"]));
    let pretty = run(&["--pretty", "demo", "remark-2.15"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).lines().count() > 10);
    assert_eq!(json_out(&pretty), plain);
}

#[test]
fn suite_full_scope_seed_seven() {
    let o = run(&["suite", "--seed", "7", "--cases", "200", "--scope", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["summary"]["fail"], 0, "{}", v["failures"]);
}
