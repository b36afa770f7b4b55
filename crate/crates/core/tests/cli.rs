use std::process::Command;

use quasiinv::cli::run;
use quasiinv::exactalg::{elementary_symmetric, ratio, MultiPoly};
use quasiinv::hookbasis::{q_integral, HookSpec};
use quasiinv::json::{poly_from_json, poly_to_json};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quasiinv").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_poly(name: &str, p: &MultiPoly) -> String {
    let path = std::env::temp_dir().join(format!("quasiinv-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, poly_to_json(p)).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn basis_n2_emits_canonical_json() {
    let (code, out, _) = call(&["--format", "json", "basis", "--n", "2", "--m", "1", "--j", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let poly = poly_from_json(&v["basis"][0]["poly"].to_string()).unwrap();
    let expect = MultiPoly::binomial(2, 2, 1).unwrap().pow(3).scale(&ratio(-1, 6));
    assert_eq!(poly, expect);
    assert!(v["basis"][0]["poly"]["terms"].as_array().unwrap().iter().any(|t| t["den"] == "6"));
}

#[test]
fn basis_n3_has_degrees_four_and_five() {
    let (code, out, _) = call(&["--format", "json", "basis", "--n", "3", "--m", "1", "--j", "2", "--verify"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let degs: Vec<u64> = v["basis"].as_array().unwrap().iter().map(|b| b["degree"].as_u64().unwrap()).collect();
    assert_eq!(degs, vec![4, 5]);
    assert_eq!(v["verify"]["passed"], true);
}

#[test]
fn basis_n1_is_a_usage_error() {
    let (code, out, err) = call(&["basis", "--n", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("n ≥ 2"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(call(&["basis", "--n", "3", "--bogus"]).0, 2);
    assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
}

#[test]
fn verify_lm_reports_grid() {
    let (code, out, _) = call(&["verify", "--suite", "lm", "--n", "3", "--m", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("L_m eigen-identity on the hook basis: PASS (grid 2×2)"), "{out}");
}

#[test]
fn verify_groupalgebra_n4_passes() {
    let (code, out, _) = call(&["verify", "--suite", "groupalgebra", "--n", "4"]);
    assert_eq!(code, 0, "{out}");
    let passing = out.lines().filter(|l| l.starts_with('[') && l.contains(": PASS")).count();
    assert_eq!(passing, 6);
}

#[test]
fn verify_all_smallest_grid() {
    let (code, out, _) = call(&["verify", "--suite", "all", "--n", "2", "--m", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("overall: PASS\n"));
}

#[test]
fn hilbert_with_oracle_matches() {
    let (code, out, _) = call(&["--format", "json", "hilbert", "--n", "2", "--m", "1", "--D", "8", "--oracle"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let total: Vec<u64> = v["total"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect();
    assert_eq!(total, vec![1, 1, 2, 3, 4, 5, 6, 7, 8]);
    let rows = v["oracle"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["agrees"] == true));
}

#[test]
fn hilbert_m0_is_the_polynomial_ring() {
    let (code, out, _) = call(&["--format", "json", "hilbert", "--n", "3", "--m", "0", "--D", "6"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let total: Vec<u64> = v["total"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect();
    // Monomials of degree d in three variables.
    assert_eq!(total, vec![1, 3, 6, 10, 15, 21, 28]);
}

#[test]
fn hilbert_guardrail() {
    let (code, _, err) = call(&["hilbert", "--n", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("guardrail"));
}

#[test]
fn apply_gamma_kills_e1() {
    let input = temp_poly("e1", &elementary_symmetric(3, 1).unwrap());
    let (code, out, _) = call(&["apply", "--op", "gamma", "--shape", "2,1", "--j", "2", "--input", &input]);
    assert_eq!(code, 0);
    assert_eq!(out, "0\n");
    let (code, out, _) = call(&["--format", "json", "apply", "--op", "gamma", "--rows", "1,3/2", "--input", &input]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"nvars\":3,\"terms\":[]}\n");
}

#[test]
fn apply_lm_gives_twice_lower_basis_element() {
    let q2 = q_integral(&HookSpec::new(4, 1, 2, 2).unwrap());
    let q0 = q_integral(&HookSpec::new(4, 1, 2, 0).unwrap());
    let input = temp_poly("q2", &q2);
    let (code, out, _) = call(&["--format", "json", "apply", "--op", "lm", "--m", "1", "--input", &input]);
    assert_eq!(code, 0);
    assert_eq!(poly_from_json(&out).unwrap(), q0.scale(&ratio(2, 1)));
}

#[test]
fn apply_lm_reports_non_polynomial() {
    let input = temp_poly("x1", &MultiPoly::var(2, 1).unwrap());
    let (code, out, _) = call(&["--format", "json", "apply", "--op", "lm", "--m", "1", "--input", &input]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "NonPolynomial");
    assert_eq!(v["i"], 1);
    assert_eq!(v["j"], 2);
}

#[test]
fn apply_perm_swaps_variables() {
    let input = temp_poly("x1p", &MultiPoly::var(2, 1).unwrap());
    let (code, out, _) = call(&["apply", "--op", "perm", "--sigma", "(1,2)", "--input", &input]);
    assert_eq!(code, 0);
    assert_eq!(out, "x2\n");
}

#[test]
fn apply_delta_sq_checks_precondition() {
    let input = temp_poly("x1d", &MultiPoly::var(3, 1).unwrap());
    assert_eq!(call(&["apply", "--op", "delta-sq", "--m", "0", "--input", &input]).0, 0);
    assert_eq!(call(&["apply", "--op", "delta-sq", "--m", "1", "--input", &input]).0, 2);
}

#[test]
fn apply_rejects_bad_input() {
    let path = std::env::temp_dir().join(format!("quasiinv-cli-{}-bad.json", std::process::id()));
    std::fs::write(&path, "{\"nvars\":2,\"terms\":[{\"exp\":[1],\"num\":\"1\",\"den\":\"1\"}]}").unwrap();
    let (code, _, err) = call(&["apply", "--op", "perm", "--sigma", "(1,2)", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn oracle_exports_witness() {
    let (code, out, _) = call(&["--format", "json", "oracle", "--n", "2", "--m", "1", "--degree", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn detcheck_passes() {
    let (code, out, _) = call(&["detcheck", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("det / Delta_2^2: 1"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("quasiinv-cli-{}-out.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["--out", p, "basis", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("Q^(0,1) degree 3"));
}

#[test]
fn binary_matches_in_process_run() {
    let bin = env!("CARGO_BIN_EXE_quasiinv");
    let out = Command::new(bin).args(["basis", "--n", "3", "--m", "1"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), call(&["basis", "--n", "3", "--m", "1"]).1);
    let bad = Command::new(bin).args(["hilbert", "--n", "9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
