use std::path::PathBuf;

use serde_json::Value;
use tropweil::cli::{run, EXIT_CONTRADICTS, EXIT_ERROR, EXIT_OK, EXIT_USAGE};

fn docs(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["tropweil"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = invoke(args);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad JSON ({e}); stderr: {err}"));
    assert_eq!(v["exit_code"], code);
    (code, v)
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["solve", "--mod"]).0, EXIT_USAGE);
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("selftest"));
    assert_eq!(invoke(&["hodge", "--d", "0"]).0, EXIT_ERROR);
    assert_eq!(invoke(&["chain", "check", "/nonexistent/chain.json"]).0, EXIT_ERROR);
    assert_eq!(invoke(&["solve", "--mod", "/nonexistent/l.json"]).0, EXIT_ERROR);
}

#[test]
fn classes_reports_the_w1_sign() {
    let (code, v) = report(&["classes", "--d", "1", "-q"]);
    assert_eq!(code, EXIT_CONTRADICTS);
    assert_eq!(v["verdict"], "contradicts");
    // w1 = γ12∧… with −(1/d)·γ34⊗e12 at d = 1
    assert_eq!(v["result"]["classes"]["w1"]["h22"]["g34*e12"], "-1");
    let claims = v["claims"].as_array().unwrap();
    let held: Vec<_> = claims.iter().map(|c| (c["id"].as_str().unwrap(), c["observed"] == c["expected"])).collect();
    assert_eq!(held, vec![("w1-expansion", false), ("w2-expansion", true), ("theta-minors", true)]);
    assert_eq!(v["result"]["index_tables"]["t"]["entries"].as_array().unwrap().len(), 210);
    let cert = &v["certificates"]["expansions"];
    assert_eq!(cert["sha256"], tropweil::report::sha256_json(&cert["data"]));
}

#[test]
fn hodge_matches() {
    let (code, v) = report(&["hodge", "--d", "2", "-q"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["kernel_rank"], 3);
    assert_eq!(v["result"]["contains_saturation_of_theta_dw1_w2"], true);
}

#[test]
fn chain_check_of_the_unit_triangle() {
    let (code, v) = report(&["chain", "check", &docs("examples/triangle.json"), "-q"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdict"], "no-claims");
    let c = &v["result"]["chains"][0];
    assert_eq!(c["balanced"], false);
    assert_eq!(c["vol"], serde_json::json!({ "a^2*e12^2": "1" }));
    assert_eq!(c["unbalanced_flags"].as_array().unwrap().len(), 6);
}

#[test]
fn subdivide_writes_a_readable_chain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("square_chain.json");
    let (code, v) = report(&["chain", "subdivide", &docs("examples/square.json"), "--out", out.to_str().unwrap(), "-q"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["face"], serde_json::json!({ "e12": "1" }));
    let (code, w) = report(&["chain", "check", out.to_str().unwrap(), "-q"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(w["result"]["chains"][0]["vol"], v["result"]["check"]["vol"]);
}

#[test]
fn solve_exit_codes() {
    let (code, v) = report(&["solve", "--d", "1", "-q"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["exact"]["status"], "infeasible");
    assert_eq!(v["result"]["system"]["rows"], 4504);
    assert_eq!(v["result"]["system"]["rank"], 1491);
    let (code, v) = report(&["solve", "--d", "1", "--mod", "w", "-q"]);
    assert_eq!(code, EXIT_CONTRADICTS);
    assert_eq!(v["result"]["outcome"]["status"], "rationally-obstructed");
    assert_eq!(v["certificates"]["mod_l"]["data"]["kind"], "rational");
    let (code, _) = report(&["solve", "--d", "1", "--mod", &docs("examples/index2.json"), "-q"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn scan_finds_nothing() {
    let (code, v) = report(&["scan", "--d", "1", "-q"]);
    assert_eq!(code, EXIT_OK);
    let r = &v["result"];
    assert_eq!(r["bad_primes"], serde_json::json!([2]));
    assert_eq!(r["explicit"].as_array().unwrap().len(), 11);
    assert!(r["explicit"].as_array().unwrap().iter().all(|e| e["solvable"] == false));
}

#[test]
fn verify_zero_lambda_fails_on_a_triangle() {
    let lam = docs("examples/zero_lambda.json");
    let tri = docs("examples/triangle.json");
    let (code, v) = report(&["verify", "--lambda", &lam, "--chains", &tri, "--mod", "0", "-q"]);
    assert_eq!(code, EXIT_CONTRADICTS);
    assert_eq!(v["result"]["failures"], 1);
    // vol of the unit triangle is a²e12², coordinate 0
    assert_eq!(v["result"]["verdicts"][0]["defect"], serde_json::json!({ "0": "-1" }));
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    for args in [&["classes", "--d", "2", "-q"][..], &["selftest", "--seed", "7", "--cases", "8", "-q"][..]] {
        let (_, a) = report(args);
        let (_, b) = report(args);
        assert_eq!(strip_timing(a), strip_timing(b));
    }
    let (_, one) = report(&["scan", "--threads", "1", "-q"]);
    let (_, two) = report(&["scan", "--threads", "2", "-q"]);
    let (mut one, mut two) = (strip_timing(one), strip_timing(two));
    one.as_object_mut().unwrap().remove("threads");
    two.as_object_mut().unwrap().remove("threads");
    assert_eq!(one, two);
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = invoke(&["hodge", "--output", path.to_str().unwrap(), "-q"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "hodge");
}
