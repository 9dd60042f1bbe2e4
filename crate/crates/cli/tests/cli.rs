use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffsqfree"))
        .args(args)
        .env_remove("FFSQFREE_LIMIT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn density_exhaustive_csv() {
    let out = run(&["density", "--p", "5", "--f", "x^2 - t", "--n", "2", "--mode", "exhaustive", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# config: {\"command\":\"density\""));
    assert_eq!(
        lines.next().unwrap(),
        "f,q,n,mode,total,squarefree,density_num,density_den,bound_D,check"
    );
    assert_eq!(lines.next().unwrap(), "x^2 + 4*t,5,2,exhaustive,25,21,21,25,20,true");
}

#[test]
fn density_range_json() {
    let v = json(&["density", "--p", "3", "--f", "x", "--n", "2..4"]);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert_eq!((r["density_num"].as_u64(), r["density_den"].as_u64()), (Some(2), Some(3)));
        assert_eq!(r["check"], Value::Bool(true));
    }
    assert_eq!(v["config"]["n"], "2..4");
}

#[test]
fn density_sample() {
    let args = ["density", "--p", "101", "--f", "x^4 + 2", "--n", "3", "--mode", "sample", "--samples", "10000", "--seed", "7"];
    let v = json(&args);
    let r = &v["reports"][0];
    assert_eq!(r["sample_count"], 10000);
    assert!(r["density"].as_f64().unwrap() > 0.95);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn density_gates() {
    assert_eq!(code(&["density", "--p", "2", "--f", "t^2*x", "--n", "3"]), 1);
    assert_eq!(code(&["density", "--p", "2", "--f", "x^2 - t", "--n", "2"]), 1);
    let v = json(&["density", "--p", "2", "--f", "t^2*x", "--n", "3", "--allow-degenerate"]);
    assert!(v["warning"].as_str().unwrap().contains("content"));
    assert_eq!(v["reports"][0]["squarefree"], 0);
    assert_eq!(v["reports"][0]["check"], Value::Null);
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(code(&["density", "--p", "4", "--f", "x", "--n", "2"]), 1);
    assert_eq!(code(&["density", "--p", "5", "--f", "x + y", "--n", "2"]), 1);
    assert_eq!(code(&["density", "--p", "5", "--f", "x", "--n", "3..1"]), 1);
    assert_eq!(code(&["density", "--p", "5", "--f", "x"]), 1);
    assert_eq!(code(&["certify", "--p", "5", "--f", "x", "--format", "csv"]), 1);
    assert_eq!(code(&["ramsay", "--p", "5", "--f", "x", "--B", "0"]), 1);
}

#[test]
fn overflow_exit_four() {
    let out = run(&["density", "--p", "3", "--f", "x", "--n", "14"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit"));
    assert_eq!(code(&["counterexample", "--p", "5"]), 4);
}

#[test]
fn limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ffsqfree"))
        .args(["density", "--p", "3", "--f", "x", "--n", "3"])
        .env("FFSQFREE_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_ffsqfree"))
        .args(["density", "--p", "3", "--f", "x", "--n", "3"])
        .env("FFSQFREE_LIMIT", "27")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn certify_linear() {
    let v = json(&["certify", "--p", "3", "--f", "x", "--n", "2", "--verify"]);
    assert_eq!(v["product_degree"], 2);
    assert_eq!(v["bound"], 4);
    assert_eq!(v["nontrivial"], true);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["zero_count"], 3);
    assert_eq!(v["verification"]["bad_direct"], 3);
    let terms = v["disc_part"]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["exponents"], serde_json::json!([0, 2]));
}

#[test]
fn certify_defaults_and_exit_codes() {
    let v = json(&["certify", "--p", "5", "--f", "x^2 - t", "--n", "2"]);
    assert!(v["product_degree"].as_u64().unwrap() <= 20);
    assert_eq!(v["bound"], 20);
    let v = json(&["certify", "--p", "5", "--f", "x^2 - t"]);
    assert_eq!(v["n"], 2);
    assert_eq!(code(&["certify", "--p", "3", "--f", "x^2 + t*x + t^2"]), 1);
    assert_eq!(code(&["certify", "--p", "5", "--f", "x^2 - t^2", "--n", "1"]), 3);
    let v = json(&["certify", "--p", "5", "--f", "x^2 - t^2", "--n", "1", "--force"]);
    assert_eq!(v["normalized"], false);
}

#[test]
fn ramsay_reports() {
    let v = json(&["ramsay", "--p", "3", "--f", "x", "--B", "3", "--n", "2..8"]);
    assert_eq!(v["local_factors"].as_array().unwrap().len(), 14);
    assert!((v["c_f_truncated"]["approx"].as_f64().unwrap() - 2.0 / 3.0).abs() < 0.01);
    for e in v["empirical"].as_array().unwrap() {
        assert_eq!((e["density"]["num"].as_str(), e["density"]["den"].as_str()), (Some("2"), Some("3")));
    }
    let v = json(&["ramsay", "--p", "2", "--f", "@counterexample", "--B", "1", "--n", "1..4"]);
    assert_eq!(v["c_f_truncated"]["num"], "0");
    assert!(v["empirical"].as_array().unwrap().iter().all(|e| e["squarefree"] == 0));
    let out = run(&["ramsay", "--p", "3", "--f", "x^2 - t", "--max-prime-degree", "2", "--n", "2..6", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "kind,label,rho,num,den,value");
    assert_eq!(text.lines().filter(|l| l.starts_with("density,")).count(), 5);
}

#[test]
fn counterexample_family() {
    let v = json(&["counterexample", "--p", "2", "--max-n", "4"]);
    assert_eq!(v["checked"], 30);
    assert_eq!(v["passed"], true);
    assert_eq!(v["residue_roots"], v["residue_count"]);
    let v = json(&["counterexample", "--p", "3", "--max-n", "2"]);
    assert_eq!(v["deg_x"], 9);
    assert_eq!(v["passed"], true);
}

#[test]
fn output_file_is_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let p = path.to_str().unwrap();
    let ok = run(&["density", "--p", "3", "--f", "x", "--n", "2", "--format", "csv", "--output", p]);
    assert!(ok.status.success());
    assert!(ok.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    let bad = run(&["density", "--p", "3", "--f", "x", "--n", "14", "--output", p]);
    assert_eq!(bad.status.code(), Some(4));
    assert_eq!(std::fs::read(&path).unwrap(), first);
    let missing = dir.path().join("never.json");
    run(&["density", "--p", "2", "--f", "t^2*x", "--n", "3", "--output", missing.to_str().unwrap()]);
    assert!(!missing.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn extension_field() {
    let v = json(&["density", "--p", "2", "--k", "2", "--f", "x + u*t", "--n", "2"]);
    assert_eq!(v["config"]["q"], 4);
    assert_eq!((v["reports"][0]["density_num"].as_u64(), v["reports"][0]["density_den"].as_u64()), (Some(3), Some(4)));
}
