use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_latshift"))
        .args(args)
        .env_remove("LATSHIFT_THREADS")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).expect("JSON output"))
}

#[test]
fn analyze_triangle_and_square() {
    let (code, v) = run_json(&["analyze", &data("delta.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["area"], "1/2");
    assert_eq!(v["variance"], "1/4");
    assert_eq!(v["support_bound"], 2);
    let (_, v) = run_json(&["analyze", &data("square.json")]);
    assert_eq!(v["variance"], "0");
}

#[test]
fn malformed_input_reports_line() {
    let (code, v) = run_json(&["analyze", &data("malformed.txt")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "Parse");
    assert_eq!(v["error"]["line"], 2);
    let (code, v) = run_json(&["analyze", &data("missing.txt")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "Io");
}

#[test]
fn distribution_methods_agree_on_triangle() {
    let (code, exact) = run(&["distribution", &data("delta.txt"), "--method", "exact"]);
    assert_eq!(code, 0);
    let (_, triangle) = run(&["distribution", &data("delta.txt"), "--method", "triangle"]);
    assert_eq!(exact, triangle);
    let v: Value = serde_json::from_str(&exact).unwrap();
    assert_eq!(v["support"], serde_json::json!([[0, "1/2"], [1, "1/2"]]));
    let (code, v) = run_json(&["distribution", &data("square.json"), "--method", "triangle"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "MethodMismatch");
}

#[test]
fn distribution_csv_and_montecarlo() {
    let (_, csv) = run(&["--format", "csv", "distribution", &data("pentagon.txt")]);
    assert!(csv.starts_with("value,probability\n"));
    let args = ["distribution", &data("delta.txt"), "--method", "montecarlo", "--samples", "20000", "--seed", "3"];
    let (code, v) = run_json(&args);
    assert_eq!(code, 0);
    assert_eq!(v["comparison"]["pass"], true);
    let (_, again) = run_json(&args);
    assert_eq!(v, again);
}

#[test]
fn covariance_methods() {
    let (d, n) = (data("delta.txt"), data("neg_delta.txt"));
    let (_, v) = run_json(&["covariance", &d, &d, "--method", "theorem"]);
    assert_eq!(v["value"], "1/4");
    let (_, v) = run_json(&["covariance", &d, &d, "--method", "covariogram"]);
    assert_eq!(v["value"], "1/4");
    let (_, v) = run_json(&["covariance", &d, &n, "--method", "covariogram"]);
    assert_eq!(v["value"], "-1/4");
    let (_, v) = run_json(&["covariance", &d, &d, "--method", "series", "--radius", "100"]);
    assert!((v["value"].as_f64().unwrap() - 0.25).abs() <= 0.002);
}

#[test]
fn simulate_spectral_covariogram() {
    let (code, v) = run_json(&["simulate", &data("square.json"), "--samples", "1000", "--shards", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["tallies"], serde_json::json!([[1, 1000]]));
    let (_, csv) = run(&["--format", "csv", "spectral", &data("delta.txt"), "--radii", "10,100"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "R,partial_sum,error");
    assert_eq!(lines.len(), 3);
    let (_, v) = run_json(&["spectral", &data("delta.txt"), "--max-freq", "1"]);
    assert!(v["coefficients"].as_array().unwrap().iter().any(|c| c["m"] == serde_json::json!([1, 0]) && c["value"] == "1"));
    let (_, v) = run_json(&["covariogram", &data("delta.txt"), &data("delta.txt")]);
    assert_eq!(v["lattice_sum"], "1/2");
    assert_eq!(v["translates"], serde_json::json!([[0, 0, "1/2"]]));
}

#[test]
fn selfcheck_passes_and_catches_sabotage() {
    let (code, v) = run_json(&["selfcheck", "--corpus-size", "25", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let (code, v) = run_json(&["selfcheck", "--corpus-size", "2", "--seed", "1", "--sabotage"]);
    assert_ne!(code, 0);
    assert_eq!(v["pass"], false);
    let (code, v) = run_json(&["selfcheck", "--corpus-size", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["selfcheck", "--corpus-size", "5", "--seed", "9"];
    let (_, a) = run(&args);
    let out = Command::new(env!("CARGO_BIN_EXE_latshift"))
        .args(args)
        .env("LATSHIFT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a, String::from_utf8(out.stdout).unwrap());
}
