use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dequantlab")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_fft3() {
    let out = run(&["analyze", &fixture("fft3.qc")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dil_upper_bound_nats"].as_f64().unwrap(), 19.40812106);
    assert_eq!(v["c_i"].as_f64().unwrap(), 7.0);
    assert_eq!(v["circuit"], "fft3");
    assert_eq!(v["closed_form"], "[q_I+(N+1)(2^N-1)]ln2");
}

#[test]
fn analyze_fft3_bits() {
    let v = json(&run(&["analyze", &fixture("fft3.qc"), "--bits"]));
    assert_eq!(v["dil_upper_bound_nats"].as_f64().unwrap(), 28.0);
    assert_eq!(v["units"], "bits");
}

#[test]
fn analyze_exact() {
    let v = json(&run(&["analyze", &fixture("fft3.qc"), "--exact", "--state", "3"]));
    let exact = v["dil_exact_nats"].as_f64().unwrap();
    assert!(exact > 0.0 && exact <= v["dil_upper_bound_nats"].as_f64().unwrap());
}

#[test]
fn output_is_deterministic() {
    let a = run(&["analyze", &fixture("fft3.qc"), "--exact"]);
    let b = run(&["analyze", &fixture("fft3.qc"), "--exact"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_error_exit_code() {
    let out = run(&["analyze", &fixture("bad.qc")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["builtin", "fft", "0"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "/nonexistent.qc"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &fixture("fft3.qc"), "--state", "1"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &fixture("fft3.qc"), "--exact", "--state", "8"]).status.code(), Some(1));
    assert_eq!(run(&["entropy", "--phi", "1.5"]).status.code(), Some(1));
}

#[test]
fn builtin_reports() {
    let v = json(&run(&["builtin", "fft", "5"]));
    assert_eq!(v["c_i"].as_f64().unwrap(), 31.0);
    let v = json(&run(&["builtin", "grover", "4"]));
    assert!((v["dil_upper_bound_nats"].as_f64().unwrap() - 54.44).abs() < 5e-3);
    assert!(v["grover"].is_object());
}

#[test]
fn builtin_emit_round_trips() {
    let out = run(&["builtin", "fft", "4", "--emit"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (circuit, report) = text.split_at(text.find('{').unwrap());
    assert!(circuit.starts_with("reg 4\n"));
    let dir = std::env::temp_dir().join(format!("dequantlab-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fftq-4.qc");
    std::fs::write(&path, circuit).unwrap();
    let again = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), report);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exact_refuses_large_registers() {
    let dir = std::env::temp_dir().join(format!("dequantlab-big-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("big.qc");
    std::fs::write(&path, "reg 7\nw 0\n").unwrap();
    assert_eq!(run(&["analyze", path.to_str().unwrap(), "--exact"]).status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn dim_cap_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_dequantlab"))
        .args(["analyze", &fixture("fft3.qc"), "--exact"])
        .env("DEQUANTLAB_DIM_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "conjunction", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("200/200"));
    assert_eq!(run(&["verify", "--suite", "limit"]).status.code(), Some(0));
}

#[test]
fn verify_power_reports_counterexample() {
    let out = run(&["verify", "--suite", "power", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["suite"], "power");
    assert!(text.contains("[pass] 100/100: power closed form equals (PQ)^n, n = 4"));
}

#[test]
fn entropy_command() {
    let v = json(&run(&["entropy", "--phi", "0.5"]));
    assert_eq!(v["entropy_bits"].as_f64().unwrap(), 1.0);
    let dir = std::env::temp_dir().join(format!("dequantlab-rho-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rho.json");
    std::fs::write(&path, "[[0.5, [0, 0]], [0, 0.5]]").unwrap();
    let v = json(&run(&["entropy", "--rho", path.to_str().unwrap()]));
    assert!((v["entropy_nats"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-12);
    std::fs::write(&path, "[[0.5, 0], [0, 0.4]]").unwrap();
    assert_eq!(run(&["entropy", "--rho", path.to_str().unwrap()]).status.code(), Some(3));
    std::fs::remove_dir_all(dir).unwrap();
}
