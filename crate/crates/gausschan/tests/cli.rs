//! End-to-end tests of the `gausschan` binary: exit-code contract,
//! byte-determinism, and spot-checked numerics.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gausschan"));
    c.env("GAUSSCHAN_THREADS", "2");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn gausschan")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gausschan-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn usage_errors_exit_2() {
    // missing required flags
    let out = run(&["capacity", "--channel", "lossy"]);
    assert_eq!(out.status.code(), Some(2));
    // out-of-range flag, message names the violated range
    let out = run(&["capacity", "--channel", "lossy", "--eta", "1.5", "--photons", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(msg.contains("[0, 1]"), "{msg}");
    // zero-step sweep
    let out = run(&[
        "capacity", "--channel", "lossy", "--photons", "1", "--sweep", "eta:0:1:0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_3() {
    let bad = tmp_file("bad.txt", "n=1\n1.0 x\n0.0 1.0\n");
    let out = run(&["eof", "--gamma", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(msg.contains("line 2"), "{msg}");

    // parses but fails covariance validation (below vacuum noise)
    let invalid = tmp_file("below-vacuum.txt", "n=1\n0.5 0.0\n0.0 0.5\n");
    let out = run(&["eof", "--gamma", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // missing file
    let out = run(&["eof", "--gamma", "/nonexistent/gamma.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn capacity_table_values_and_determinism() {
    let args = [
        "capacity", "--channel", "thermal", "--eta", "0.8", "--c", "1.5",
        "--photons", "2", "--sweep", "photons:0.5:2:4",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout, "byte-determinism violated");
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "kind,eta,c,N,value_bits,reason");
    // 4 grid points x 5 kinds
    assert_eq!(text.lines().count(), 1 + 20);
    // every classical row is finite and non-empty
    for line in text.lines().skip(1).filter(|l| l.starts_with("classical,")) {
        let value = line.split(',').nth(4).unwrap();
        assert!(value.parse::<f64>().unwrap().is_finite(), "{line}");
    }
}

#[test]
fn fiber_matches_closed_form() {
    // length = absorption length: eta = e^{-1}
    let out = run(&[
        "fiber", "--length", "10", "--absorption-length", "10", "--photons", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let eta = (-1.0f64).exp();
    let classical = text
        .lines()
        .find(|l| l.starts_with("classical,"))
        .expect("classical row");
    let fields: Vec<&str> = classical.split(',').collect();
    assert_eq!(fields[1], gausschan::io::format_sig(eta));
    let expected = gausschan::states::g_function(eta * 1.0).unwrap();
    let got: f64 = fields[4].parse().unwrap();
    assert!((got - expected).abs() < 1e-9, "got {got}, expected {expected}");
}

#[test]
fn eof_subcommand_emits_result_json() {
    // pure TMS with cosh 2r = 3 under default 1|1 partition: 2 bits
    let a = 3.0;
    let b = 8.0f64.sqrt();
    let gamma = format!(
        "n=2\n{a} 0 {b} 0\n0 {a} 0 {nb}\n{b} 0 {a} 0\n0 {nb} 0 {a}\n",
        nb = -b
    );
    let file = tmp_file("tms.txt", &gamma);
    let out = run(&[
        "eof", "--gamma", file.to_str().unwrap(), "--restarts", "2", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let value = parsed["value_bits"].as_f64().unwrap();
    assert!((value - 2.0).abs() < 1e-3, "value_bits = {value}");
    assert!(parsed["feasibility_gap"].as_f64().unwrap() >= -1e-7);
    assert_eq!(parsed["restarts_used"].as_u64().unwrap(), 2);
    assert_eq!(parsed["gamma_opt"].as_array().unwrap().len(), 16);
}

#[test]
fn scan_writes_csv_and_summary() {
    let out_path = std::env::temp_dir().join(format!("gausschan-scan-{}.csv", std::process::id()));
    let args = [
        "scan", "--kind", "moe", "--channel", "lossy", "--eta", "0.6",
        "--samples", "6", "--seed", "3", "--out",
    ];
    let a = bin().args(args).arg(&out_path).output().unwrap();
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let b = bin().args(args).arg(&out_path).output().unwrap();
    let csv2 = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(csv, csv2, "scan CSV must be byte-deterministic");
    assert!(csv.starts_with("seed,kind,residual_bits,restarts,flag,params\n"), "{csv}");
    assert_eq!(csv.lines().count(), 2);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let min = summary["min_residual"].as_f64().unwrap();
    assert!(min.abs() < 2e-3, "moe residual {min}");
}

#[test]
fn verify_rejects_bad_cutoff() {
    let out = run(&["verify", "--suite", "entropy", "--cutoff", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_entropy_suite_passes() {
    let out = run(&["verify", "--suite", "entropy", "--cutoff", "80"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}
