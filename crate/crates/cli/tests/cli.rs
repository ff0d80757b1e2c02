use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primebound")).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_primebound"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_k4() {
    let v = json(&["analyze", "C~", "--format", "json"]);
    assert_eq!(v["prime_bound"]["value"], 3);
    assert_eq!(v["prime_bound"]["case"], "PowerOfTwoIsolated");
    assert_eq!(v["omega_m"], 4);
    assert_eq!(v["lower_bound_isolated"], 3);
}

#[test]
fn analyze_p4_and_empty4() {
    let v = json(&["analyze", "Ch", "--format", "json"]);
    assert_eq!((v["prime"].as_bool(), v["prime_bound"]["value"].as_u64()), (Some(true), Some(0)));
    let v = json(&["analyze", "C?", "--format", "json"]);
    assert_eq!((v["prime_bound"]["value"].as_u64(), v["iota"].as_u64()), (Some(3), Some(4)));
}

#[test]
fn analyze_human_output() {
    let out = run(&["analyze", "C~"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p(G)         3 (PowerOfTwoIsolated)"), "{text}");
    assert!(text.contains("omega_M      4"));
}

#[test]
fn json_output_is_stable() {
    assert_eq!(run(&["analyze", "DQc", "--format", "json"]).stdout, run(&["analyze", "DQc", "--format", "json"]).stdout);
}

#[test]
fn parse_errors_exit_nonzero_with_location() {
    let out = run(&["analyze", "C@@"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 2"));
    let out = run_with_stdin(&["analyze"], "n 3\n0 1\n1 7\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn stdin_autodetects_format() {
    let out = run_with_stdin(&["analyze", "--format", "json"], "n 4\n0 1\n2 3\n");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["graph6"], "C`");
    let out = run_with_stdin(&["analyze", "--format", "json"], "C~\n");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["edges"], 6);
}

#[test]
fn extend_modes() {
    let v = json(&["extend", "B?", "--format", "json"]);
    assert_eq!((v["added_count"].as_u64(), v["verified_prime"].as_bool()), (Some(2), Some(true)));
    let v = json(&["extend", "C~", "--mode", "stable-q", "--format", "json"]);
    assert_eq!((v["added_count"].as_u64(), v["stable_added_set"].as_bool()), (Some(3), Some(true)));
    let v = json(&["extend", "Ch", "--format", "json"]);
    assert_eq!(v["added_count"], 0);
}

#[test]
fn verify_round_trip() {
    let dir = std::env::temp_dir().join(format!("primebound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("cert.json");
    let out = run(&["extend", "C`", "--format", "json", "--out", cert.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let out = run(&["verify", cert.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));

    let mut forged: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    forged["host"] = Value::from("Dhc");
    let out = run_with_stdin(&["verify"], &forged.to_string());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("INVALID"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mdtree_outputs() {
    let v = json(&["mdtree", "C`", "--format", "json"]);
    assert_eq!(v["label"], "empty");
    assert_eq!(v["children"].as_array().unwrap().len(), 2);
    let dot = stdout(&run(&["mdtree", "Ch", "--format", "dot"]));
    assert!(dot.starts_with("graph mdtree {") && dot.contains("prime {0,1,2,3}"));
    assert_eq!(run(&["analyze", "Ch", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn oracle_empty4() {
    let v = json(&["oracle", "C?", "--p-cap", "3", "--format", "json"]);
    assert_eq!(v["p_value"], 3);
    assert_eq!(v["witness"]["added_count"], 3);
    let v = json(&["oracle", "C?", "--p-cap", "2", "--format", "json"]);
    assert_eq!((v["p_value"].is_null(), v["exceeds_cap"].as_bool()), (true, Some(true)));
    let out = run(&["oracle", "G?????", "--p-cap", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("27"));
}

#[test]
fn sweeps() {
    let out = run(&["sweep", "--order", "4", "--check", "formula-vs-oracle"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "64 graphs, 0 failures\n");
    let out = run(&["sweep", "--order", "5", "--check", "tree-vs-bruteforce", "--jobs", "2", "--format", "json"]);
    let last: Value = serde_json::from_str(stdout(&out).lines().last().unwrap()).unwrap();
    assert_eq!((last["graphs"].as_u64(), last["failures"].as_u64()), (Some(1024), Some(0)));
    assert_eq!(run(&["sweep", "--order", "7", "--check", "formula-vs-oracle"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--order", "3", "--check", "bogus"]).status.code(), Some(2));
}
