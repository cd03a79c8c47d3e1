//! End-to-end checks of the command surface: exit codes, determinism,
//! and the JSON report shape.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superatomic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn queries_and_exit_codes() {
    let ok = run(&["ord", "add", "w^2+w", "w*2+3"]);
    assert!(ok.status.success());
    assert_eq!(stdout(&ok).trim(), "w^2 + w*3 + 3");

    let class = run(&["clopen", "class", "{(0,w^2*3+4]}", "--delta", "w^3"]);
    assert!(class.status.success());
    assert_eq!(stdout(&class).trim(), "(2,3)");

    let bad = run(&["ord", "add", "w + q", "1"]);
    assert_eq!(bad.status.code(), Some(2));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));

    let sub = run(&["ord", "sub", "w^2", "w"]);
    assert_eq!(sub.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_machine_readable() {
    let args = [
        "verify", "lemma24", "--alpha", "2", "--seed", "7", "--instances", "3", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).expect("valid json");
    assert_eq!(v["command"], "verify lemma24");
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["degree"], 1);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string());
        assert!(c["instances"].is_number());
        assert!(c["failures"].is_number());
        assert!(c["firstCounterexample"].is_null() || c["firstCounterexample"].is_string());
    }
}

#[test]
fn homeo_spec_files() {
    let dir = std::env::temp_dir().join("superatomic-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("swap.homeo");
    std::fs::write(&path, "(chart (piece (0, 1] (1, 2]) (piece (1, 2] (0, 1]))").unwrap();
    let p = path.to_str().unwrap();

    let out = run(&["homeo", "eval", p, "1", "--alpha", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");

    let pi = run(&["homeo", "pi", p, "1", "--alpha", "1"]);
    assert_eq!(stdout(&pi).trim(), "1");

    let check = run(&["homeo", "check", p, "--alpha", "1", "--samples", "50"]);
    assert!(check.status.success());

    let missing = run(&["homeo", "eval", "/nonexistent.homeo", "1"]);
    assert_eq!(missing.status.code(), Some(2));
}
