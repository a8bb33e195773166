use std::process::{Command, Output};

use serde_json::Value;

fn gconverge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gconverge"))
        .args(args)
        .env_remove("GCONVERGE_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn single_shot_verbs() {
    let o = gconverge(&["hull", "--method", "cesaro", "{0} u {1}"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[0,1]");

    let o = gconverge(&["kernel", "-m", "lim", "[0,1] u (2,3]", "--json"]);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["text"], "(0,1) u (2,3)");
    assert_eq!(v["result"].as_array().unwrap().len(), 2);

    let o = gconverge(&["limit", "-m", "stat", "spike(base=0; spike=1; where=squares)"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn reports_and_exit_codes() {
    let o = gconverge(&["scenario", "ex33", "--depth", "8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v.get("wall_time").is_none());

    let o = gconverge(&["scenario", "ex33", "--depth", "8"]);
    assert!(stdout(&o).lines().last().unwrap().starts_with("wall time"));

    let o = gconverge(&["suite", "sec5-counterexamples", "-m", "matrix:banded(offset=0;coef=2)", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(!v["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false && c["witnesses"].is_null()));
}

#[test]
fn usage_and_precondition_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["hull", "--bogus", "[0,1]"],
        &["suite", "nope"],
        &["scenario", "ex33", "--depth", "1"],
        &["hull", "-m", "matrix:cesaro", "[0,1]"],
        &["suite", "sec5-counterexamples", "-m", "lim"],
    ] {
        let o = gconverge(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }

    let o = gconverge(&["hull", "-m", "lim", "[0,1", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"], "parse");
    assert!(v["position"].is_u64());

    let o = gconverge(&["hull", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Usage"));
}

#[test]
fn seeded_suites_are_byte_identical() {
    for args in [
        &["suite", "thm3.1", "--trials", "50", "--seed", "11", "--json"][..],
        &["suite", "sec5", "--trials", "10", "--seed", "4", "--json"],
        &["suite", "oracle-hull", "--trials", "3", "--seed", "9", "--json"],
    ] {
        let (a, b) = (gconverge(args), gconverge(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = gconverge(&["suite", "thm3.1", "--trials", "20", "--seed", "1", "--json"]);
    let b = gconverge(&["suite", "thm3.1", "--trials", "20", "--seed", "2", "--json"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn tolerance_from_environment() {
    let ok = Command::new(env!("CARGO_BIN_EXE_gconverge"))
        .args(["limit", "-m", "matrix:cesaro", "const(tail=1)"])
        .env("GCONVERGE_TOLERANCE", "1e-9")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_gconverge"))
        .args(["limit", "-m", "matrix:cesaro", "const(tail=1)"])
        .env("GCONVERGE_TOLERANCE", "-3")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
