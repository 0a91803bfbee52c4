//! End-to-end tests against the built binary: output contracts, JSON/text
//! agreement, determinism, and the exit-code table.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn gamma_fifty_digits() {
    let o = run(&["gamma", "-d", "50"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(
        out.contains("0.57721566490153286060651209008240243104215933593992"),
        "unexpected gamma output:\n{out}"
    );
    assert!(out.contains("x = 15"));
}

#[test]
fn gamma_json_agrees_with_text() {
    let j = run(&["gamma", "-d", "30", "--json"]);
    assert_eq!(code(&j), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["command"], "gamma");
    let value = doc["rows"][0]["value"].as_str().unwrap();
    assert_eq!(value.len(), 32);

    let t = run(&["gamma", "-d", "30"]);
    assert_eq!(code(&t), 0);
    assert!(stdout(&t).contains(value));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["table1", "--json"][..],
        &["coeffs", "--which", "ratio", "--max", "5"][..],
        &["bound-check", "--from", "10", "--to", "12"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
    }

    // gamma reports a wall-clock time; everything before it must agree
    let trim = |o: &Output| {
        let s = stdout(o);
        let cut = s.find(", wall =").expect("wall field present");
        s[..cut].to_string()
    };
    let a = run(&["gamma", "-d", "40"]);
    let b = run(&["gamma", "-d", "40"]);
    assert_eq!(code(&a), 0);
    assert_eq!(trim(&a), trim(&b), "nondeterministic gamma output");
}

#[test]
fn table1_formats() {
    let csv = run(&["table1", "--csv"]);
    assert_eq!(code(&csv), 0);
    let body = stdout(&csv);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("M,x=50,x=100,x=150"));
    assert_eq!(body.lines().count(), 6);
    assert!(body.contains("3,2.140e-6,2.714e-7,8.082e-8"));

    let j = run(&["table1", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(doc["rows"][0]["x50"], "7.100e-3");
    assert_eq!(doc["rows"][4]["x150"], "1.510e-11");
}

#[test]
fn coeffs_exact_output() {
    let o = run(&["coeffs", "--which", "b", "--max", "5"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("55949/30240"));
    assert!(out.contains("137885143760267/7067908108800"));
}

#[test]
fn remainder_matches_table_cell() {
    let o = run(&["remainder", "--x", "100", "--M", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relative deviation = 2.714e-7"));
}

#[test]
fn bound_check_passes_in_range() {
    let o = run(&["bound-check", "--from", "10", "--to", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("all 3 rows within bound"));
}

#[test]
fn exit_code_table() {
    // 3: supported-range violations
    assert_eq!(code(&run(&["coeffs", "--which", "b", "--max", "6"])), 3);
    assert_eq!(code(&run(&["bound-check", "--from", "3", "--to", "10"])), 3);
    assert_eq!(code(&run(&["gamma", "-d", "0"])), 3);
    // 2: certification failure (x forced far too small for 50 digits)
    assert_eq!(code(&run(&["gamma", "-d", "50", "--x", "4"])), 2);
    // 64: usage errors caught by the parser
    assert_eq!(code(&run(&["remainder", "--x", "50"])), 64);
    assert_eq!(code(&run(&["coeffs", "--which", "nope", "--max", "3"])), 64);
    assert_eq!(code(&run(&["table1", "--json", "--csv"])), 64);
    // 0: help and version
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}
