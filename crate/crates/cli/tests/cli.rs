use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msegcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (serde_json::from_slice(&o.stdout).expect("valid JSON"), o.status.code().unwrap())
}

#[test]
fn solve_single_constituent() {
    let o = run(&["--e", "3", "solve", "Z[1,3] x L[0,1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constituents: Z[0,0; 1,1; 1,3]"));
}

#[test]
fn json_envelope() {
    let (v, code) = json(&["--e", "3", "semisimplify", "nu^-1 x 1_1 x nu^1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "msegcalc/1");
    assert_eq!(v["command"], "semisimplify");
    assert_eq!(v["context"]["e"], "3");
    assert_eq!(v["input"], "nu^-1 x 1_1 x nu^1");
}

#[test]
fn classify_reports_dimension() {
    let (v, code) = json(&["--ell", "5", "--e", "1", "classify", "St_2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "distinguished");
    assert_eq!(v["result"]["dimension"], 2);
}

#[test]
fn parse_errors_exit_one() {
    let o = run(&["classify", "Z[1,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 5"));
    let (v, code) = json(&["dual", "Z[1,3] x foo"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["position"], 9);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["jacquet", "1_2"]).status.code(), Some(1));
    assert_eq!(run(&["--e", "1", "classify", "1_2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn unknown_exits_two() {
    let o = run(&["--ell", "5", "--e", "1", "classify", "St_3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "three-characters"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("PASS"));
    let failing = run(&["verify", "solver-trace"]);
    assert_eq!(failing.status.code(), Some(3));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(1));
}

#[test]
fn other_subcommands() {
    let j = run(&["--e", "2", "jacquet", "--beta", "1,1", "nu^1/2 x 1_1"]);
    assert_eq!(stdout(&j).trim(), "1_1 (x) nu^1/2 + nu^1/2 (x) 1_1");
    let d = run(&["dual", "Lambda_4.nu^1"]);
    assert_eq!(stdout(&d).trim(), "Lambda_4^*.nu^-1");
    let i = run(&["--e", "3", "irreducible", "Z[1,3] x 1_1"]);
    assert_eq!(stdout(&i).trim(), "reducible");
    let k = run(&["--e", "3", "derive", "--k", "2", "Pi_4"]);
    assert_eq!(k.status.code(), Some(0));
    assert!(stdout(&k).contains("1_2"));
    let s = run(&["--e", "3", "structure", "Z[0,1] x 1_1"]);
    assert!(stdout(&s).contains("length"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "--trace", "--e", "3", "solve", "Z[1,3] x L[0,1]"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
