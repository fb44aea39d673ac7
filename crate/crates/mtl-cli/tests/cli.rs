//! End-to-end checks of the `mtl` binary: documented window rewrites, the
//! exit-status contract, inline-versus-file argument handling, and the
//! printer/parser round trip through the `parse` verb.

use std::process::{Command, Output};

fn mtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtl"))
        .args(args)
        .env_remove("MTL_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

const DENSE: &str = "alphabet p q\nlefttail {p}\nseg (0,1] {p q}\nrighttail {q}\n";

#[test]
fn window_rewrites_match_the_documented_examples() {
    let o = mtl(&["adapt-r", "--delta", "3/10", "G[0,2](p)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "G[0,6](p)\n");

    let o = mtl(&["adapt-z", "--delta", "1", "q -> G[2,5](p)"]);
    assert_eq!(code(&o), 0);
    let got = mtl::syntax::parse_formula(stdout(&o).trim()).unwrap();
    let want = mtl::syntax::parse_formula("q -> G[3,4](p)").unwrap();
    assert_eq!(got, want);
}

#[test]
fn parse_is_idempotent_on_its_own_output() {
    let first = mtl(&["parse", "UM[0,2](p | !q, F(0,1)(q))"]);
    assert_eq!(code(&first), 0);
    let second = mtl(&["parse", stdout(&first).trim()]);
    assert_eq!(code(&second), 0);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn rejected_periods_exit_with_the_unknown_status() {
    let o = mtl(&["under", "--delta", "1/3", "G[0,1/2](p)"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not admitted"), "stderr: {}", stderr(&o));
    assert_eq!(stdout(&o), "");
}

#[test]
fn malformed_input_exits_65_with_a_position() {
    let o = mtl(&["parse", "G[0,2(p)"]);
    assert_eq!(code(&o), 65);
    assert!(stderr(&o).contains("line 1, col"), "stderr: {}", stderr(&o));
}

#[test]
fn usage_errors_exit_64() {
    let o = mtl(&["adapt-r", "--delta", "0", "p"]);
    assert_eq!(code(&o), 64);

    let o = mtl(&["adapt-r", "--delta", "0.5", "p"]);
    assert_eq!(code(&o), 64, "decimal floats are not rationals");

    let o = mtl(&["suite", "no-such-suite"]);
    assert_eq!(code(&o), 64);
    assert!(stderr(&o).contains("unknown suite"), "stderr: {}", stderr(&o));

    let o = mtl(&["frobnicate"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn verify_maps_verdicts_to_exit_codes() {
    let valid = "sys: G[0,1](p | !p)\nprop: p | !p\n";
    let o = mtl(&["verify", "--delta", "1", valid]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("verified"), "stdout: {}", stdout(&o));

    let refuted = "sys: G[0,1](p)\nprop: G[0,1](!p)\n";
    let o = mtl(&["verify", "--delta", "1", "--format", "full", refuted]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("refuted"), "stdout: {}", out);
    assert!(out.contains("counterexample"), "stdout: {}", out);
}

#[test]
fn eval_and_satset_accept_inline_behaviors() {
    let o = mtl(&["eval", "--at", "1/2", "p & q", DENSE]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "true\n");

    let o = mtl(&["satset", "p & !q", DENSE]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "(-inf,0]\n");
}

#[test]
fn sampling_produces_a_reparsable_discrete_behavior() {
    let o = mtl(&["sample", "--delta", "1/2", "--z", "0", DENSE]);
    assert_eq!(code(&o), 0);
    let sampled = stdout(&o);
    mtl::syntax::parse_discrete_behavior(&sampled).unwrap();

    let o = mtl(&["eval", "--at", "1/2", "q", &sampled]);
    assert_eq!(code(&o), 64, "discrete behaviors take integer steps");
}

#[test]
fn suite_seed_defaults_to_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mtl"))
        .args(["suite", "complement", "--instances", "60"])
        .env("MTL_SEED", "7")
        .output()
        .expect("binary runs");
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("seed 7"), "stdout: {}", out);
    assert!(out.contains("pass"), "stdout: {}", out);

    let o = mtl(&["suite", "complement", "--instances", "60", "--seed", "9"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("seed 9"), "stdout: {}", stdout(&o));
}
