//! End-to-end runs of the `hohorn` binary on the corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn hohorn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hohorn"))
        .args(args)
        .env_remove("HOHORN_SOLVER")
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    corpus(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_iter_is_sat() {
    let o = hohorn(&["solve", &path("iter.hochc"), "--solver", "z3 {file}"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("sat"));
}

#[test]
fn solve_leq_holds_is_unsat() {
    let o = hohorn(&["solve", &path("leq_holds.hochc"), "--solver", "z3 {file}"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solver_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hohorn"))
        .args(["solve", &path("trivial.hochc")])
        .env("HOHORN_SOLVER", "z3 {file}")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sat"));
}

#[test]
fn solver_timeout_is_indeterminate() {
    let o = hohorn(&["solve", &path("iter.hochc"), "--solver", "sh -c 'sleep 5' {file}", "--timeout", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = hohorn(&["solve", "/nonexistent/problem.hochc"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finite_theory_is_refused_by_solve() {
    let o = hohorn(&["solve", &path("d_one.hochc"), "--solver", "z3 {file}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn emit_prints_horn_logic() {
    let o = hohorn(&["emit", &path("iter.hochc")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("(set-logic HORN)"));
    assert!(text.trim_end().ends_with("(check-sat)"));
}

#[test]
fn emit_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("iter.smt2");
    let o = hohorn(&["emit", &path("iter.hochc"), "--emit", &out.display().to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out).unwrap();
    let printed = stdout(&hohorn(&["emit", &path("iter.hochc")]));
    assert_eq!(written.trim_end(), printed.trim_end());
}

#[test]
fn json_report_has_verdict_and_stages() {
    let o = hohorn(&["--json", "solve", &path("trivial.hochc"), "--solver", "z3 {file}"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "sat");
    assert_eq!(v["command"], "solve");
    assert!(v["stages"].as_array().unwrap().iter().any(|s| s["name"] == "infer"));
}

#[test]
fn check_types_accepts_the_symbolic_model() {
    let o = hohorn(&["check-types", &path("iter.hochc"), &path("gamma_i.rty")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("accepted"));
}

#[test]
fn check_types_rejects_a_weak_environment() {
    let o = hohorn(&["check-types", &path("iter.hochc"), &path("gamma_weak.rty")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("goal: rejected"));
}

#[test]
fn oracle_reports_no_least_model() {
    let o = hohorn(&["oracle", &path("d_one.hochc"), "--minimal-models"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("minimal model")).count(), 2);
    assert!(text.contains("no least model"));
}

#[test]
fn oracle_refutes_odd_even_number() {
    let o = hohorn(&["oracle", &path("parity.hochc")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("standard: solvable"));
}

#[test]
fn oracle_refuses_integers() {
    let o = hohorn(&["oracle", &path("iter.hochc")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn elim_removes_guards() {
    let o = hohorn(&["elim", &path("guarded_even.hochc")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('['), "{text}");
    assert!(text.contains("mod 2 = 0 => "), "{text}");
}

#[test]
fn reduce_unfolds_a_given_term() {
    let o = hohorn(&["reduce", &path("iter.hochc"), "--term", "Add 1 2 3", "--fuel", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("3 = 1 + 2"), "{text}");
}

#[test]
fn malformed_problem_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.hochc");
    std::fs::write(&p, "theory zla; env X : int -> o; clauses forall x:int. X (x + 1) => X x; goal").unwrap();
    let o = hohorn(&["emit", &p.display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
}
