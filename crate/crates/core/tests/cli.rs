mod common;

use fuzzy_semiprime::cli::run_cli;
use fuzzy_semiprime::dsl;

use common::*;

fn stdout(args: &[&str]) -> (String, i32) {
    let o = fsemi(args);
    (String::from_utf8(o.stdout).unwrap(), o.status.code().unwrap())
}

#[test]
fn golden_outputs_match() {
    for (args, golden, code) in GOLDEN {
        let expected = read_data(&format!("golden/{golden}"));
        let (got, exit) = stdout(args);
        assert_eq!(got, expected, "{golden}");
        assert_eq!(exit, *code, "{golden}");
    }
}

#[test]
fn dsl_files_round_trip() {
    for name in DSL_FILES {
        let doc = dsl::parse(&read_data(name)).unwrap();
        assert_eq!(dsl::parse(&dsl::print(&doc)).unwrap(), doc, "{name}");
    }
}

#[test]
fn validate_summaries() {
    let (out, code) = stdout(&["validate", "converse.fsg"]);
    assert_eq!(code, 0);
    assert!(out.contains("C: ok (2 elements, ordered semigroup, greatest element b)"), "{out}");
    let (out, code) = stdout(&["validate", "invalid_compat.fsg"]);
    assert_eq!(code, 1);
    assert!(out.contains("right-compatibility fails at (a, b, a)"), "{out}");
}

#[test]
fn pointwise_check_on_step_window_reports_two() {
    let (out, code) = stdout(&["check", "theorem4_window.fsg", "--fuzzy", "f", "--def1"]);
    assert_eq!(code, 1);
    assert_eq!(out.trim(), "def1: fails at x = 2: f(2) = 0 < f(4) = 1");
}

#[test]
fn separating_example_passes_lattice_check() {
    let (_, code) = stdout(&["check", "converse.fsg", "--fuzzy", "f", "--def2"]);
    assert_eq!(code, 0);
    // same table, discrete order: the lattice notion fails too
    let (out, code) = stdout(&["check", "converse.fsg", "--fuzzy", "g", "--def2"]);
    assert_eq!(code, 1);
    assert!(out.contains("a"), "{out}");
}

#[test]
fn zero_composes_to_zero() {
    let (out, code) = stdout(&["compose", "chain.fsg", "--left", "z", "--right", "f"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "z∘f = { a: 0, b: 0 }");
}

#[test]
fn crisp_check_exit_codes() {
    assert_eq!(stdout(&["crisp", "chain.fsg", "--set", "U"]).1, 0);
    // b*b = a lies in T but b does not
    assert_eq!(stdout(&["crisp", "chain.fsg", "--set", "T"]).1, 1);
    assert_eq!(stdout(&["crisp", "converse.fsg", "--set", "T"]).1, 1);
    assert_eq!(stdout(&["crisp", "converse.fsg", "--set", "U"]).1, 2);
}

#[test]
fn paper_examples_exit_zero() {
    assert_eq!(stdout(&["paper", "--theorem4", "--window", "50"]).1, 0);
    assert_eq!(stdout(&["paper", "--remark6"]).1, 0);
    assert_eq!(stdout(&["paper", "--theorem4", "--window", "3"]).1, 2);
}

#[test]
fn usage_errors_go_to_stderr_with_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["paper"],
        &["check", "chain.fsg"],
        &["search", "--max-n", "9", "--grid", "0,1", "--goal", "def2-not-def1"],
        &["search", "--max-n", "2", "--grid", "0,1", "--goal", "nope"],
        &["search", "--max-n", "2", "--grid", "1/2,1", "--goal", "def2-not-def1"],
        &["check", "chain.fsg", "--fuzzy", "f", "--oracle", "0,1"],
        &["validate", "bad_grade.fsg"],
    ] {
        let o = fsemi(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn dsl_errors_carry_positions() {
    let o = fsemi(&["validate", "bad_grade.fsg"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad_grade.fsg:2:19"), "{err}");
}

#[test]
fn help_exits_zero() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(run_cli(["fsemi", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("search"));
}

#[test]
fn budget_truncation_is_reported() {
    let (out, code) = stdout(&[
        "search", "--max-n", "3", "--grid", "0,1", "--goal", "def2-not-def1", "--budget", "10", "--json",
    ]);
    assert_eq!(code, 0);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["results"]["exhausted"], false);
    assert_eq!(last["results"]["examined"], "10");
}
