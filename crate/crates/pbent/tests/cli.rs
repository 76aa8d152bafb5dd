//! End-to-end tests of the `pbent` binary: source grammar, output formats,
//! exit codes, and run-to-run reproducibility.

use std::process::{Command, Output};

use pbent::{direct_sum_extend, fixture, PAryFunction};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pbent"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout should be JSON")
}

#[test]
fn construct_zero_prints_the_table() {
    let out = run(&["construct", "zero:3,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("3 2"));
    assert_eq!(lines.next(), Some("000000000"));
}

#[test]
fn construct_writes_a_loadable_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.txt");
    let out = run(&["construct", "fixture:example-V", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let back = PAryFunction::from_table_file(&path).unwrap();
    assert_eq!(back, fixture("example-V").unwrap());
}

#[test]
fn spec_source_builds_the_same_table_as_the_fixture() {
    let out = run(&["construct", "spec:3/6/7:98"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), fixture("example-V").unwrap().to_table_string());
}

#[test]
fn bare_names_resolve_as_fixtures() {
    let with_prefix = run(&["construct", "fixture:example-I"]);
    let bare = run(&["construct", "example-I"]);
    assert!(bare.status.success());
    assert_eq!(stdout(&bare), stdout(&with_prefix));
}

#[test]
fn file_source_roundtrips_through_construct() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let f = fixture("quad-regular-3-4").unwrap();
    f.to_table_file(&path).unwrap();
    let source = format!("file:{}", path.display());
    let out = run(&["construct", &source]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), f.to_table_string());
}

#[test]
fn classify_reports_regularity_as_json() {
    let out = run(&["classify", "fixture:example-II"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p"], 5);
    assert_eq!(v["n"], 4);
    assert_eq!(v["bent"], true);
    assert_eq!(v["kind"], "regular");
    assert_eq!(v["zeta"], "+1");
    assert_eq!(v["bent_dual"], true);
    assert_eq!(v["pointwise_dual"], true);

    let out = run(&["classify", "fixture:example-VII"]);
    let v = json(&out);
    assert_eq!(v["kind"], "non-weakly-regular");
    assert_eq!(v["zeta"], serde_json::Value::Null);
    assert_eq!(v["bent_dual"], false);
    assert_eq!(v["pointwise_dual"], true);
}

#[test]
fn normality_exit_codes_encode_the_verdict() {
    let out = run(&["normality", "fixture:example-I", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "normal");
    assert_eq!(v["k"], 2);
    assert!(v["witnesses_total"].as_u64().unwrap() > 0);

    let out = run(&["normality", "fixture:example-I", "--k", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_normal");
    assert_eq!(v["witnesses_total"], 0);
}

#[test]
fn affine_mode_is_selectable() {
    let out = run(&[
        "normality",
        "fixture:quad-wrnr-3-4",
        "--k",
        "2",
        "--mode",
        "affine",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["mode"], "affine");
}

#[test]
fn reports_are_identical_across_worker_counts() {
    let mut outputs = Vec::new();
    for workers in [None, Some("1"), Some("2"), Some("4")] {
        let mut args = vec!["normality", "fixture:example-V", "--k", "2"];
        if let Some(w) = workers {
            args.extend(["--workers", w]);
        }
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(stdout(&out));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn timing_is_recorded_only_on_request() {
    let out = run(&["normality", "zero:3,2", "--k", "1"]);
    assert_eq!(json(&out)["stats"]["elapsed_ms"], serde_json::Value::Null);
    let out = run(&["normality", "zero:3,2", "--k", "1", "--timings"]);
    assert!(json(&out)["stats"]["elapsed_ms"].is_u64());
}

#[test]
fn out_flag_writes_json_and_summarizes_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "normality",
        "fixture:example-I",
        "--k",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verdict=normal"), "summary: {text}");
    assert!(!text.trim_start().starts_with('{'));
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["verdict"], "normal");
}

#[test]
fn text_format_prints_the_summary() {
    let out = run(&[
        "normality", "zero:3,2", "--k", "1", "--format", "text",
    ]);
    let text = stdout(&out);
    assert!(text.contains("p=3 n=2 k=1 mode=constant verdict=normal"));
    assert!(text.contains("levels:"));
}

#[test]
fn bounds_evaluates_the_existence_inequality() {
    let out = run(&["bounds", "3", "6", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["exists_nonnormal"], true);
    assert_eq!(v["exponent"], "-8");

    let out = run(&["bounds", "3", "2", "1"]);
    let v = json(&out);
    assert_eq!(v["exists_nonnormal"], false);
}

#[test]
fn bounds_rejects_k_above_n() {
    let out = run(&["bounds", "3", "4", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn extend_appends_a_hyperbolic_plane() {
    let out = run(&["extend", "zero:3,1"]);
    assert!(out.status.success());
    let zero = PAryFunction::zero(3, 1).unwrap();
    let expected = direct_sum_extend(&zero).unwrap();
    assert_eq!(stdout(&out), expected.to_table_string());
    assert!(stdout(&out).starts_with("3 3\n"));
}

#[test]
fn unknown_fixture_is_a_usage_error() {
    let out = run(&["construct", "fixture:no-such-function"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no-such-function"));
}

#[test]
fn malformed_trace_source_names_the_bad_token() {
    let out = run(&["construct", "spec:3/6/banana"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("banana"), "stderr: {}", stderr(&out));
}

#[test]
fn dimension_errors_exit_as_usage_errors() {
    let out = run(&["normality", "zero:3,2", "--k", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
}
