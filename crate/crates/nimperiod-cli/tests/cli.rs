//! End-to-end tests against the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn nimperiod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nimperiod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {} stderr: {}",
        stdout(out),
        stderr(out)
    );
}

#[test]
fn seq_prints_space_separated_values() {
    let out = nimperiod(&["seq", "1", "2", "3", "--count", "8"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out), "0 1 2 3 0 1 2 3\n");
}

#[test]
fn seq_defaults_to_32_values() {
    let out = nimperiod(&["seq", "2", "3", "5"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out).split_whitespace().count(), 32);
}

#[test]
fn period_prints_preperiod_and_period() {
    let out = nimperiod(&["period", "2", "3", "5"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out), "preperiod=0 period=7\n");

    let out = nimperiod(&["period", "3", "7", "9"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out), "preperiod=14 period=2\n");
}

#[test]
fn predict_names_the_case() {
    let out = nimperiod(&["predict", "1", "2", "4"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out), "Case II, candidates: 1 3 5 6\n");

    let out = nimperiod(&["predict", "2", "3", "5"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out), "Case I, period: 7\n");
}

#[test]
fn json_outputs_parse_and_carry_the_results() {
    let out = nimperiod(&["seq", "1", "2", "4", "--count", "7", "--json"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["values"], serde_json::json!([0, 1, 2, 0, 1, 2, 0]));

    let out = nimperiod(&["period", "4", "9", "12", "--json"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["preperiod"], 18);
    assert_eq!(v["period"], 21);

    let out = nimperiod(&["predict", "1", "4", "10", "--json"]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case"], "II");
    assert_eq!(v["candidates"], serde_json::json!([1, 5, 11, 14]));
}

#[test]
fn bad_triples_are_usage_errors() {
    let out = nimperiod(&["seq", "3", "2", "1"]);
    assert_exit(&out, 1);
    assert!(stderr(&out).contains("s1 < s2 < s3"), "{}", stderr(&out));

    let out = nimperiod(&["period", "2", "2", "5"]);
    assert_exit(&out, 1);
}

#[test]
fn parse_errors_exit_1_but_help_exits_0() {
    let out = nimperiod(&["seq", "1", "2"]);
    assert_exit(&out, 1);

    let out = nimperiod(&["--definitely-not-a-flag"]);
    assert_exit(&out, 1);

    let out = nimperiod(&["--help"]);
    assert_exit(&out, 0);
    assert!(stdout(&out).contains("Usage"));

    let out = nimperiod(&["--version"]);
    assert_exit(&out, 0);
}

#[test]
fn detection_cap_exhaustion_is_a_failure_exit() {
    let out = nimperiod(&["period", "5", "9", "14", "--max-seq-len", "16"]);
    assert_exit(&out, 2);
    assert!(stderr(&out).contains("no period"), "{}", stderr(&out));
}

#[test]
fn verify_writes_records_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("range.ndjson");
    let out = nimperiod(&[
        "verify",
        "--min",
        "1",
        "--max",
        "16",
        "--workers",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("verified 560 games"), "{text}");
    assert!(text.contains("mismatches: 0"), "{text}");

    let records = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(records.lines().count(), 560);
    assert!(records
        .lines()
        .next()
        .unwrap()
        .starts_with(r#"{"s1":1,"s2":2,"s3":3,"#));
    assert!(!sibling(&out_path, ".checkpoint").exists());
}

#[test]
fn verify_json_summary_has_the_documented_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("range.ndjson");
    let out = nimperiod(&[
        "verify",
        "--min",
        "2",
        "--max",
        "10",
        "--out",
        out_path.to_str().unwrap(),
        "--json",
    ]);
    assert_exit(&out, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], 84);
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["failures"], 0);
    assert_eq!(
        v["case1"].as_u64().unwrap() + v["case2"].as_u64().unwrap(),
        84
    );
    assert!(v["wall_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_is_deterministic_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.ndjson");
    let second = dir.path().join("b.ndjson");
    for (path, workers) in [(&first, "1"), (&second, "7")] {
        let out = nimperiod(&[
            "verify",
            "--max",
            "14",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_exit(&out, 0);
    }
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

#[test]
fn verify_with_a_tiny_cap_reports_failures_via_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("capped.ndjson");
    let out = nimperiod(&[
        "verify",
        "--max",
        "6",
        "--max-seq-len",
        "6",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_exit(&out, 2);
    let text = stdout(&out);
    assert!(text.contains("detection failures: 20"), "{text}");
    let records = std::fs::read_to_string(&out_path).unwrap();
    assert!(records.lines().all(|l| l.contains("detection-failed")));
}

#[test]
fn resume_without_a_checkpoint_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("nothing.ndjson");
    let out = nimperiod(&["resume", "--max", "12", "--out", out_path.to_str().unwrap()]);
    assert_exit(&out, 2);
    assert!(
        stderr(&out).contains("nothing to resume"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn invalid_range_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bad.ndjson");
    let out = nimperiod(&[
        "verify",
        "--min",
        "9",
        "--max",
        "6",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_exit(&out, 1);
    assert!(stderr(&out).contains("must exceed"), "{}", stderr(&out));
}

fn sibling(path: &Path, suffix: &str) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(suffix);
    std::path::PathBuf::from(os)
}
