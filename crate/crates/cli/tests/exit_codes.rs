mod common;

use common::{dsmt, fixture, stdout};

fn write(dir: &tempfile::TempDir, text: &str) -> String {
    let p = dir.path().join("s.scenario");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn success_is_zero() {
    let p = fixture("imprecise.scenario");
    assert_eq!(dsmt(&["fuse", "--scenario", p.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(dsmt(&["check", "--scenario", p.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn parse_and_validation_errors_are_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "[frame]\nlabels = a, b\n[precise m]\na = 0.3\n");
    let out = dsmt(&["fuse", "--scenario", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("deficit"));

    let syntax = write(&dir, "[frame]\nlabels = a\nstray line\n");
    let out = dsmt(&["check", "--scenario", &syntax]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 1"));

    assert_eq!(dsmt(&["check", "--scenario", "/nonexistent/x"]).status.code(), Some(2));
    let p = fixture("comparison.scenario");
    assert_eq!(dsmt(&["fuse", "--scenario", p.to_str().unwrap(), "--rule", "nope"]).status.code(), Some(2));
}

#[test]
fn rule_errors_are_three() {
    let p = fixture("four_hypotheses.scenario");
    let out = dsmt(&["fuse", "--scenario", p.to_str().unwrap(), "--rule", "dempster"]);
    assert_eq!(out.status.code(), Some(3));
    // The report is still printed.
    assert!(stdout(&out).contains("total conflict"));
}

#[test]
fn resource_limits_are_four() {
    assert_eq!(dsmt(&["lattice", "--n", "6"]).status.code(), Some(4));
    assert_eq!(dsmt(&["lattice", "--n", "7", "--max-frame", "7"]).status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let big = write(&dir, "[frame]\nlabels = a, b, c, d, e, f, g\n");
    assert_eq!(dsmt(&["check", "--scenario", &big]).status.code(), Some(4));
}

#[test]
#[ignore = "enumerates 7,828,353 elements; run with --ignored"]
fn six_hypotheses_behind_the_gate() {
    use std::io::{BufRead, BufReader};
    use std::process::{Command, Stdio};
    use std::time::{Duration, Instant};

    let start = Instant::now();
    let mut child = Command::new(env!("CARGO_BIN_EXE_dsmt"))
        .args(["lattice", "--n", "6", "--max-frame", "6"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut lines = BufReader::new(child.stdout.take().unwrap()).lines();
    assert_eq!(lines.next().unwrap().unwrap(), "7828353 elements");
    let mut rows = 0usize;
    let mut last = String::new();
    for line in lines.skip(1) {
        last = line.unwrap();
        rows += 1;
    }
    assert!(child.wait().unwrap().success());
    assert_eq!(rows, 7_828_353);
    assert!(last.trim_end().ends_with("th1∪th2∪th3∪th4∪th5∪th6"), "{last}");
    assert!(start.elapsed() < Duration::from_secs(300), "{:?}", start.elapsed());
}
