//! `check --echo` output parses back to the same scenario.

mod common;

use common::{dsmt, fixture, fixture_stems, stdout};
use dsmt_cli::{load_scenario, parse_scenario};

#[test]
fn echo_round_trips_every_fixture() {
    for stem in fixture_stems() {
        let path = fixture(&format!("{stem}.scenario"));
        let out = dsmt(&["check", "--scenario", path.to_str().unwrap(), "--echo"]);
        assert!(out.status.success(), "{stem}");
        let echoed = stdout(&out);
        let original = load_scenario(&path).unwrap();
        assert_eq!(parse_scenario(&echoed).unwrap(), original, "{stem}");
        assert_eq!(original.to_text(), echoed, "{stem}");
    }
}

#[test]
fn check_summarizes() {
    let path = fixture("comparison.scenario");
    let out = dsmt(&["check", "--scenario", path.to_str().unwrap()]);
    assert_eq!(stdout(&out), "ok: 3 hypotheses, 1 constraints, 2 sources, 1 tasks\n");
}
