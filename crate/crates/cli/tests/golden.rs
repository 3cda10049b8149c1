//! Fixture reports compared byte-for-byte with the files under
//! `scenarios/golden`. Set `UPDATE_GOLDEN=1` to rewrite them.

mod common;

use common::{dsmt, fixture, fixture_stems, scenarios, stdout};

fn check_golden(name: &str, actual: &str) {
    let path = scenarios().join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{} differs from its golden file", path.display());
}

#[test]
fn fuse_reports_match_golden_files() {
    for stem in fixture_stems() {
        if stem == "cardinality" {
            continue;
        }
        let path = fixture(&format!("{stem}.scenario"));
        let path = path.to_str().unwrap();
        let table = dsmt(&["fuse", "--scenario", path]);
        check_golden(&format!("{stem}.txt"), &stdout(&table));
        let json = dsmt(&["fuse", "--scenario", path, "--format", "json"]);
        check_golden(&format!("{stem}.json"), &stdout(&json));
        assert_eq!(table.status.code(), json.status.code(), "{stem}");
    }
}

#[test]
fn lattice_listings_match_golden_files() {
    let card = fixture("cardinality.scenario");
    let out = dsmt(&["lattice", "--model", card.to_str().unwrap()]);
    assert!(out.status.success());
    check_golden("cardinality.lattice.txt", &stdout(&out));
    let out = dsmt(&["lattice", "--n", "3"]);
    assert!(out.status.success());
    check_golden("free3.lattice.txt", &stdout(&out));
}

#[test]
fn reports_are_deterministic() {
    let path = fixture("comparison.scenario");
    let args = ["fuse", "--scenario", path.to_str().unwrap(), "--format", "json", "--belief"];
    assert_eq!(dsmt(&args).stdout, dsmt(&args).stdout);
}
