#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn scenarios() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

pub fn fixture(name: &str) -> PathBuf {
    scenarios().join(name)
}

pub fn dsmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsmt"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// Every `.scenario` fixture, by file stem.
pub fn fixture_stems() -> Vec<String> {
    let mut stems: Vec<String> = std::fs::read_dir(scenarios())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "scenario").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    stems.sort();
    stems
}
