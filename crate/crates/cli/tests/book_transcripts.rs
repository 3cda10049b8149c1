mod common;

use common::{scenarios, stdout};
use std::process::Command;

/// Each ```console block of the CLI chapter: the command line and its output.
fn transcripts(text: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for block in text.split("```console\n").skip(1) {
        let body = block.split("```").next().unwrap();
        let (cmd, expected) = body.split_once('\n').unwrap();
        out.push((cmd.strip_prefix("$ ").unwrap().to_string(), expected.to_string()));
    }
    out
}

#[test]
fn cli_chapter_transcripts_match_the_binary() {
    let chapter = include_str!("../../../book/src/cli.md");
    let runs = transcripts(chapter);
    assert!(!runs.is_empty());
    for (cmd, expected) in runs {
        let mut words = cmd.split_whitespace();
        assert_eq!(words.next(), Some("dsmt"));
        let out = Command::new(env!("CARGO_BIN_EXE_dsmt"))
            .args(words)
            .current_dir(scenarios())
            .output()
            .unwrap();
        assert!(out.status.success(), "{cmd}");
        assert_eq!(stdout(&out), expected, "{cmd}");
    }
}
