use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn quandle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandle")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TAIT: &str = "quandle 3\n0 2 1\n2 1 0\n1 0 2\n";

#[test]
fn validate_reports_size() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tait.qnd", TAIT);
    let o = quandle(&["validate", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "quandle: 3 elements, axioms OK\n");
}

#[test]
fn axiom_failures_exit_one_with_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.qnd", "quandle 3\n0 2 1\n0 1 0\n1 0 2\n");
    let o = quandle(&["validate", s(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Q2 fails at [1, 0]"));
    let o = quandle(&["--format", "structured", "validate", s(&f)]);
    assert_eq!(stdout(&o), "{\"axiom\":\"Q2\",\"valid\":false,\"witness\":[1,0]}\n");
}

#[test]
fn bad_input_is_a_usage_error_without_panicking() {
    let dir = TempDir::new().unwrap();
    let cases = [
        write(&dir, "short.qnd", "quandle 3\n0 2\n"),
        write(&dir, "empty.qnd", ""),
        write(&dir, "junk.qnd", "\u{0}\u{1}garbage"),
        write(&dir, "range.qnd", "quandle 2\n0 5\n1 1\n"),
        write(&dir, "json.qnd", "{\"n\": 2, \"op\": [[0]]}"),
    ];
    for f in &cases {
        let o = quandle(&["validate", s(f)]);
        assert_eq!(o.status.code(), Some(2), "{f:?}: {}", stderr(&o));
        assert!(!stderr(&o).contains("panicked"));
    }
    assert_eq!(quandle(&["validate", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(quandle(&["validate", s(&cases[0]), "--frobnicate"]).status.code(), Some(2));
    assert_eq!(quandle(&["enumerate", "--order", "9"]).status.code(), Some(2));
    assert_eq!(quandle(&["paper-suite", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn inner_of_tait_is_transitive_of_order_six() {
    let o = quandle(&["inner", "builtin:tait", "--aut"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("|Inn| = 6, transitive\n"));
    assert!(out.contains("|Aut| = 6"));
}

#[test]
fn probe_reports_top_order_and_transpositions() {
    let o = quandle(&["probe", "counterexample", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("top-level Inn order: 72"));
    assert!(out.contains("min transpositions of ℓ: 1,1,3"));
    assert_eq!(quandle(&["probe", "counterexample", "--depth", "0"]).status.code(), Some(2));
}

#[test]
fn suite_filter_and_determinism() {
    let o = quandle(&["paper-suite", "--only", "density"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).all(|l| l.contains("density.")));
    let a = quandle(&["--format", "structured", "--seed", "5", "paper-suite", "--only", "snf"]);
    let b = quandle(&["--format", "structured", "--seed", "5", "paper-suite", "--only", "snf"]);
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["id", "paper_ref", "status", "witness"] {
            assert!(v.get(key).is_some(), "{line}");
        }
    }
}

#[test]
fn towers_from_descriptors() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "tak3.json", r#"{"builder": "tak_zp", "p": 3, "depth": 2}"#);
    let o = quandle(&["tower", s(&t), "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("level sizes [3, 9]"));
    assert_eq!(stdout(&quandle(&["tower", s(&t), "elements"])).lines().count(), 10);
    assert_eq!(quandle(&["tower", s(&t), "density", "--seeds", "0,0", "1,4"]).status.code(), Some(0));
    assert_eq!(quandle(&["tower", s(&t), "density", "--seeds", "0,0"]).status.code(), Some(1));
    // incoherent coordinates
    assert_eq!(quandle(&["tower", s(&t), "density", "--seeds", "0,1"]).status.code(), Some(2));
    let o = quandle(&["tower", s(&t), "inn"]);
    assert!(stdout(&o).contains("|Inn(Q_k)| = [6, 18]"));
    let m = write(&dir, "m.json", r#"{"builder": "m_product", "depth": 3}"#);
    assert!(stdout(&quandle(&["tower", s(&m), "probe"])).contains("top-level Inn order: 72"));
    let bad = write(&dir, "bad.json", r#"{"levels": ["builtin:tait", "builtin:tait"], "transitions": [[0, 0, 0]]}"#);
    assert_eq!(quandle(&["tower", s(&bad), "check"]).status.code(), Some(1));
}

#[test]
fn coset_quandle_of_s4() {
    let o = quandle(&["coset-quandle", "--group", "builtin:sym:4", "--subgroup", "(0 1);(2 3)", "--h", "(0 1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("quandle 6"));
    // (0 1) is not central in the group it generates with (1 2)
    let o = quandle(&["coset-quandle", "--group", "builtin:sym:4", "--subgroup", "(0 1);(1 2)", "--h", "(0 1)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_ehrman_and_adtak() {
    let o = quandle(&["enumerate", "--order", "3"]);
    assert!(stdout(&o).starts_with("3 quandles of order 3"));
    let o = quandle(&["ehrman", "builtin:tait"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("coset quandle isomorphic to input: yes"));
    assert_eq!(quandle(&["ehrman", "builtin:trivial:2"]).status.code(), Some(1));
    assert_eq!(stdout(&quandle(&["adtak", "builtin:trivial:1"])), "AdTak = Z^1\n");
    assert_eq!(quandle(&["adtak", "builtin:davis:3"]).status.code(), Some(1));
}

#[test]
fn connectedness_sets_the_exit_code() {
    let o = quandle(&["connected", "builtin:tait"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "connected: yes, orbit count 1\n");
    assert_eq!(quandle(&["connected", "builtin:trivial:2"]).status.code(), Some(1));
}
