use std::io::Write;
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_admcover");

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn classify_weierstrass_join() {
    let (out, _, code) = run(&["classify", &data("weierstrass_join.curve")]);
    assert_eq!(out, "hyperelliptic — Thm 5.3 (i)\n");
    assert_eq!(code, 0);
}

#[test]
fn two_conjugate_nodes_hit_the_second_case() {
    let (out, _, code) = run(&["classify", &data("two_nodes.curve")]);
    assert_eq!(out, "hyperelliptic — Thm 5.3 (ii)\n");
    assert_eq!(code, 0);
}

#[test]
fn gonality_at_cap_six() {
    let (out, _, code) = run(&["gonality", "--cap", "6", &data("trigonal_pair.curve")]);
    assert!(out.ends_with("exact: 5 (Thm B; oracle agrees)\n"), "{out}");
    assert_eq!(code, 0);
}

#[test]
fn low_cap_is_reported_above_cap() {
    let (out, _, code) = run(&["enumerate", "--cap", "4", &data("trigonal_pair.curve")]);
    assert_eq!(out, "above cap: no cover of degree at most 4\n");
    assert_eq!(code, 2);
}

#[test]
fn empty_profiles_are_undecided() {
    let (out, _, code) = run(&["enumerate", &data("unknown_profiles.curve")]);
    assert_eq!(out, "undecided: profiles incomplete\n");
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_go_to_stderr() {
    let mut child = Command::new(BIN)
        .arg("genus")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"[component]\nid=C1 genus=x\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("parse error: line 2, column 7:"), "{err}");
}

#[test]
fn stdin_matches_file_input() {
    let text = std::fs::read(data("two_nodes.curve")).unwrap();
    let mut child = Command::new(BIN)
        .args(["genus", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5\n");
}

#[test]
fn reports_are_deterministic() {
    for cmd in ["validate", "classify", "gonality", "glue", "expand", "enumerate", "export-dot"] {
        let a = run(&[cmd, "--all-cases", "--witness", &data("trigonal_pair.curve")]);
        let b = run(&[cmd, "--all-cases", "--witness", &data("trigonal_pair.curve")]);
        assert_eq!(a, b, "{cmd}");
    }
}

#[test]
fn dot_format_for_witness() {
    let (out, _, code) = run(&["enumerate", "--format", "dot", &data("weierstrass_join.curve")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("least degree: 2\ndigraph cover {"), "{out}");
}

#[test]
fn export_dot_labels_indices() {
    let (out, _, _) = run(&["export-dot", &data("weierstrass_join.curve")]);
    assert!(out.contains("\"C1\" [label=\"C1:g=2\"];"));
    assert!(out.contains("[label=\"n1 (2,2)\"]"));
    assert!(out.contains("digraph cover"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["classify", "--cap", "many"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn example_documents_round_trip() {
    use admcover::cli::{parse, serialize};
    for name in ["weierstrass_join.curve", "trigonal_pair.curve", "two_nodes.curve", "unknown_profiles.curve"] {
        let doc = parse(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc, "{name}");
    }
}
