use std::io::Write;
use std::process::{Command, Output, Stdio};

use opetope::formats::{parse_input, CorrespondenceDoc, EnumerationDoc, GenDoc, Input, SymDoc};

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn opetope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opetope")).args(args).output().unwrap()
}

fn opetope_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_opetope"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_dimension_zero() {
    let o = opetope(&["verify", "--dim", "0", "--bound", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("pass\n"));
    let o = opetope(&["verify", "--dim", "1", "--bound", "2"]);
    let doc: CorrespondenceDoc = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc.ok);
    assert_eq!((doc.classes, doc.multitopes), (1, 1));
}

#[test]
fn enumerate_two_multitopes() {
    let o = opetope(&["enumerate", "--kind", "multitope", "--dim", "2", "--bound", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], "count 4");
    let o = opetope(&["enumerate", "--kind", "multitope", "--dim", "2", "--bound", "3"]);
    let doc: EnumerationDoc = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.multitopes, lines[..4]);
}

#[test]
fn enumerate_opetopes_round_trips() {
    let o = opetope(&["enumerate", "--kind", "opetope", "--dim", "2", "--bound", "3"]);
    let text = stdout(&o);
    let doc: EnumerationDoc = serde_json::from_str(&text).unwrap();
    // chains of 0..3 cells with every ordering of their sources
    assert_eq!(doc.count, 1 + 1 + 2 + 6);
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--kind", "opetope", "--dim", "3", "--bound", "2"];
    assert_eq!(opetope(&args).stdout, opetope(&args).stdout);
}

#[test]
fn manifestations_of_a_ternary_cell() {
    let o = opetope(&["manifestations", "--dim", "2", "--seed", "[1,[[1,[[1,[|]]]]]]", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn bad_seed_is_a_parse_error() {
    let o = opetope(&["manifestations", "--dim", "2", "--seed", "[1,[|"]);
    assert_eq!(o.status.code(), Some(2));
    let o = opetope(&["manifestations", "--dim", "2", "--seed", "[1,[|,|]]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let o = opetope_stdin(&["check"], "{\"objects\": [");
    assert_eq!(o.status.code(), Some(2));
    let o = opetope(&["check", "--input", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_reports_violations() {
    let o = opetope(&["check", "--input", &data("fixed.json")]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(data("binary.json")).unwrap();
    // break a unit law
    let broken = text.replace(r#"{"f": "f", "p": 1, "g": "1y", "result": "f", "chi": [0, 1]}"#, r#"{"f": "f", "p": 1, "g": "1y", "result": "f", "chi": [1, 0]}"#);
    assert_ne!(broken, text);
    let o = opetope_stdin(&["check", "--format", "text"], &broken);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("unit"));
}

#[test]
fn xi_then_xi_inverse() {
    let o = opetope(&["xi", "--input", &data("binary.json")]);
    assert_eq!(o.status.code(), Some(0));
    let sym = stdout(&o);
    let Input::Sym(q) = parse_input(&sym).unwrap() else { panic!("expected a symmetric document") };
    assert_eq!(serde_json::to_string_pretty(&SymDoc::from_multicat(&q)).unwrap() + "\n", sym);
    let o = opetope_stdin(&["check"], &sym);
    assert_eq!(o.status.code(), Some(0));
    let o = opetope_stdin(&["xi-inverse"], &sym);
    assert_eq!(o.status.code(), Some(0));
    let gen = stdout(&o);
    let Input::Gen(m) = parse_input(&gen).unwrap() else { panic!("expected a generalised document") };
    assert_eq!(m.arrows.len(), 4);
    assert_eq!(serde_json::to_string_pretty(&GenDoc::from_multicat(&m)).unwrap() + "\n", gen);
}

#[test]
fn xi_inverse_rejects_fixed_points() {
    let o = opetope(&["xi-inverse", "--input", &data("fixed.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fixed"));
}

#[test]
fn slices_of_documents() {
    let o = opetope(&["slice", "--input", &data("binary.json"), "--bound", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    // objects of the slice are the four arrows; arrows are bare edges and
    // one-node trees
    assert!(stdout(&o).ends_with("4 objects, 7 arrows\n"), "{}", stdout(&o));
    let o = opetope(&["slice", "--input", &data("fixed.json"), "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = opetope(&["xi", "--input", &data("fixed.json")]);
    assert_eq!(o.status.code(), Some(3));
}
