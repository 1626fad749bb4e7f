use std::fs;
use std::path::PathBuf;

use freesub::cli::{self, EXIT_BAD_INPUT, EXIT_OK};
use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["freesub"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_of(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, EXIT_OK, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn scratch(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    std::io::Write::write_all(&mut f, contents.as_bytes()).unwrap();
    f
}

#[test]
fn golden_outputs() {
    let (e1, e2) = (fixture("e1.json"), fixture("e2.json"));
    let cases = [
        (vec!["transversal", "--rep", &e1], "golden/e1_transversal.json"),
        (vec!["basis", "--rep", &e1], "golden/e1_basis.json"),
        (vec!["embed", "--group", &e2], "golden/e2_embed.json"),
    ];
    for (args, golden) in cases {
        let (code, out, _) = run(&args);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, fs::read_to_string(fixture(golden)).unwrap(), "{golden}");
    }
}

#[test]
fn report_header_comes_first() {
    let doc = json_of(&["basis", "--rep", &fixture("e1.json")]);
    let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(keys[..4], ["tool", "version", "command", "input_digest"]);
    assert_eq!(doc["command"], "basis");
    assert!(doc["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(doc["labels"][0], json!({"t": "1", "x": "b"}));
    assert_eq!(doc["labels"][1], json!({"t": "a", "x": "a"}));
}

#[test]
fn runs_are_deterministic() {
    let args = ["verify", "--rep", &fixture("e1.json"), "--group", &fixture("sym2.json"), "--seed", "7", "--samples", "20"];
    let (c1, o1, _) = run(&args);
    let (c2, o2, _) = run(&args);
    assert_eq!(c1, EXIT_OK);
    assert_eq!((c1, o1), (c2, o2));
}

#[test]
fn rewrite_reports_round_trip() {
    let doc = json_of(&["rewrite", "--rep", &fixture("e1.json"), "--word", "a a a b"]);
    assert_eq!(doc["rewrite"], json!(["+1", "+0"]));
    assert_eq!(doc["round_trip"], true);
    let doc = json_of(&["rewrite", "--rep", &fixture("e1.json"), "--word", "a b a^-1 a^-1 a^-1 a^-1"]);
    assert_eq!(doc["rewrite"], json!(["+2", "-1"]));
}

#[test]
fn rewriting_a_non_member_is_bad_input() {
    let (code, _, err) = run(&["rewrite", "--rep", &fixture("e1.json"), "--word", "a"]);
    assert_eq!(code, EXIT_BAD_INPUT);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn witness_separates_word() {
    let doc = json_of(&["witness", "--word", "a b^-1"]);
    assert_eq!(doc["rep"]["degree"], 3);
    assert_ne!(doc["image_point"], 0);
    assert_eq!(doc["separated"], true);
}

#[test]
fn witness_with_explicit_alphabet() {
    let doc = json_of(&["witness", "--word", "b", "--alphabet", "a,b,c"]);
    assert_eq!(doc["rep"]["alphabet"], json!(["a", "b", "c"]));
    assert_eq!(doc["rep"]["images"]["b"], json!([1, 0]));
    assert_eq!(doc["rep"]["images"]["a"], json!([0, 1]));
}

#[test]
fn identity_has_no_witness() {
    let (code, _, _) = run(&["witness", "--word", "1"]);
    assert_eq!(code, EXIT_BAD_INPUT);
}

#[test]
fn extend_and_verify_pass() {
    let doc = json_of(&[
        "extend",
        "--rep",
        &fixture("e1.json"),
        "--group",
        &fixture("sym2.json"),
        "--assign",
        &fixture("e1_assign.json"),
        "--samples",
        "30",
    ]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["psi_on_basis"][0], json!([1, 0]));
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let doc = json_of(&["verify", "--rep", &fixture("e1.json"), "--samples", "30"]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["index"], 3);
}

#[test]
fn text_output() {
    let (code, out, _) = run(&["transversal", "--rep", &fixture("e1.json"), "--text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("command: transversal"), "{out}");
    assert!(serde_json::from_str::<Value>(&out).is_err());
}

#[test]
fn bad_inputs_exit_two() {
    let malformed = scratch(r#"{"alphabet": ["a"], "degree": 2, "images": {"a": [0, 0]}}"#);
    let unknown_field = scratch(r#"{"alphabet": ["a"], "degree": 1, "images": {"a": [0]}, "extra": 1}"#);
    let intransitive = scratch(r#"{"alphabet": ["a"], "degree": 2, "images": {"a": [0, 1]}}"#);
    let e1 = fixture("e1.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["basis"],
        vec!["basis", "--rep", "/nonexistent/rep.json"],
        vec!["basis", "--rep", malformed.path().to_str().unwrap()],
        vec!["basis", "--rep", unknown_field.path().to_str().unwrap()],
        vec!["basis", "--rep", intransitive.path().to_str().unwrap()],
        vec!["rewrite", "--rep", &e1, "--word", "a z"],
        vec!["basis", "--rep", &e1, "--json", "--text"],
    ];
    for args in cases {
        let (code, _, _) = run(&args);
        assert_eq!(code, EXIT_BAD_INPUT, "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("transversal"));
}
