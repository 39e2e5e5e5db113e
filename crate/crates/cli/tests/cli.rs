use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn knfrag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knfrag")).args(args).output().unwrap()
}

fn knfrag_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_knfrag"))
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

/// Loads a shipped schema with references to the model schema inlined.
fn schema(name: &str) -> jsonschema::JSONSchema {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/");
    let model = fs::read_to_string(format!("{dir}model.schema.json")).unwrap();
    let text = fs::read_to_string(format!("{dir}{name}.schema.json")).unwrap();
    let mut model: Value = serde_json::from_str(&model).unwrap();
    model.as_object_mut().unwrap().remove("$id");
    model.as_object_mut().unwrap().remove("$schema");
    let text = text.replace("{ \"$ref\": \"model.schema.json\" }", &model.to_string());
    let mut schema: Value = serde_json::from_str(&text).unwrap();
    schema.as_object_mut().unwrap().remove("$id");
    jsonschema::JSONSchema::compile(&schema).unwrap()
}

fn assert_valid(name: &str, value: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(value) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "{name}: {value} does not validate: {msgs:?}");
}

fn json_out(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = knfrag(&full);
    let v = serde_json::from_str(stdout(&o).trim()).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn fan_model(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("fan.json");
    fs::write(
        &path,
        r#"{"worlds": ["w0", "w1", "w2"], "relations": {"a": [["w0", "w1"], ["w0", "w2"]]},
            "valuation": {"w1": ["p"]}, "alphabet": ["p"], "designated": "w0"}"#,
    )
    .unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn parse_prints_canonical_text() {
    let o = knfrag(&["parse", "[a]p -> q"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "~[a]p | q");
    let (v, code) = json_out(&["parse", "<a>p & q"]);
    assert_eq!(code, 0);
    assert_valid("parse", &v);
    assert_eq!(v["size"], 4);
}

#[test]
fn formulas_can_come_from_stdin() {
    let o = knfrag_stdin(&["parse"], "p & q\n");
    assert_eq!(stdout(&o).trim(), "p & q");
    let o = knfrag_stdin(&["parse", "-"], "<a>p");
    assert_eq!(stdout(&o).trim(), "<a>p");
}

#[test]
fn classify_reports_the_descriptor() {
    let (v, code) = json_out(&["classify", "p & q -> r"]);
    assert_eq!(code, 0);
    assert_valid("classify", &v);
    assert_eq!(v["horn"], true);
    assert_eq!(v["krom"], false);
    assert_eq!(v["core"], false);
    let plain: Value = serde_json::from_str(&stdout(&knfrag(&["classify", "p & q -> r"]))).unwrap();
    assert_eq!(plain, v);
}

#[test]
fn check_uses_the_designated_world() {
    let dir = tempfile::tempdir().unwrap();
    let model = fan_model(&dir);
    let o = knfrag(&["check", &model, "<a>p"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = knfrag(&["check", &model, "[a]p"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = knfrag(&["check", "--world", "w1", &model, "p"]);
    assert_eq!(stdout(&o).trim(), "true");
    let (v, _) = json_out(&["check", &model, "<a>p"]);
    assert_valid("check", &v);
    assert_valid("model", &serde_json::from_str(&fs::read_to_string(&model).unwrap()).unwrap());
}

#[test]
fn sat_exit_codes() {
    assert_eq!(knfrag(&["sat", "<a>p & [a]~p"]).status.code(), Some(1));
    assert_eq!(knfrag(&["sat", "<a>p & <a>~p"]).status.code(), Some(0));
    assert_eq!(knfrag(&["sat", "--engine", "brute", "<a>p & <a>~p"]).status.code(), Some(0));
    let o = knfrag(&["sat", "--engine", "brute", "--max-worlds", "2", "<a>p & <a>q & [a](~p | ~q)"]);
    assert_eq!(o.status.code(), Some(2));
    for args in [
        &["sat", "<a>p & <a>~p"][..],
        &["sat", "p & ~p"],
        &["sat", "--engine", "brute", "--max-worlds", "1", "<a>p"],
        &["sat", "--engine", "brute", "<a>p & <a>~p"],
    ] {
        let (v, _) = json_out(args);
        assert_valid("sat", &v);
    }
    let (v, _) = json_out(&["sat", "<a>p & <a>~p"]);
    let (model, designated) = knfrag::KripkeModel::from_json(&v["witness"].to_string()).unwrap();
    assert!(model.satisfies(designated.unwrap(), &knfrag::parse("<a>p & <a>~p").unwrap()));
}

#[test]
fn translate_writes_a_sidecar() {
    let o = knfrag(&["translate", "--to", "box", "<a>p"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("~[a]_f0 & [a](_f0 | p)"));
    let side: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_valid("sidecar", &side);
    assert_eq!(side["fresh_letters"][0], "_f0");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fresh.json");
    let o = knfrag(&["translate", "--to", "diamond", "--sidecar", path.to_str().unwrap(), "[a]p -> q"]);
    assert_eq!(stdout(&o).trim(), "(<a>_f0 | q) & [a](~_f0 | ~p)");
    let side: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("sidecar", &side);

    let (v, _) = json_out(&["translate", "--to", "box", "<a>p | <a>q"]);
    assert_valid("translate", &v);
    assert_eq!(knfrag(&["translate", "--to", "box", "p & q -> r"]).status.code(), Some(64));
}

#[test]
fn translation_output_round_trips_through_equiv() {
    let out = stdout(&knfrag(&["translate", "--to", "box", "<a>p"]));
    let g = out.lines().next().unwrap();
    let o = knfrag(&["equiv", "--mode", "strong", "--max-worlds", "3", "<a>p", g]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn equiv_reports_counterexamples() {
    let (v, code) = json_out(&["equiv", "--mode", "weak", "--max-worlds", "3", "p | q", "p"]);
    assert_eq!(code, 1);
    assert_valid("equiv", &v);
    let (v, code) = json_out(&["equiv", "--mode", "weak", "p | q", "~(~p & ~q)"]);
    assert_eq!(code, 0);
    assert_valid("equiv", &v);
    let (v, code) = json_out(&["equiv", "--mode", "strong", "p", "p | q"]);
    assert_eq!(code, 1);
    assert_valid("equiv", &v);
    assert!(v["counterexample"]["extension"].is_object());
}

#[test]
fn search_outcomes() {
    let (v, _) = json_out(&["search", "--fragment", "horn", "--size", "5", "--max-worlds", "2", "p | q"]);
    assert_valid("search", &v);
    assert_eq!(v["status"], "NOT_FOUND");
    let (v, _) = json_out(&["search", "--fragment", "krom", "--size", "3", "--max-worlds", "2", "p | q"]);
    assert_valid("search", &v);
    assert_eq!(v["status"], "FOUND");
    assert_eq!(knfrag(&["search", "--fragment", "nonsense", "--size", "3", "p"]).status.code(), Some(64));
}

#[test]
fn verify_paper_emits_json_lines() {
    let o = knfrag(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut theorems = std::collections::BTreeSet::new();
    for line in out.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_valid("verify-paper", &v);
        assert_eq!(v["pass"], true, "{line}");
        theorems.insert(v["theorem"].as_str().unwrap().to_string());
    }
    assert_eq!(theorems.len(), knfrag::expressiveness::catalogue().len());
    let o = knfrag(&["verify-paper", "--id", "horndia-vs-horn"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.contains("horndia-vs-horn")));
    assert_eq!(knfrag(&["verify-paper", "--id", "nope"]).status.code(), Some(64));
}

#[test]
fn hierarchy_matches_the_golden_file() {
    let golden = include_str!("../../core/tests/golden/hierarchy.dot");
    assert_eq!(stdout(&knfrag(&["hierarchy"])), golden);
    let (v, _) = json_out(&["hierarchy"]);
    assert_valid("hierarchy", &v);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 10);
}

#[test]
fn error_exit_codes() {
    assert_eq!(knfrag(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(knfrag(&["parse", "p &"]).status.code(), Some(64));
    assert_eq!(knfrag(&["classify", "<a>(p & q)"]).status.code(), Some(64));
    assert_eq!(knfrag(&["check", "/definitely/missing.json", "p"]).status.code(), Some(66));
    let o = knfrag(&["--json", "--cap", "10", "equiv", "--mode", "weak", "<a>p", "~[a]~p"]);
    assert_eq!(o.status.code(), Some(69));
    let err: Value = serde_json::from_str(String::from_utf8(o.stderr).unwrap().trim()).unwrap();
    assert_valid("error", &err);
    assert_eq!(knfrag(&["--help"]).status.code(), Some(0));
}

#[test]
fn schemas_reject_malformed_documents() {
    let bad = serde_json::json!({ "status": "MAYBE", "engine": "brute", "formula": "p" });
    assert!(!schema("sat").is_valid(&bad));
    let bad = serde_json::json!({ "status": "SAT", "engine": "tableau", "formula": "p" });
    assert!(!schema("sat").is_valid(&bad), "SAT without a witness");
    let bad = serde_json::json!({ "theorem": "x", "step": 0, "description": "", "pass": true });
    assert!(!schema("verify-paper").is_valid(&bad));
}
