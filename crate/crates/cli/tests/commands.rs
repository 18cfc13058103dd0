use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn isoterm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoterm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn monoid_presets() {
    let out = isoterm(&["monoid", "lee:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["size"], 7);
    let out = isoterm(&["monoid", "dilworth:perkins"]);
    assert_eq!(json(&out)["size"], 25);
    let out = isoterm(&["--format", "table", "monoid", "lee:2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.starts_with("lee:2: size 5, identity 1, zero 0"),
        "{text}"
    );
}

#[test]
fn broken_table_is_input_error() {
    let dir = std::env::temp_dir().join(format!("isoterm-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    // a*a = b, b*a = e: not associative.
    fs::write(
        &path,
        r#"{"labels":["e","a","b"],"identity":0,"zero":null,"table":[[0,1,2],[1,2,0],[2,0,0]]}"#,
    )
    .unwrap();
    let out = isoterm(&["monoid", &format!("table:{}", path.display())]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not associative"), "{err}");
    assert_eq!(isoterm(&["monoid", "lee:1"]).status.code(), Some(2));
    assert_eq!(isoterm(&["monoid", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        isoterm(&["check", "lee:2", "x^0", "x"]).status.code(),
        Some(2)
    );
    fs::remove_dir_all(dir).ok();
}

#[test]
fn check_exit_codes() {
    let out = isoterm(&["check", "lee:6", "xyyxyx", "xyxyyx"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);

    let out = isoterm(&["check", "lee:2", "xy", "yx"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["witness"]["x"], "a");
    assert_eq!(v["witness"]["y"], "b");

    let out = isoterm(&["--budget-nodes", "5", "check", "lee:6", "xyyxyx", "xyxyyx"]);
    assert_eq!(out.status.code(), Some(3));

    let out = isoterm(&["check", "perkins", "--unvn", "4", "1", "--engine", "lee"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn term_and_property_c() {
    let out = isoterm(&["term", "lee:4", "abab", "--mode", "isoterm"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "is_term");

    let out = isoterm(&["term", "lee:6", "xyyxyx"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"], "x y x y^2 x");

    assert_eq!(
        isoterm(&["property-c", "lee:2", "2"]).status.code(),
        Some(0)
    );
    let out = isoterm(&["property-c", "lee:2", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"][0], "x y^2 x");
}

#[test]
fn nfb_premises_are_instance_evidence() {
    let out = isoterm(&["nfb-premises", "lee:5", "--n", "4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["property_c5"], true);
    assert_eq!(v["instances"][0]["types_differ"], true);
    assert!(v["summary"]
        .as_str()
        .unwrap()
        .contains("finite-instance evidence"));
}

#[test]
fn containment_equivalents_and_scan() {
    let out = isoterm(&["contains", "lee:6", "--lee", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let out = isoterm(&["contains", "lee:2", "--words", "xyx"]);
    assert_eq!(out.status.code(), Some(1));

    let out = json(&isoterm(&["equiv", "lee:3", "xx", "--max-len", "5"]));
    let words: Vec<&str> = out["words"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap())
        .collect();
    assert_eq!(words, ["x^2", "x^3", "x^4", "x^5"]);

    let out = isoterm(&[
        "--format",
        "table",
        "scan",
        "lee:3",
        "--max-len",
        "3",
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut rows = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(
        rows.headers().unwrap(),
        vec!["word", "isoterm", "max_occ", "klimited"]
    );
    assert_eq!(rows.records().count(), 2 + 4 + 8);
}

#[test]
fn reproduce_ledger_shape() {
    let out = isoterm(&["--deterministic", "reproduce", "jackson"]);
    assert_eq!(out.status.code(), Some(0));
    let ledger = json(&out);
    let entries = ledger.as_array().unwrap();
    assert_eq!(entries.len(), 15);
    for e in entries {
        let keys: Vec<&String> = e.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        assert_eq!(e["status"], "pass");
        assert_eq!(e["millis"], 0);
    }
}
