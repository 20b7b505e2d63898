use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rhcob")).args(args).output().expect("spawn rhcob")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(o) => o.values().all(no_floats),
        _ => true,
    }
}

fn order(doc: &Value) -> &str {
    doc["results"][0]["verdict"].as_str().unwrap_or_else(|| panic!("{doc}"))
}

#[test]
fn classify_examples() {
    for (name, want) in [("I_49", "1"), ("L_9_2", "1"), ("T_3", "1"), ("T_27", "1"), ("T_15", "2"), ("I_77", "inf")] {
        let doc = json(&["classify", name]);
        assert_eq!(doc["command"], "classify");
        assert_eq!(order(&doc), want, "{name}");
    }
    let doc = json(&["classify", "(3; 2/1, 3/2, 5/1)"]);
    assert_eq!(doc["results"][0]["manifold"], "I_49");
}

#[test]
fn i77_max_min_witness() {
    let doc = json(&["classify", "I_77"]);
    let r = &doc["results"][0];
    assert_eq!(r["proved_in"], "max_min");
    let mm = r["reports"].as_array().unwrap().iter().find(|r| r["id"] == "max_min").unwrap();
    assert_eq!(mm["params"]["max"], "6/7");
    assert_eq!(mm["params"]["min"], "-4/7");
    assert_eq!(mm["decisive"], true);
}

#[test]
fn classify_csv_and_text() {
    let csv = stdout(&["classify", "O_35", "--format", "csv"]);
    assert!(csv.starts_with("manifold,order,id,verdict,decisive,claim,witness,params\n"));
    assert!(csv.lines().skip(1).all(|l| l.starts_with("O_35,inf,")));
    let text = stdout(&["classify", "L_9_2", "--format", "text"]);
    assert!(text.contains("order: 1"));
    assert!(text.contains("* lisca_lens"));
}

#[test]
fn d_examples() {
    let ext = stdout(&["d", "I_49", "--extendable"]);
    let rows: Vec<&str> = ext.lines().skip(1).collect();
    assert_eq!(rows, ["4,0", "11,0", "18,0", "25,0", "32,0", "39,0", "46,0"]);

    assert_eq!(stdout(&["d", "L_1849_309", "--label", "240"]), "label,d\n240,6\n");

    let all = stdout(&["d", "surgery(T(2,3), 77/12)", "--all"]);
    let vals: Vec<&str> = all.lines().skip(1).map(|l| l.split_once(',').unwrap().1).collect();
    assert_eq!(vals.len(), 77);
    for a in ["0", "-2/7", "6/7", "-4/7"] {
        assert!(vals.contains(&a), "{a}");
    }
}

#[test]
fn decimal_is_marked() {
    let out = stdout(&["d", "L_5_2", "--decimal", "3"]);
    assert!(out.starts_with("label,d,approx\n"));
    assert!(out.contains("0,2/5,~0.400\n"));
}

#[test]
fn embed_examples() {
    let doc = json(&["embed", "chain:2,2,2,3", "--rank", "4"]);
    assert_eq!(doc["results"]["outcome"], "found");
    assert_eq!(doc["results"]["certificate"]["verified"], true);

    let doc = json(&["embed", "I_169", "--rank", "5"]);
    assert_eq!(doc["results"]["outcome"], "found");

    let doc = json(&["embed", "O_5", "--copies", "2"]);
    assert_eq!(doc["results"]["outcome"], "none");
    let text = stdout(&["embed", "O_5", "--copies", "2", "--format", "text"]);
    assert!(text.starts_with("none (exhaustive)"));
}

#[test]
fn parse_errors_exit_2() {
    for bad in ["X_3", "I_48", "(3; 2/1, 3/2 5/1)", "surgery(T(2,4), 5)"] {
        let out = run(&["classify", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains("parse error at position"), "{err}");
        assert!(err.contains('^'));
    }
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&["embed", "chain:2,2,2,3", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["outcome"], "inconclusive");
}

#[test]
fn table_matches_golden() {
    let golden = include_str!("golden/table_b12.csv");
    assert_eq!(stdout(&["table"]), golden);
    let small = stdout(&["table", "--b-max", "2"]);
    assert_eq!(small.lines().count(), 16);
    assert!(small.lines().all(|l| golden.lines().any(|g| g == l)));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "I_77", "O_35", "T_15"][..],
        &["table", "--b-max", "4", "--format", "json"],
        &["d", "I_169", "--all"],
        &["embed", "chain:2,2,2,3", "--enumerate"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn json_schema_and_exactness() {
    for args in [
        &["classify", "I_77", "L_9_2"][..],
        &["table", "--b-max", "3", "--format", "json"],
        &["d", "I_49", "--all", "--format", "json"],
        &["embed", "chain:2,2,2,3"],
    ] {
        let doc = json(args);
        let keys: Vec<&str> = doc.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["command", "inputs", "results", "version"], "{args:?}");
        assert_eq!(doc["command"], args[0]);
        assert!(no_floats(&doc), "{args:?}");
    }
    let doc = json(&["classify", "T_3", "--timing"]);
    assert!(doc["timing"]["millis"].is_u64());
}
