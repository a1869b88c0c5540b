//! End-to-end runs of the `partreg` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn partreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_partreg")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    partreg(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = partreg(&all);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), value)
}

const TOP_LEVEL: [&str; 10] = [
    "pattern",
    "normal_form",
    "verdict",
    "derivation",
    "canonical",
    "t",
    "case",
    "shift",
    "colourings",
    "search",
];

/// Keys come from the fixed schema, nothing is null and every derivation
/// step carries a rule, a citation and a detail.
fn check_schema(v: &Value) {
    let obj = v.as_object().expect("report is an object");
    for (key, value) in obj {
        assert!(TOP_LEVEL.contains(&key.as_str()), "unexpected key {key}");
        assert!(!value.is_null(), "{key} is null");
    }
    for key in ["pattern", "normal_form", "verdict", "canonical", "t", "case", "shift"] {
        if let Some(value) = obj.get(key) {
            assert!(value.is_string(), "{key} is not a string");
        }
    }
    for step in obj.get("derivation").and_then(Value::as_array).into_iter().flatten() {
        for key in ["rule", "citation", "detail"] {
            assert!(step[key].is_string(), "derivation step lacks {key}");
        }
    }
    if let Some(colourings) = obj.get("colourings") {
        assert!(colourings.as_array().unwrap().iter().all(Value::is_string));
    }
    if let Some(search) = obj.get("search") {
        assert!(search["kind"].is_string());
    }
}

#[test]
fn analyze_exit_codes_follow_the_verdict() {
    assert_eq!(code(&["analyze", "x, y, x(18y+1)"]), 0);
    assert_eq!(code(&["analyze", "x, y, (x+1)(y+2)"]), 1);
    assert_eq!(code(&["analyze", "x, y, xy, xy+x, xy+y"]), 2);
    assert_eq!(code(&["analyze", "x, y, x+y, 2y/x, xy"]), 3);
    assert_eq!(code(&["analyze", "x, y, (x+1(y+2)"]), 64);
}

#[test]
fn analyze_reports_rules() {
    let (_, v) = json(&["analyze", "x, y, x(18y+1)"]);
    check_schema(&v);
    assert_eq!(v["verdict"], "PR");
    let rules: Vec<_> = v["derivation"].as_array().unwrap().iter().map(|s| s["rule"].as_str().unwrap()).collect();
    assert!(rules.contains(&"THM_C_REDUCE") && rules.contains(&"NLD_FAMILY"), "{rules:?}");

    let (_, v) = json(&["analyze", "x, y, (x+1)(y+2)"]);
    check_schema(&v);
    assert_eq!(v["derivation"][0]["rule"], "THM_B_NO_T");
    assert!(v["colourings"].as_array().unwrap().iter().any(|c| c == "mod:7"));

    let (_, v) = json(&["analyze", "x, y, xy, xy+x, xy+y"]);
    check_schema(&v);
    assert_eq!(v["derivation"].as_array().unwrap().last().unwrap()["rule"], "OPEN_Q63");
    assert!(v.get("colourings").is_none());
}

#[test]
fn parse_errors_name_the_position() {
    let out = partreg(&["analyze", "x, y, x*y"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 7"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unsupported_reports_omit_the_derivation() {
    let (status, v) = json(&["analyze", "x, y, x+y, 2y/x, xy"]);
    assert_eq!(status, 3);
    check_schema(&v);
    assert_eq!(v["verdict"], "UNSUPPORTED");
    assert!(v.get("derivation").is_none());
}

#[test]
fn block_with_auto_finds_parity() {
    let (status, v) = json(&["block", "x,y,(4x+1)(y+1)", "--auto", "--N", "10000"]);
    assert_eq!(status, 0);
    check_schema(&v);
    let search = &v["search"];
    assert_eq!(search["kind"], "block");
    assert_eq!(search["certificate"], "mod:2");
    assert_eq!(search["checks"][0]["count_half"], 0);
    assert_eq!(search["checks"][0]["count_full"], 0);
}

#[test]
fn block_with_a_given_colouring() {
    let (status, v) = json(&["block", "x,y,(x+1)(y+2)", "--colouring", "mod:7", "--N", "10000"]);
    assert_eq!(status, 0);
    check_schema(&v);
    assert_eq!(v["search"]["checks"][0]["passes"], true);

    let (status, v) = json(&["block", "x,y,x+y", "--colouring", "mod:2", "--N", "100"]);
    assert_eq!(status, 1);
    check_schema(&v);
    let check = &v["search"]["checks"][0];
    assert_eq!(check["passes"], false);
    assert!(check["count_full"].as_u64().unwrap() > check["count_half"].as_u64().unwrap());
    assert!(v["search"].get("certificate").is_none());
}

#[test]
fn block_rejects_bad_input() {
    assert_eq!(code(&["block", "x,y,x+y", "--colouring", "mod:1"]), 64);
    assert_eq!(code(&["block", "x,y,x+y", "--auto"]), 64);
    assert_ne!(code(&["block", "x,y,x+y"]), 0);
}

#[test]
fn block_reads_explicit_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    std::fs::write(&path, "4 2\n0 1 1 0\n").unwrap();
    let spec = format!("file:{}", path.display());
    let (status, v) = json(&["solutions", "x,y,x+y", "--colouring", &spec, "--N", "4", "--mono"]);
    assert_eq!(status, 0);
    assert_eq!(v["search"]["count"], 0);
    // The table is too short for a check at N = 10.
    assert_eq!(code(&["block", "x,y,x+y", "--colouring", &spec, "--N", "10"]), 64);
}

#[test]
fn witness_results_have_distinct_codes() {
    let (status, v) = json(&["witness", "x,y,x+y", "-r", "2", "--N", "5"]);
    assert_eq!(status, 1);
    check_schema(&v);
    assert_eq!(v["search"]["result"], "UNSAT");

    let (status, v) = json(&["witness", "x,y,x+y", "-r", "2", "--N", "4"]);
    assert_eq!(status, 0);
    assert_eq!(v["search"]["result"], "WITNESS");
    assert_eq!(v["search"]["table"], serde_json::json!([0, 1, 1, 0]));

    let (status, v) = json(&["witness", "x,y,x+y", "-r", "3", "--N", "14", "--budget", "50"]);
    assert_eq!(status, 2);
    assert_eq!(v["search"]["result"], "BUDGET_EXHAUSTED");
    assert_eq!(v["search"]["nodes"], 50);
}

#[test]
fn witness_can_be_saved_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let path_str = path.to_str().unwrap();
    assert_eq!(code(&["witness", "x,y,x+y", "-r", "3", "--N", "13", "--save", path_str]), 0);
    let spec = format!("file:{path_str}");
    let (_, v) = json(&["solutions", "x,y,x+y", "--colouring", &spec, "--N", "13", "--mono"]);
    assert_eq!(v["search"]["count"], 0);
}

#[test]
fn solutions_and_fs_examples() {
    let (status, v) = json(&["solutions", "x,y,xy,x(y+1)", "--colouring", "mod:2", "--N", "10", "--mono"]);
    assert_eq!(status, 0);
    check_schema(&v);
    let first = &v["search"]["tuples"][0];
    assert_eq!((first["x"].as_u64(), first["y"].as_u64()), (Some(2), Some(2)));
    assert_eq!(first["values"], serde_json::json!([2, 2, 4, 6]));

    let (_, v) = json(&["solutions", "x,y,x+y", "--N", "3", "--cap", "100"]);
    assert_eq!(v["search"]["count"], 9);

    let (status, v) = json(&["fs", "--colouring", "mod:2", "--len", "2", "--bound", "100"]);
    assert_eq!(status, 0);
    check_schema(&v);
    assert_eq!(v["search"]["xs"], serde_json::json!([2, 4]));
    assert!(v.get("pattern").is_none());

    assert_eq!(code(&["fs", "--colouring", "mod:2", "--len", "3", "--bound", "3"]), 1);
}

#[test]
fn reduce_prints_the_canonical_form() {
    let (status, v) = json(&["reduce", "x, y, x(18y+1)"]);
    assert_eq!(status, 0);
    assert_eq!(v["canonical"], "x, y, x(y+1)");
    assert_eq!(code(&["reduce", "x, y, (4x+1)(y+1)"]), 1);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        &["analyze", "x, y, x(y+1), (x+2)y", "--json"][..],
        &["block", "x, y, x(y+1), x(y+2)", "--auto", "--N", "2000", "--json"][..],
        &["witness", "x,y,x+y", "-r", "3", "--N", "13", "--json"][..],
    ] {
        let a = partreg(args);
        let b = partreg(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        check_schema(&serde_json::from_slice(&a.stdout).unwrap());
    }
}

#[test]
fn text_output_prints_citations() {
    let out = partreg(&["analyze", "x, y, (4x+1)(y+1)"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict:     NOT_PR"), "{text}");
    assert!(text.contains("THM_C_DIV [shift divisibility"), "{text}");
    assert!(text.contains("shift:       -1/2"), "{text}");
}
