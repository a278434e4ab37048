use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nilext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilext"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = nilext(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

/// Writes `text` to a per-test file in the system temp directory.
fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn info_reports_dims_and_flag() {
    let v = json(&["--json", "info", "A_4_1"]);
    assert_eq!(v["algebra"], "A_4_1");
    assert_eq!(v["dims"]["n"], 4);
    assert_eq!(v["dims"]["layers"], serde_json::json!([2, 1, 1]));
    assert_eq!(v["flag"]["complete"], true);
}

#[test]
fn unknown_id_is_an_input_error() {
    let o = nilext(&["info", "A_9_99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("A_9_99"));
}

#[test]
fn reserved_id_is_an_input_error() {
    assert_eq!(nilext(&["info", "A_6_3"]).status.code(), Some(2));
}

#[test]
fn bad_arguments_are_input_errors() {
    assert_eq!(
        nilext(&["series", "A_3_1", "--kind", "sideways"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nilext(&["screen"]).status.code(), Some(2));
}

#[test]
fn non_nilpotent_bound_is_an_analysis_error() {
    let path = temp_file("affine.txt", "dim 2\nbracket 1 2 : 2 1\n");
    let o = nilext(&["bound", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn file_input_matches_catalog_entry() {
    let shown = json(&["--json", "catalog", "show", "A_5_3"]);
    let text = shown["text"].as_str().unwrap();
    let path = temp_file("a53.txt", text);
    let from_file = json(&[
        "--json",
        "screen",
        path.to_str().unwrap(),
        "--factor",
        "all",
    ]);
    let from_id = json(&["--json", "screen", "A_5_3", "--factor", "all"]);
    assert_eq!(from_file["overall"], from_id["overall"]);
    assert_eq!(from_file["dims"], from_id["dims"]);
    assert_eq!(from_id["overall"], "not-excluded");
}

#[test]
fn check_names_the_failing_triple() {
    let bad = "dim 6\nbracket 1 2 : 3 1\nbracket 1 3 : 4 1\nbracket 1 4 : 6 1\nbracket 2 3 : 5 1\nbracket 2 4 : 6 1\n";
    let path = temp_file("bad.txt", bad);
    let o = nilext(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("(e1, e2, e3)"), "{}", stdout(&o));

    let o = nilext(&["--json", "check", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["violations"][0]["triple"], serde_json::json!([1, 2, 3]));
}

#[test]
fn check_accepts_a_lie_algebra() {
    let path = temp_file("heis.txt", "dim 3\nbracket 2 3 : 1 1\n");
    let o = nilext(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_error_is_an_input_error() {
    let path = temp_file("broken.txt", "dim 3\nbracket 3 2 : 1 1\n");
    let o = nilext(&["info", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn screen_all_follows_catalog_order() {
    let list = json(&["--json", "catalog", "list"]);
    let ids: Vec<&str> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    let screens = json(&["--json", "screen", "--all", "--factor", "sl2"]);
    let screened: Vec<&str> = screens
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["algebra"].as_str().unwrap())
        .collect();
    assert_eq!(screened, ids);
}

#[test]
fn screen_verdicts_by_factor() {
    let v = json(&["--json", "screen", "A_6_13"]);
    assert_eq!(v["overall"], "excluded");
    let v = json(&["--json", "screen", "A_3_1", "--factor", "so3"]);
    assert_eq!(v["overall"], "excluded");
    assert_eq!(
        v["screens"].as_array().unwrap().last().unwrap()["rule"],
        "irrep-enumeration"
    );
}

#[test]
fn series_and_derivations() {
    let v = json(&["--json", "series", "A_5_2", "--kind", "lower"]);
    assert_eq!(v["dims"], serde_json::json!([5, 3, 2, 1, 0]));
    let v = json(&["--json", "derivations", "abelian(3)"]);
    assert_eq!(v["dim"], 9);
    assert_eq!(v["inner"], 0);
}

#[test]
fn text_output_for_every_command() {
    for args in [
        vec!["info", "A_3_1"],
        vec!["bound", "heisenberg(2)"],
        vec!["flag", "filiform(5)"],
        vec!["derivations", "A_3_1"],
        vec!["catalog", "list"],
    ] {
        let o = nilext(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(!stdout(&o).trim().is_empty(), "{args:?}");
    }
}
