use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthokernel")).args(args).output().expect("binary runs")
}

fn json_run(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let doc = serde_json::from_slice(&out.stdout).expect("valid json");
    (doc, out.status.code().unwrap())
}

fn without_timings(mut doc: Value) -> Value {
    for r in doc["reports"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("elapsed_ms");
    }
    doc
}

#[test]
fn unknown_suite_is_a_config_error() {
    let out = run(&["--suite", "foo"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("foo"));
    assert_eq!(run(&["--suite", "hyp", "--alpha", ""]).status.code(), Some(2));
    assert_eq!(run(&["--suite", "hahn", "--bigN", "1"]).status.code(), Some(2));
}

#[test]
fn hahn_worked_instance() {
    let (doc, code) = json_run(&["--suite", "hahn", "--alpha", "0", "--beta", "0", "--bigN", "2", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["version"], 1);
    let r = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["identity_id"] == "eq45" && r["params"]["n"] == "1")
        .unwrap();
    assert_eq!((&r["lhs"], &r["rhs"], &r["status"]), (&Value::from("-2"), &Value::from("-2"), &Value::from("pass")));
    assert_eq!(doc["summary"]["fail"], 0);
}

#[test]
fn legendre_symmetric_run() {
    let (doc, code) = json_run(&["--suite", "symmetric", "--family", "legendre", "--nmax", "20", "--format", "json"]);
    assert_eq!(code, 0);
    let eq36 = doc["reports"].as_array().unwrap().iter().filter(|r| r["identity_id"] == "eq36").count();
    assert!(eq36 >= 21);
}

#[test]
fn json_is_deterministic_and_parallel_matches_serial() {
    let base = ["--suite", "hahn,hyp,properties", "--alpha", "-1/3,1/2", "--beta", "0,7/3", "--bigN", "3,5", "--nmax", "4"];
    let with = |extra: &[&str]| {
        let mut args: Vec<&str> = base.to_vec();
        args.extend_from_slice(&["--format", "json", "--seed", "11"]);
        args.extend_from_slice(extra);
        let (doc, code) = json_run(&args);
        assert_eq!(code, 0);
        without_timings(doc)
    };
    let first = with(&["--jobs", "1"]);
    assert_eq!(first, with(&["--jobs", "1"]));
    let mut parallel = with(&["--jobs", "4"]);
    parallel["config"]["jobs"] = first["config"]["jobs"].clone();
    assert_eq!(first, parallel);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("orthokernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.conf");
    std::fs::write(&path, "# small grid\nsuite = hahn\nalpha = \"0\"\nbeta = 1/2\nbigN = 3\nformat = json\n").unwrap();
    let (doc, code) = json_run(&["--config", path.to_str().unwrap(), "--bigN", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["config"]["bigN"], serde_json::json!([2]));
    assert_eq!(doc["config"]["beta"], serde_json::json!(["1/2"]));

    std::fs::write(&path, "suite = hahn\nnmax three\n").unwrap();
    assert_eq!(run(&["--config", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output_ends_with_summary() {
    let out = run(&["--suite", "hyp", "--alpha", "1/2", "--beta", "0", "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("summary: pass 12"), "{last}");
}

#[test]
fn failing_limit_check_exits_with_one() {
    let out = run(&["--suite", "limits", "--alpha", "0", "--beta", "0", "--nmax", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failing: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["status"] == "fail")
        .map(|r| r["params"]["n"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["3", "4"]);
}
