use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn ainfty(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainfty")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = ainfty(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn table(v: &Value) -> Vec<(String, u64)> {
    v.as_object().unwrap().iter().map(|(k, n)| (k.clone(), n.as_u64().unwrap())).collect()
}

#[test]
fn dual_of_exterior_is_the_diagonal() {
    let r = report(&["dual", "--preset", "exterior(0,1)", "--adams-bound", "4"]);
    let mut want: Vec<(String, u64)> = (0..=4).map(|m| (format!("{m},{}", -m), 1)).collect();
    want.sort();
    assert_eq!(table(&r["result"]["homology"]), want);
    assert_eq!(r["window"]["adams_bound"], 4);
}

#[test]
fn double_dual_of_two_weight_exterior_matches() {
    let r = report(&["double-dual", &data("exterior_weights_1_2.json"), "--adams-bound", "5"]);
    assert_eq!(r["result"]["dims_match"], true);
    assert_eq!(r["result"]["passed"], true);
}

#[test]
fn as_check_rejects_square_zero() {
    let r = report(&["as-check", &data("square_zero_quadratic.json")]);
    assert_eq!(r["result"]["right"]["outcome"], "no");
    assert_eq!(r["result"]["left"]["outcome"], "no");
}

#[test]
fn is_koszul_reports_the_quadratic_dual() {
    let r = report(&["is-koszul", &data("square_zero_quadratic.json")]);
    assert_eq!(r["result"]["verdict"], "yes-in-window");
    assert_eq!(r["result"]["quadratic_dual"], "k⟨y1,y2⟩/(), generators in (1,-1)");
}

#[test]
fn pipeline_verdicts() {
    let r = report(&["regular-pipeline", "--preset", "polynomial(0,1)"]);
    assert_eq!(r["result"]["verdict"], "AS-regular");
    assert_eq!(r["result"]["he_finite"], "certified");
    let r = report(&["regular-pipeline", &data("square_zero_quadratic.json")]);
    assert_eq!(r["result"]["verdict"], "not regular in window");
    let r = report(&["regular-pipeline", "--preset", "exterior(0,1;0,1)"]);
    assert_eq!(r["result"]["verdict"], "not regular in window");
}

#[test]
fn accept_window_flag_is_reported() {
    let r = report(&["regular-pipeline", "--preset", "exterior(0,1)", "--adams-bound", "3", "--accept-window"]);
    assert_eq!(r["result"]["he_finite"], "accepted-in-window");
}

#[test]
fn b3_check_and_dual() {
    let r = report(&["check", "--preset", "B(3)"]);
    assert_eq!(r["result"]["stasheff"]["passed"], true);
    assert_eq!(r["result"]["max_arity"], 3);
    let r = report(&["dual", "--preset", "B(3)", "--adams-bound", "6", "--field", "q"]);
    assert_eq!(table(&r["result"]["homology"]), vec![("0,0".into(), 1), ("0,1".into(), 1), ("0,2".into(), 1)]);
}

#[test]
fn table_input_is_checked_before_use() {
    let r = report(&["ext", &data("truncated_table.json")]);
    assert_eq!(r["result"]["reconciled"], true);
    let out = ainfty(&["check", &data("nonassociative_table.json")]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "stasheff");
    assert!(err["message"].as_str().unwrap().contains("SI(3)"));
}

#[test]
fn exit_codes() {
    assert_eq!(ainfty(&["check", "--preset", "nonsense"]).status.code(), Some(1));
    assert_eq!(ainfty(&["check", "--preset", "k", "--field", "fp:9"]).status.code(), Some(1));
    assert_eq!(ainfty(&["check"]).status.code(), Some(1));
    assert_eq!(ainfty(&["is-frobenius", "--preset", "polynomial(0,1)"]).status.code(), Some(2));
    assert_eq!(ainfty(&["bar", "--preset", "polynomial(0,0)"]).status.code(), Some(2));
    assert_eq!(ainfty(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ainfty(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_stable() {
    let a = ainfty(&["report-all", "--preset", "truncated(0,1;3)", "--threads", "1"]);
    let b = ainfty(&["report-all", "--preset", "truncated(0,1;3)", "--threads", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn coh_window_filters_tables() {
    let r = report(&["dual", "--preset", "exterior(0,1)", "--adams-bound", "4", "--coh-min", "1", "--coh-max", "2"]);
    assert_eq!(table(&r["result"]["homology"]), vec![("1,-1".into(), 1), ("2,-2".into(), 1)]);
}

#[test]
fn json_out_writes_the_report() {
    let path = std::env::temp_dir().join(format!("ainfty-cli-test-{}.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let out = ainfty(&["check", "--preset", "k", "--json-out", &p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["schema"], "ainfty.report/1");
}

#[test]
fn report_echo_ingests_to_the_same_report() {
    let first = report(&["ext", &data("exterior_weights_1_2.json")]);
    let path = std::env::temp_dir().join(format!("ainfty-cli-echo-{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&first["algebra"]).unwrap()).unwrap();
    let second = report(&["ext", &path.to_string_lossy()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(first, second);
}

#[test]
fn schemas_cover_what_the_binary_emits() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let alg: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("algebra.schema.json")).unwrap()).unwrap();
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("report.schema.json")).unwrap()).unwrap();
    let kinds: Vec<&str> = alg["properties"]["kind"]["enum"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(kinds.contains(&"ainf_table") && kinds.contains(&"preset"));
    let r = report(&["report-all", "--preset", "exterior(0,1)"]);
    for key in rep["required"].as_array().unwrap() {
        assert!(r.get(key.as_str().unwrap()).is_some(), "missing {key}");
    }
    let commands = rep["properties"]["command"]["enum"].as_array().unwrap();
    for section in r["result"].as_object().unwrap().keys() {
        assert!(commands.iter().any(|c| c == section), "{section}");
    }
}
