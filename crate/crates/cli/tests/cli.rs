use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel);
    format!("@{}", root.display())
}

/// Runs the binary with `--format json`, returning the exit code and report.
fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lochar")).args(args).args(["--format", "json"]).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report, stdout)
}

fn without_timings(mut v: Value) -> String {
    v.as_object_mut().unwrap().remove("timings");
    v.to_string()
}

#[test]
fn tensor_of_z6_and_z15_is_z3() {
    let (code, r, _) = run(&["tensor", "--module", r#"{"factors":[2,3]}"#, "--module", r#"{"factors":[3,5]}"#]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["factors"], serde_json::json!([3]));
    assert_eq!(r["result"]["oracle_agrees"], true);
}

#[test]
fn snf_of_identity() {
    let (code, r, _) = run(&["snf", "--matrix", "[[1,0],[0,1]]"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["d"], serde_json::json!([[1, 0], [0, 1]]));
}

#[test]
fn snf_keeps_big_entries_exact() {
    let (code, r, _) = run(&["snf", "--matrix", r#"[["123456789012345678901234567890", 0], [0, 2]]"#]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["invariant_factors"], serde_json::json!([2, "123456789012345678901234567890"]));
}

#[test]
fn decompose_presentation() {
    let (code, r, _) = run(&["decompose", "--module", r#"{"presentation":{"generators":2,"relations":[[2,0],[0,3]]}}"#]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["module"]["factors"], serde_json::json!([2, 3]));
    assert_eq!(r["result"]["order"], 6);
}

#[test]
fn tomography_mat_bool_passes() {
    let (code, r, _) = run(&["tomography", "--instance", "mat-bool", "--max-dim", "2", "--max-family", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "pass");
    let (code, r, _) = run(&["tomography", "--instance", "mat-bool", "--max-dim", "2", "--max-family", "2", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["method"], "exhaustive");
}

#[test]
fn counterexample_fails_and_reverifies_when_fed_back() {
    let table = data("tomography_counterexample.json");
    let (code, r, _) = run(&["tomography", "--instance", "hom-table", "--table", &table]);
    assert_eq!(code, 1);
    let ce = &r["result"]["counterexample"];
    assert_eq!(ce["reverified"], true);
    let fed = serde_json::json!({"f": ce["f"], "g": ce["g"]}).to_string();
    let (code, r, _) = run(&["tomography", "--instance", "hom-table", "--table", &table, "--counterexample", &fed]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["counterexample_verified"], true);
}

#[test]
fn infinite_algebra_tomography_is_an_input_error() {
    let (code, r, _) = run(&["tomography", "--instance", "mat", "--algebra", "integers"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["location"], "--instance");
    let (code, _, _) = run(&["tomography", "--instance", "pid"]);
    assert_eq!(code, 3);
}

#[test]
fn schema_errors_exit_3_with_location() {
    let (code, r, _) = run(&["snf", "--matrix", "[[1,2],[3]]"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["location"], "--matrix");
    let (code, r, _) = run(&["tensor", "--module", r#"{"factor":[2]}"#]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["location"], "--module[0]");
    let out = Command::new(env!("CARGO_BIN_EXE_lochar")).args(["nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn divides_and_factorize() {
    let (code, r, _) = run(&["divides", "--a", "2", "--b", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["divides"]["cofactor"], 3);
    let (code, _, _) = run(&["divides", "--a", "4", "--b", "6"]);
    assert_eq!(code, 1);
    let (code, r, _) = run(&["factorize", "--object", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["parts"], serde_json::json!([2, 2, 3]));
    let (code, r, _) = run(&["divides", "--instance", "pid", "--a", r#"{"factors":[2]}"#, "--b", r#"{"factors":[2]}"#]);
    assert_eq!(code, 0, "{r}");
    // Cofactors of modules are unbounded, so a failed search proves nothing.
    let (code, _, _) = run(&["divides", "--instance", "pid", "--a", r#"{"factors":[2]}"#, "--b", r#"{"factors":[6]}"#]);
    assert_eq!(code, 2);
}

#[test]
fn free_subcat_verdicts() {
    let (code, _, _) = run(&["free-subcat", "--atoms", "[1,2,3,5,7]", "--bound", "8"]);
    assert_eq!(code, 0);
    let (code, r, _) = run(&["free-subcat", "--atoms", "[1,2,4]", "--bound", "8"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["report"]["verdict"], "fail");
}

#[test]
fn laws_on_shipped_algebras() {
    for name in ["boolean", "z4", "z6", "goedel3"] {
        let (code, r, _) = run(&["laws", "--algebra", &data(&format!("algebras/{name}.json"))]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(r["result"]["report"]["exhaustive"], true, "{name}");
    }
    let (code, r, _) = run(&["laws", "--algebra", &data("algebras/broken3.json")]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = r["result"]["report"]["results"].as_array().unwrap().iter().filter(|l| l["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["law"], "distributive");
    assert_eq!(failed[0]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn lift_presets() {
    let (code, r, _) = run(&["lift", "--bound", "3", "--morphism", r#"{"entries":[[1,0],[1,1]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["evaluations"][0]["image"]["entries"], serde_json::json!([[1, 1], [0, 1]]));
    let (code, _, _) = run(&["lift", "--preset", "mat-to-rel", "--bound", "3"]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&["lift", "--bound", "3", "--strategy", "product"]);
    assert_eq!(code, 0);
    // Kets and bras alone miss states such as [1, 1].
    let (code, r, _) = run(&["lift", "--preset", "identity", "--bound", "3", "--strategy", "product"]);
    assert_eq!(code, 1);
    assert!(r["result"]["precondition_failed"].as_str().unwrap().contains("full on states and effects"));
}

#[test]
fn lift_spec_round_trips_through_the_cli() {
    let (_, r, _) = run(&["lift", "--preset", "identity", "--bound", "2"]);
    let spec = r["result"]["spec"].to_string();
    let (code, r2, _) = run(&["lift", "--spec", &spec, "--bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r2["result"]["spec"], r["result"]["spec"]);
    let (code, r3, _) = run(&["lift", "--spec", &data("specs/swap_conjugation.json"), "--bound", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r3["result"]["spec"]["strategy"], "linear");
    let (code, r4, _) = run(&["lift", "--spec", r#"{"atoms":[2],"strategy":"nope"}"#]);
    assert_eq!((code, &r4["error"]["location"]), (3, &serde_json::json!("--spec")));
}

#[test]
fn retraction_report() {
    let (code, r, _) = run(&["retraction", "--bound", "12", "--max-dim", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["retraction_objects"][11]["word"], serde_json::json!([2, 2, 3]));
    assert_eq!(r["result"]["coherence"]["checked"], 144);
}

#[test]
fn equiv_identity_pair() {
    let (code, r, _) = run(&["equiv", "--pair", "mat-mat", "--bound", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["equivalence"]["verdict"], "pass");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let cases: Vec<Vec<String>> = vec![
        vec!["tomography".into(), "--instance".into(), "counterexample".into()],
        vec!["laws".into(), "--algebra".into(), "integers".into(), "--budget".into(), "64".into(), "--seed".into(), "7".into()],
        vec!["lift".into(), "--bound".into(), "3".into(), "--seed".into(), "11".into()],
        vec!["tensor".into(), "--module".into(), r#"{"factors":[4,0]}"#.into(), "--module".into(), r#"{"factors":[6]}"#.into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c1, r1, raw1) = run(&args);
        let (c2, r2, _) = run(&args);
        assert_eq!(c1, c2);
        assert_eq!(without_timings(r1.clone()), without_timings(r2), "{args:?}");
        let reparsed: Value = serde_json::from_str(&serde_json::to_string(&r1).unwrap()).unwrap();
        assert_eq!(reparsed, r1);
        assert_eq!(raw1.trim(), r1.to_string());
    }
}
