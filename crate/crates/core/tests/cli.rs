use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootdatum")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rootdatum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn catalog(args: &[&str]) -> String {
    let out = bin(&[&["catalog"], args].concat());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn catalog_output_round_trips_through_validate() {
    let spec = catalog(&["SO", "5"]);
    let path = scratch("so5.json", &spec);
    let out = bin(&["compute", "validate", "--datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema"], "rootdatum-report/1");
    assert_eq!(report["passed"], true);
}

#[test]
fn center_of_so5() {
    let path = scratch("so5-center.json", &catalog(&["SO", "5"]));
    let out = bin(&["compute", "center", "--datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("V = Z/2, s = 1"), "{text}");
}

#[test]
fn cohomology_methods_agree_on_spin5_at_two() {
    let path = scratch("spin5-2.json", &catalog(&["Spin", "5", "--p", "2"]));
    let out = bin(&["compute", "cohomology", "--datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let results = report["results"].as_array().unwrap();
    assert!(results.len() >= 2);
    for r in results {
        assert_eq!(r["invariant_factors"], serde_json::json!([2]));
    }
}

#[test]
fn invalid_datum_fails_validation_with_witnesses() {
    let path = scratch(
        "bad.json",
        r#"{"name":"bad","ring":"Z","rank":1,"weyl_generators":[[[-1]]],"coroots":[{"reflection_matrix":[[-1]],"coroot":[3]}]}"#,
    );
    let out = bin(&["compute", "validate", "--datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let path = scratch("broken.json", "{ \"rank\": ");
    let out = bin(&["compute", "center", "--datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn unknown_suite_and_missing_file_exit_two() {
    assert_eq!(bin(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(bin(&["compute", "center", "--datum", "/nonexistent/datum.json"]).status.code(), Some(2));
    assert_eq!(bin(&["catalog", "E9"]).status.code(), Some(2));
}

#[test]
fn fixed_suites_reject_explicit_data() {
    let path = scratch("su2.json", &catalog(&["SU", "2"]));
    let out = bin(&["verify", "wdi4", "--datum", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_refuses_large_bar_computations() {
    let path = scratch("f4.json", &catalog(&["F4"]));
    let out = bin(&["compute", "cohomology", "--deg", "2", "--datum", path.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_are_byte_stable() {
    let a = bin(&["verify", "wdi4"]);
    let b = bin(&["verify", "wdi4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["timings_ms"].is_null());
}

#[test]
fn b2family_suite_passes() {
    let out = bin(&["verify", "b2family", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS"));
}

#[test]
fn verify_on_a_builtin_set() {
    let out = bin(&["verify", "torsor", "--builtin-set", "rank2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!json(&out)["checks"].as_array().unwrap().is_empty());
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("rootdatum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let target = dir.join("report.json");
    let out = bin(&["verify", "h1calc", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["command"], "verify h1calc");
}
