use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie-branch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn e6_f4_restricts_the_minuscule_module() {
    let v = json(&["branch", "--case", "e6_f4", "--lambda", "pi1"]);
    assert_eq!(v["schema_version"], 1);
    let r = &v["results"][0];
    assert_eq!(r["dimension"], 27);
    let labels: Vec<&str> = r["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["pi4", "0"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "PASS"));
}

#[test]
fn identity_branching_is_the_module_itself() {
    let v = json(&["branch", "--case", "identity:A1", "--lambda", "3"]);
    let c = &v["results"][0]["constituents"];
    assert_eq!(c.as_array().unwrap().len(), 1);
    assert_eq!(c[0]["dimension"], 4);
    assert_eq!(c[0]["weight"], serde_json::json!([3]));
}

#[test]
fn sp6_in_sl6_third_wedge() {
    let v = json(&["branch", "--case", "sl_sp", "--params", "n=3", "--lambda", "pi3"]);
    let labels: Vec<&str> = v["results"][0]["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["pi3", "pi1"]);
}

#[test]
fn gamma_reports_generators_and_freeness() {
    let v = json(&["gamma", "--case", "e6_f4", "--I", "1,3", "--bound", "2"]);
    let cert = &v["results"][0]["certificate"];
    assert_eq!(cert["generators"].as_array().unwrap().len(), 5);
    assert_eq!(cert["free"], true);
    let v = json(&["gamma", "--case", "sl_spin", "--params", "n=2", "--I", "2"]);
    let cert = &v["results"][0]["certificate"];
    assert_eq!(cert["generators"].as_array().unwrap().len(), 4);
    assert_eq!(cert["free"], true);
}

#[test]
fn so4_in_sl4_is_multiplicity_free_to_height_three_only() {
    let v = json(&[
        "gamma", "--case", "so_in_sl", "--params", "n=4", "--I", "1,2", "--bound", "3",
    ]);
    assert_eq!(v["results"][0]["certificate"]["multiplicity_free"], true);
    let o = run(&[
        "gamma", "--case", "so_in_sl", "--params", "n=4", "--I", "1,2", "--bound", "4",
    ]);
    // a multiplicity is a verdict, not a failure
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(2pi1+2pi2; 2pi1+2pi2)"), "{}", stdout(&o));
}

#[test]
fn verify_one_record() {
    let o = run(&["verify", "--case", "sl_spsp_12"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn verify_all_quick_passes() {
    let v = json(&["verify", "--all", "--quick"]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 49);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "PASS"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["--json", "verify", "--table", "levi-sl", "--all"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "--case", "sl_spsp_12", "--params", "p=1,q=1"][..],
        &["branch", "--case", "nope", "--lambda", "0"],
        &["branch", "--case", "e6_f4", "--lambda", "pi9"],
        &["gamma", "--case", "e6_f4", "--I", "7"],
        &["branch", "--lambda", "0"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn list_filters_by_table() {
    let o = run(&["list", "--table", "sl"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("sl_")).count(), 11);
}
