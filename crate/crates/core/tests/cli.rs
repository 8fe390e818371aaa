use std::process::{Command, Output};

fn povmcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_povmcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_paper_qubit_povm() {
    let o = povmcoh(&["povm", "validate", "--params", "0.301723,0.011681"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text
        .lines()
        .find(|l| l.starts_with("completeness_residual"))
        .unwrap();
    let value: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(value <= 1e-10);
    assert!(text.contains("status: pass"));
}

#[test]
fn validate_two_qubit_povm() {
    let o = povmcoh(&[
        "povm",
        "validate",
        "--params",
        "0.30173,0.01168,0.53991,0.09537",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("effects: 16"));
}

#[test]
fn validate_rejects_wrong_arity() {
    let o = povmcoh(&["povm", "validate", "--params", "0.1,0.2,0.3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_povm_file_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // {|0⟩⟨0|, |0⟩⟨0|} is not complete
    std::fs::write(
        &path,
        r#"{"dim":2,"effects":[[[1,0],[0,0],[0,0],[0,0]],[[1,0],[0,0],[0,0],[0,0]]]}"#,
    )
    .unwrap();
    let o = povmcoh(&[
        "measure",
        "--state",
        "plus",
        "--povm",
        path.to_str().unwrap(),
        "--measure",
        "r",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_then_measure_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.json");
    let p = path.to_str().unwrap();
    let o = povmcoh(&[
        "povm",
        "export",
        "--params",
        "0.301723,0.011681",
        "--out",
        p,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let from_file = povmcoh(&["measure", "--state", "phi", "--povm", p, "--measure", "l1"]);
    let builtin = povmcoh(&[
        "measure",
        "--state",
        "phi",
        "--povm",
        "qubit",
        "--measure",
        "l1",
    ]);
    assert_eq!(stdout(&from_file), stdout(&builtin));
}

#[test]
fn measure_closed_forms() {
    let r = povmcoh(&[
        "measure",
        "--state",
        "plus",
        "--povm",
        "projective:2",
        "--measure",
        "r",
    ]);
    assert_eq!(stdout(&r).trim(), "1");
    let t = povmcoh(&[
        "measure",
        "--state",
        "1,1",
        "--povm",
        "projective:2",
        "--measure",
        "tsallis",
        "--lambda",
        "2",
    ]);
    assert_eq!(stdout(&t).trim(), "0.414213562373");
}

#[test]
fn tsallis_lambda_one_is_usage_error() {
    let o = povmcoh(&[
        "measure",
        "--state",
        "plus",
        "--povm",
        "projective:2",
        "--measure",
        "tsallis",
        "--lambda",
        "1.0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(povmcoh(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(povmcoh(&["--help"]).status.code(), Some(0));
}

#[test]
fn bounds_reports_not_applicable() {
    let o = povmcoh(&[
        "bounds",
        "--experiment",
        "relent-2q",
        "--alpha",
        "0.9",
        "--beta",
        "0.8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("upper: not applicable (no_constraint_root)"));
}

#[test]
fn bounds_json_is_parseable() {
    let o = povmcoh(&[
        "bounds",
        "--experiment",
        "tsallis-2q",
        "--alpha",
        "0.4",
        "--beta",
        "0.7",
        "--lambda",
        "1.5",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let exact = v["exact"].as_f64().unwrap();
    let upper = v["upper"]["value"]["value"].as_f64().unwrap();
    assert!(exact <= upper);
}

#[test]
fn experiment_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let json = dir.path().join("r.json");
    let o = povmcoh(&[
        "experiment",
        "--experiment",
        "l1-1q",
        "--trials",
        "10",
        "--seed",
        "42",
        "--out",
        csv.to_str().unwrap(),
        "--report",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.starts_with(
        "experiment,trial,seed,alpha,beta,norm_sq,exact,upper,lower,\
         upper_applicable,lower_applicable,violation,imag_discarded_max\n"
    ));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["violation_count"], 0);
}

#[test]
fn experiment_rejects_zero_trials() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let o = povmcoh(&[
        "experiment",
        "--experiment",
        "l1-1q",
        "--trials",
        "0",
        "--seed",
        "1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}
