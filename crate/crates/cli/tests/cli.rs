use hochschild_cli::{demo, parse_spec, run_job, CheckName, Status};
use std::process::Command;

fn hhcalc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hhcalc")).args(args).output().unwrap()
}

#[test]
fn reports_are_reproducible() {
    let spec = demo("E3").unwrap();
    let a = run_job(&spec).to_json(false);
    let b = run_job(&spec).to_json(false);
    assert_eq!(a, b);
    assert!(!a.contains("timings"));
    assert!(run_job(&spec).to_json(true).contains("timings"));
}

#[test]
fn every_requested_check_appears_once() {
    let spec = demo("E1").unwrap();
    let report = run_job(&spec);
    let names: Vec<CheckName> = report.checks.iter().map(|c| c.name).collect();
    assert_eq!(names, CheckName::ALL.to_vec());
    assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    assert!(report.dims.values().all(|d| d.iter().all(|&x| x == 1)));
}

#[test]
fn bg_only_job() {
    let spec = demo("E3").unwrap().with_checks(vec![CheckName::Bg]).unwrap();
    let report = run_job(&spec);
    assert_eq!(report.dims.len(), 1);
    assert_eq!(report.dims["bg"], vec![1, 1, 0, 0, 1, 1, 0]);
    assert_eq!(report.checks.len(), 1);
}

#[test]
fn e4_skips_the_bar_oracle() {
    let spec = demo("E4").unwrap().with_checks(vec![CheckName::Bg, CheckName::Bar]).unwrap();
    let report = run_job(&spec);
    assert_eq!(report.check(CheckName::Bar).unwrap().status, Status::Skipped);
    assert_eq!(report.check(CheckName::Bg).unwrap().status, Status::Pass);
    assert!(report.passed());
}

#[test]
fn json_output_parses() {
    let out = hhcalc(&["demo", "E2", "--format", "json", "--checks", "bg,ring"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dims"]["bg"], serde_json::json!([1, 1, 1, 1, 1, 1, 1]));
    assert_eq!(v["ring"]["deg_y"], 2);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("hhcalc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("e1.json");
    std::fs::write(
        &good,
        r#"{"prime": 5, "n": 2, "group": {"kind": "cyclic", "order": 2},
            "chi": [{"element": 1, "value": 4}], "g1": 1}"#,
    )
    .unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"prime": 6, "n": 2, "group": {"kind": "cyclic", "order": 2},
            "chi": [{"element": 1, "value": 4}], "g1": 1}"#,
    )
    .unwrap();
    assert_eq!(hhcalc(&["compute", good.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(hhcalc(&["verify", good.to_str().unwrap(), "--max-degree", "4"]).status.code(), Some(0));
    let out = hhcalc(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`prime`"));
    assert_eq!(hhcalc(&["demo", "E7"]).status.code(), Some(2));
    assert_eq!(hhcalc(&["demo", "E1", "--checks", "nonsense"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_are_not_validation_errors() {
    assert!(parse_spec("{").unwrap_err().field().is_none());
}
