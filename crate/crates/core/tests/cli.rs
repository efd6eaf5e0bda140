use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn wpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpd"))
        .args(args)
        .env_remove("WPD_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_identity_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = wpd(&[
        "verify", "--relations", "R19", "--dims", "2x2", "--ensemble", "haar-pure",
        "--samples", "2000", "--seed", "42", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["violations"], 0);
    assert!(r["min_margin"].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(v["config"]["seed"], 42);
    for key in ["tool_version", "config", "float_env", "reports", "runtime_seconds"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn unknown_relation_is_named_in_error() {
    let out = wpd(&["verify", "--relations", "R999"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("R999"));
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("r.json");
    let out = wpd(&["verify", "--relations", "R1", "--samples", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn violation_exit_code_and_witnesses() {
    let out = wpd(&["verify", "--relations", "R12-literal", "--ensemble", "named:basis:0", "--samples", "12"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["reports"][0]["witnesses"].as_array().unwrap().len(), 10);
    let w = &v["reports"][0]["witnesses"][0];
    assert!(w["state"].as_str().unwrap().starts_with("# wpd-state v1"));
}

#[test]
fn seed_env_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"relations": ["R1", "R10"], "dims": "3", "ensemble": "ginibre", "samples": 7, "seed": 5}"#).unwrap();
    let from_file = wpd(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(from_file.status.code(), Some(0));
    let v = json(&from_file);
    assert_eq!(v["config"]["samples"], 7);
    assert_eq!(v["config"]["dims"][0], "3");

    let flag_wins = wpd(&["verify", "--config", cfg.to_str().unwrap(), "--samples", "4"]);
    assert_eq!(json(&flag_wins)["config"]["samples"], 4);

    let env = Command::new(env!("CARGO_BIN_EXE_wpd"))
        .args(["verify", "--relations", "R1", "--samples", "2"])
        .env("WPD_SEED", "77")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 77);

    fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(wpd(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn sweep_rows_per_profile() {
    let out = wpd(&["sweep", "--relations", "R12", "--dims", "2x2,2x3,3x3,2x4", "--samples", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert!(row[4].parse::<f64>().unwrap() >= 0.0);
        assert_eq!(&row[9], "pass");
    }
}

#[test]
fn sweep_reports_inapplicable_rows() {
    let out = wpd(&["sweep", "--relations", "R18,R1", "--dims", "2x2,2x2x2", "--ensemble", "ginibre", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("R18,2x2,") && l.ends_with(",inapplicable")));
    assert!(text.lines().any(|l| l.starts_with("R18,2x2x2,") && l.ends_with(",pass")));
}

#[test]
fn sweep_without_profiles_fails() {
    assert_eq!(wpd(&["sweep", "--relations", "R12"]).status.code(), Some(1));
}

fn marginal<'a>(v: &'a Value, parties: &str) -> &'a Value {
    v["marginals"].as_array().unwrap().iter().find(|m| m["parties"] == parties).unwrap()
}

#[test]
fn state_info_bell() {
    let v = json(&wpd(&["state-info", "--state", "bell", "--cut", "A|B"]));
    let b = &v["bipartite"];
    assert!((b["entanglement_entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((b["concurrence"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    for side in b["sides"].as_array().unwrap() {
        assert!(side["measures"]["info_i"].as_f64().unwrap().abs() < 1e-12);
    }
    let r12 = v["relations"].as_array().unwrap().iter().find(|r| r["relation_id"] == "R12").unwrap();
    assert_eq!(r12["saturated"], true);
}

#[test]
fn state_info_ghz_and_w() {
    let v = json(&wpd(&["state-info", "--state", "ghz", "--cut", "A|BC"]));
    assert!((v["bipartite"]["entanglement_entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let ab = marginal(&v, "AB");
    assert!((ab["measures"]["info_s_squared"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let v = json(&wpd(&["state-info", "--state", "w", "--cut", "A|BC"]));
    let bc = marginal(&v, "BC");
    assert!((bc["measures"]["purity"].as_f64().unwrap() - 5.0 / 9.0).abs() < 1e-12);
    let s2 = 2.0 * (5.0 / 9.0 - 0.25);
    assert!((bc["measures"]["info_s_squared"].as_f64().unwrap() - s2).abs() < 1e-12);
}

#[test]
fn state_info_from_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.txt");
    let rho = wpd_core::states::named_state("plus:3", None).unwrap();
    fs::write(&path, wpd_core::serial::to_record(&rho)).unwrap();
    let v = json(&wpd(&["state-info", "--state", path.to_str().unwrap()]));
    assert_eq!(v["dims"], "3");
    assert_eq!(v["pure"], true);

    fs::write(&path, "# wpd-state v1\ndims 2\nentry 0 0 nope 0\n").unwrap();
    assert_eq!(wpd(&["state-info", "--state", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(wpd(&["state-info", "--state", "nonsense"]).status.code(), Some(1));
}

#[test]
fn check_paper_units_numbers() {
    let out = wpd(&["check-paper-units", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let readings = v["product_state"].as_array().unwrap();
    let lhs: Vec<f64> = readings.iter().map(|r| r["lhs"].as_f64().unwrap()).collect();
    let rhs: Vec<f64> = readings.iter().map(|r| r["rhs"].as_f64().unwrap()).collect();
    assert!((readings[0]["margin"].as_f64().unwrap() + 0.02820).abs() < 1e-5);
    assert!((lhs[1] - 0.72135).abs() < 1e-5 && (rhs[1] - 1.0).abs() < 1e-12);
    assert!((lhs[2] - 0.5).abs() < 1e-12 && (rhs[2] - std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(readings[0]["satisfied"], false);
    assert_eq!(readings[1]["satisfied"], true);
    assert_eq!(readings[2]["satisfied"], true);
}

#[test]
fn relations_listing() {
    let v = json(&wpd(&["relations"]));
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    for i in 1..=22 {
        assert!(ids.contains(&format!("R{i}").as_str()));
    }
    assert!(ids.contains(&"R4'"));
}

#[test]
fn reports_identical_across_thread_counts() {
    let args = |t: &'static str| {
        wpd(&["verify", "--relations", "all", "--dims", "2x2", "--ensemble", "ginibre:random", "--samples", "64", "--threads", t])
    };
    let one = args("1");
    let four = args("4");
    assert_eq!(one.status.code(), four.status.code());
    assert_eq!(one.stdout, four.stdout);
}
