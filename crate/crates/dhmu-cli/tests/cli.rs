//! End-to-end tests of the `dhmu` binary: exit codes, report formats,
//! error isolation in corpus sweeps, and json/csv value equality.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn dhmu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dhmu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dhmu-cli-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

const DELTA: &str = r#"{ "atoms": [{"t": 0.5, "w": 1.0}] }"#;
const BETA3: &str = r#"{ "densities": [{"c": 1.0, "beta": 3.0, "lam": 0}] }"#;
const BETA15: &str = r#"{ "densities": [{"c": 1.0, "beta": 1.5}] }"#;

#[test]
fn moments_csv_rows() {
    let dir = scratch_dir("moments");
    let path = dir.join("delta.json");
    fs::write(&path, DELTA).unwrap();
    let out = dhmu(&[
        "moments",
        "--measure",
        path.to_str().unwrap(),
        "--N",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut values = Vec::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols[0] == "metric" {
            values.push((cols[1].to_string(), cols[2].parse::<f64>().unwrap()));
        }
    }
    assert_eq!(values.len(), 3);
    assert_eq!(values[0], ("0".to_string(), 1.0));
    assert_eq!(values[1], ("1".to_string(), 0.5));
    assert_eq!(values[2], ("2".to_string(), 0.25));
}

#[test]
fn json_and_csv_carry_identical_values() {
    let dir = scratch_dir("parity");
    let path = dir.join("beta3.json");
    fs::write(&path, BETA3).unwrap();
    let args_base = ["moments", "--measure", path.to_str().unwrap(), "--N", "8"];

    let json_out = dhmu(&args_base);
    assert!(json_out.status.success());
    let parsed: serde_json::Value =
        serde_json::from_slice(&json_out.stdout).expect("valid json report");
    let json_metrics: Vec<(String, f64)> = parsed["metrics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| {
            (
                m["name"].as_str().unwrap().to_string(),
                m["value"].as_f64().unwrap(),
            )
        })
        .collect();

    let mut csv_args = args_base.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv_out = dhmu(&csv_args);
    assert!(csv_out.status.success());
    let text = String::from_utf8(csv_out.stdout).unwrap();
    let csv_metrics: Vec<(String, f64)> = text
        .lines()
        .filter(|l| l.starts_with("metric,"))
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            (cols[1].to_string(), cols[2].parse::<f64>().unwrap())
        })
        .collect();

    assert_eq!(json_metrics.len(), csv_metrics.len());
    for ((jn, jv), (cn, cv)) in json_metrics.iter().zip(&csv_metrics) {
        assert_eq!(jn, cn);
        assert_eq!(jv.to_bits(), cv.to_bits(), "{jn}: json/csv values differ");
    }
}

#[test]
fn carleson_flags_growing_trend() {
    let dir = scratch_dir("carleson");
    let path = dir.join("beta15.json");
    fs::write(&path, BETA15).unwrap();
    let out = dhmu(&["carleson", "--measure", path.to_str().unwrap(), "--s", "2"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let labels: Vec<(String, String)> = parsed["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| {
            (
                l["name"].as_str().unwrap().to_string(),
                l["value"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert!(labels.contains(&("verdict".into(), "growing".into())));
    assert!(labels.contains(&("classification".into(), "not 2-Carleson".into())));
    // tail exponent fit recovers beta = 1.5
    let fit = parsed["metrics"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["name"] == "exponent-estimate")
        .unwrap()["value"]
        .as_f64()
        .unwrap();
    assert!((fit - 1.5).abs() < 0.05, "fit {fit}");
}

#[test]
fn scenario_exit_codes() {
    let out = dhmu(&[
        "scenario",
        "hilbert-ineq",
        "--trials",
        "50",
        "--N",
        "64",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["passed"], serde_json::Value::Bool(true));

    // unknown scenario: input error
    let out = dhmu(&["scenario", "no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("no-such-check"), "stderr: {err}");
}

#[test]
fn malformed_measure_file_names_the_field() {
    let dir = scratch_dir("malformed");
    let path = dir.join("bad.json");
    fs::write(&path, r#"{ "atoms": [{"t": 1.5, "w": 1.0}] }"#).unwrap();
    let out = dhmu(&["moments", "--measure", path.to_str().unwrap(), "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("atoms[0].t"), "stderr: {err}");

    // unknown keys are rejected too
    fs::write(&path, r#"{ "atoms": [], "surprise": 1 }"#).unwrap();
    let out = dhmu(&["moments", "--measure", path.to_str().unwrap(), "--N", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn norm_profile_reports_verdict() {
    let dir = scratch_dir("profile");
    let path = dir.join("beta3.json");
    fs::write(&path, BETA3).unwrap();
    let out = dhmu(&[
        "norm-profile",
        "--measure",
        path.to_str().unwrap(),
        "--N",
        "256",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let verdict = parsed["labels"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["name"] == "growth-verdict")
        .unwrap()["value"]
        .as_str()
        .unwrap()
        .to_string();
    assert_eq!(verdict, "plateau");
}

#[test]
fn apply_writes_image_coefficients() {
    let dir = scratch_dir("apply");
    let path = dir.join("delta.json");
    fs::write(&path, DELTA).unwrap();
    let out = dhmu(&[
        "apply",
        "--measure",
        path.to_str().unwrap(),
        "--N",
        "3",
        "--scheme",
        "derivative",
        "--series",
        "monomial",
        "--degree",
        "0",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let metric = |name: &str| -> f64 {
        parsed["metrics"]
            .as_array()
            .unwrap()
            .iter()
            .find(|m| m["name"] == name)
            .unwrap()["value"]
            .as_f64()
            .unwrap()
    };
    // δ_{0.5}, e_0, derivative scheme: (1, 2·0.5, 3·0.25)
    assert!((metric("b[0].re") - 1.0).abs() < 1e-12);
    assert!((metric("b[1].re") - 1.0).abs() < 1e-12);
    assert!((metric("b[2].re") - 0.75).abs() < 1e-12);
}

#[test]
fn report_all_sweeps_and_isolates_errors() {
    let dir = scratch_dir("reportall");
    fs::write(dir.join("delta.json"), DELTA).unwrap();
    fs::write(dir.join("beta3.json"), BETA3).unwrap();
    fs::write(
        dir.join("broken.json"),
        r#"{ "densities": [{"c": -1.0, "beta": 2.0}] }"#,
    )
    .unwrap();
    let out_path = dir.join("summary.json");
    let out = dhmu(&[
        "report-all",
        dir.to_str().unwrap(),
        "--N",
        "64",
        "--trials",
        "10",
        "--grid-j",
        "5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    // the sweep completes whatever the verdicts; exit is 0 or 1, never 2
    assert!(matches!(out.status.code(), Some(0) | Some(1)));

    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    // the broken file yields exactly one input-error row and no scenario rows
    let broken: Vec<_> = rows.iter().filter(|r| r["measure"] == "broken").collect();
    assert_eq!(broken.len(), 1);
    assert_eq!(broken[0]["status"], "input-error");
    assert!(broken[0]["detail"]
        .as_str()
        .unwrap()
        .contains("densities[0].c"));
    // the healthy measures ran the full catalog
    for name in ["delta", "beta3"] {
        let count = rows.iter().filter(|r| r["measure"] == name).count();
        assert_eq!(count, 11, "{name} should have one row per scenario");
    }
}

#[test]
fn report_all_empty_directory() {
    let dir = scratch_dir("empty");
    let out = dhmu(&["report-all", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn shipped_corpus_parses_and_sweeps() {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let out = dhmu(&[
        "report-all",
        corpus.to_str().unwrap(),
        "--N",
        "64",
        "--trials",
        "10",
        "--grid-j",
        "5",
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = parsed["rows"].as_array().unwrap();
    // 7 measures x 11 scenarios, no input-error cells
    assert_eq!(rows.len(), 7 * 11);
    assert!(rows.iter().all(|r| r["status"] != "input-error"));
}
