use std::path::Path;
use std::process::{Command, Output};

use nikolskii::ExperimentConfig;
use serde_json::Value;

fn run_cli(dir: &Path, config: &str, extra: &[&str]) -> Output {
    let path = dir.join("config.json");
    std::fs::write(&path, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_nikolskii"))
        .arg("--config")
        .arg(&path)
        .arg("--quiet")
        .args(extra)
        .output()
        .unwrap()
}

const SWEEP: &str = r#"{
  "command": "sweep",
  "source": {"p": 1, "b": 1, "a": [0, 0]},
  "target": {"p": "inf", "b": "inf", "a": [0, 0]},
  "family": {"kind": "random", "period": 8, "inner": 0},
  "sweep": {"omegas": [1, 4, 16]},
  "seed": 11
}"#;

#[test]
fn classify_prints_f1() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "classify", "source": {"p": 1, "b": 1, "a": [0, 0]}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "class,rho\nF1,1\n");
}

#[test]
fn bound_with_q_above_p_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "bound",
            "source": {"p": 4, "b": 4},
            "target": {"p": 2, "b": 2},
            "spectrum": [{"lo": [-1], "hi": [1]}]}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("q ≤ p"), "{err}");
}

#[test]
fn bound_reports_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "bound",
            "source": {"p": 1, "b": 1},
            "target": {"p": 2, "b": 2},
            "spectrum": [{"lo": [-2], "hi": [2]}]}"#,
        &["--format", "json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["theorem_id"], "T4");
    assert!((v["result"]["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn sweep_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_cli(dir.path(), SWEEP, &[]);
    let b = run_cli(dir.path(), SWEEP, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with(
        "omega,mu_omega,lhs,rhs,ratio,theorem_id,power_exp,log_exp_0,log_exp_inf,loglog_exp_0,loglog_exp_inf,slope\n"
    ));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn seed_flag_changes_random_family() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_cli(dir.path(), SWEEP, &["--seed", "1"]);
    let b = run_cli(dir.path(), SWEEP, &["--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn unknown_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "classify", "source": {"p": 1, "b": 1}, "colour": 3}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let nested = run_cli(
        dir.path(),
        r#"{"command": "classify", "source": {"p": 1, "b": 1, "q": 2}}"#,
        &[],
    );
    assert_eq!(nested.status.code(), Some(1));
}

#[test]
fn missing_config_file_exits_1() {
    let out = Command::new(env!("CARGO_BIN_EXE_nikolskii"))
        .args(["--config", "/nonexistent/config.json", "--quiet"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_report_reproduces_run() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run_cli(
        dir.path(),
        SWEEP,
        &[
            "--format",
            "json",
            "--output",
            report.to_str().unwrap(),
            "--seed",
            "5",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let cfg: ExperimentConfig = serde_json::from_value(doc["config"].clone()).unwrap();
    assert_eq!(cfg.seed, 5);
    // The embedded config carries the output path and seed.
    std::fs::remove_file(&report).unwrap();
    let out = run_cli(dir.path(), &cfg.to_json(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let again: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(again, doc);
}

#[test]
fn norm_of_step_function() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "norm",
            "target": {"p": 2, "b": 2},
            "function": {"pieces": [[3, 1], [4, 1]]}}"#,
        &["--format", "json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["result"]["value"].as_f64().unwrap() - 5.0).abs() < 1e-12);
}

#[test]
fn rearrange_sorts_pieces() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "rearrange", "function": {"pieces": [[1, 2], [5, 1], [1, 1]]}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value,measure");
    assert!(lines[1].starts_with("5.0"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn besov_shift_c21() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_cli(
        dir.path(),
        r#"{"command": "besov-shift",
            "source": {"p": 1, "b": 1},
            "target": {"p": 2, "b": 2},
            "besov": {"corollary": "C21", "u": 2, "dim": 1}}"#,
        &["--format", "json"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["result"]["shifted"]["sigma"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn probe_and_verify_run() {
    let dir = tempfile::tempdir().unwrap();
    let probe = run_cli(
        dir.path(),
        r#"{"command": "probe",
            "source": {"p": 1, "b": 1},
            "target": {"p": "inf", "b": "inf"},
            "spectrum": [{"lo": [-3], "hi": [3]}],
            "probe": {"budget": 20, "period": 4, "points": 64},
            "seed": 3}"#,
        &[],
    );
    assert_eq!(
        probe.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&probe.stderr)
    );
    assert_eq!(String::from_utf8(probe.stdout).unwrap().lines().count(), 22);
    let verify = run_cli(
        dir.path(),
        r#"{"command": "verify",
            "source": {"p": 1, "b": 1},
            "target": {"p": 2, "b": 2},
            "family": {"kind": "sinc-power", "m": 2},
            "omega": 4}"#,
        &[],
    );
    assert_eq!(
        verify.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&verify.stderr)
    );
}
