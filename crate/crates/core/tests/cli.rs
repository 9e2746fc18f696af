use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semihilbert"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) {
    std::fs::write(dir.join(name), body).unwrap();
}

#[test]
fn compute_writes_report_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "t.json", r#"{"dim": 2, "re": [[0, 1], [0, 0]]}"#);
    write(
        d,
        "a.json",
        r#"{"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}"#,
    );
    let out = bin(
        &[
            "compute", "--matrix", "t.json", "--weight", "a.json", "--grid", "90", "--out",
            "r.json", "--csv", "w.csv", "--svg", "w.svg",
        ],
        d,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let r: Value =
        serde_json::from_str(&std::fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    for key in [
        "norm_a",
        "omega_a",
        "r_a",
        "omega_max",
        "m_max",
        "c_re",
        "c_im",
        "d",
        "formula_d2",
        "normaloid",
        "theorems",
    ] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert!((r["norm_a"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((r["omega_a"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(r["normaloid"], Value::Bool(false));
    for t in r["theorems"].as_array().unwrap() {
        assert!(t.get("id").is_some() && t.get("slack").is_some());
        assert_eq!(t["verdict"], "pass", "{t}");
    }

    let csv = std::fs::read_to_string(d.join("w.csv")).unwrap();
    assert!(csv.starts_with("theta,support,re,im\n"));
    assert_eq!(csv.lines().count(), 91);
    let wmax = std::fs::read_to_string(d.join("w_wmax.csv")).unwrap();
    assert!(wmax.lines().skip(1).all(|l| l.split(',').skip(1).all(|x| x
        .parse::<f64>()
        .unwrap()
        .abs()
        < 1e-12)));

    let svg = std::fs::read_to_string(d.join("w.svg")).unwrap();
    assert!(
        svg.starts_with("<svg") && svg.contains("viewBox") && svg.trim_end().ends_with("</svg>")
    );
}

#[test]
fn compute_prints_to_stdout_without_out() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "t.json", r#"{"dim": 2, "re": [[3, 0], [5, 7]]}"#);
    write(d, "a.json", r#"{"dim": 2, "re": [[1, 0], [0, 0]]}"#);
    let out = bin(&["compute", "--matrix", "t.json", "--weight", "a.json"], d);
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((r["norm_a"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert_eq!(r["normaloid"], Value::Bool(true));
}

#[test]
fn unbounded_pair_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "t.json", r#"{"dim": 2, "re": [[1, 1], [0, 1]]}"#);
    write(d, "a.json", r#"{"dim": 2, "re": [[1, 0], [0, 0]]}"#);
    let out = bin(&["compute", "--matrix", "t.json", "--weight", "a.json"], d);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn verify_is_deterministic_and_clean() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = |out: &'static str, threads: &'static str| {
        [
            "verify",
            "--trials",
            "24",
            "--dims",
            "1..4",
            "--seed",
            "5",
            "--threads",
            threads,
            "--out",
            out,
            "--fail-dir",
            "fails",
        ]
    };
    let a = bin(&args("a.json", "1"), d);
    let b = bin(&args("b.json", "3"), d);
    assert!(
        a.status.success() && b.status.success(),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    let ja = std::fs::read(d.join("a.json")).unwrap();
    assert_eq!(ja, std::fs::read(d.join("b.json")).unwrap());
    let s: Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(s["trials"], 24);
    assert_eq!(s["verdicts"]["fail"], 0);
    assert!(!d.join("fails").exists());
}

#[test]
fn replay_reproduces_a_serialized_instance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let spec = semihilbert::harness::InstanceSpec::new(
        3,
        semihilbert::harness::WeightKind::RankDeficient(2),
        semihilbert::harness::OperatorKind::ACompatibleRandom,
        5,
    );
    let (t, a) = semihilbert::harness::generate(&spec).unwrap();
    let tolerances = semihilbert::harness::Tolerances::default();
    semihilbert::harness::ReplayFile {
        spec,
        t,
        a,
        tolerances,
    }
    .write(d.join("inst.json"))
    .unwrap();
    let out = bin(&["replay", "--instance", "inst.json"], d);
    assert!(out.status.success());
    let direct = semihilbert::harness::verify_spec(&spec, &tolerances)
        .unwrap()
        .to_json();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim_end(), direct);
}

#[test]
fn bad_dims_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["verify", "--dims", "0..3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}
