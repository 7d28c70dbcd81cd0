//! End-to-end behaviour of the `qrr` command line.

use std::process::{Command, Output};

use qrr::cli::run_with_registry;
use qrr::identity::{IdentityRecord, Registry};

fn qrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrr"))
        .args(args)
        .env_remove("QRR_TRUNC")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn verify_finite_forms() {
    assert_eq!(
        qrr(&["verify", "--id", "ANDREWS1", "--range", "n=0..8", "--trunc", "60"])
            .status
            .code(),
        Some(0)
    );
    let o = qrr(&[
        "verify",
        "--id",
        "LMNRS3",
        "--range",
        "l=0..3,m=0..3,n=0..3,u=1..3,v=1..3",
        "--trunc",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unknown_identity_is_a_config_error() {
    let o = qrr(&["verify", "--id", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown identity"));
}

#[test]
fn malformed_arguments_are_config_errors() {
    assert_eq!(
        qrr(&["verify", "--id", "ANDREWS1", "--range", "n=3..x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qrr(&["verify", "--id", "LMNRS4", "--range", "u=0..2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qrr(&["telescope", "--params", "1,1,1,0,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qrr(&["verify", "--id", "ANDREWS1", "--range", "w=0..2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qrr(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_all_holds_at_low_order() {
    let o = qrr(&["verify-all", "--trunc", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_registry_fails() {
    let reg = Registry::standard();
    let first = reg.get("ANDREWS1").unwrap();
    let second = reg.get("ANDREWS2").unwrap();
    let corrupted = IdentityRecord {
        id: "ANDREWS1",
        citation: "first form with the second form's right side",
        params: first.params.clone(),
        lhs: first.lhs,
        rhs: second.rhs,
    };
    let reg = Registry::from_records(vec![corrupted]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_registry(
        ["qrr", "verify-all", "--trunc", "10"],
        &reg,
        &mut out,
        &mut err,
    );
    assert_eq!(code, 1);
}

#[test]
fn counterexample_is_reproduced() {
    let o = qrr(&["counterexample", "--which", "liu1", "--a-exp", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("LHS = 1 - q"), "{text}");
    assert!(text.contains("RHS = 0"), "{text}");
}

#[test]
fn telescope_and_binomial_examples() {
    assert_eq!(
        qrr(&["telescope", "--params", "1,1,1,1,1", "--trunc", "40"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        qrr(&["binomial", "--bino5", "--n", "12"]).status.code(),
        Some(0)
    );
    assert_eq!(
        qrr(&["bailey", "--n-max", "4", "--trunc", "20"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn json_report_has_the_documented_shape() {
    let o = qrr(&[
        "--format", "json", "verify", "--id", "ANDREWS2", "--range", "n=0..3", "--trunc", "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.ends_with(b"\n"));
    let v = json(&o);
    assert_eq!(v["artifact_version"], "1");
    assert_eq!(v["command"], "verify");
    assert_eq!(v["summary"]["total"], 4);
    assert_eq!(v["summary"]["passed"], 4);
    assert_eq!(v["summary"]["failed"], 0);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 4);
    for r in reports {
        assert_eq!(r["id"], "ANDREWS2");
        assert_eq!(r["verdict"], "equal");
        assert_eq!(r["trunc"], 12);
        assert_eq!(r["millis"], 0);
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "--format", "json", "--jobs", "2", "verify", "--id", "ABCDE1", "--trunc", "12",
    ];
    let a = qrr(&args);
    let b = qrr(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mismatch_reports_carry_windows() {
    let reg = Registry::standard();
    let first = reg.get("ANDREWS1").unwrap();
    let second = reg.get("ANDREWS2").unwrap();
    let corrupted = IdentityRecord {
        id: "MIXED",
        citation: "",
        params: first.params.clone(),
        lhs: first.lhs,
        rhs: second.rhs,
    };
    let reg = Registry::from_records(vec![corrupted]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_registry(
        [
            "qrr", "--format", "json", "verify", "--id", "MIXED", "--range", "n=2..2", "--trunc",
            "10",
        ],
        &reg,
        &mut out,
        &mut err,
    );
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["verdict"], "mismatch");
    assert!(r["mismatch_index"].is_i64());
    assert!(r["lhs_window"].is_array());
    assert!(r["rhs_window"].is_array());
    assert_eq!(v["summary"]["failed"], 1);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = qrr(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "binomial",
        "--bino4",
        "--n",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "binomial");
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn truncation_order_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qrr"))
        .args([
            "--format", "json", "verify", "--id", "ANDREWS1", "--range", "n=1..1",
        ])
        .env("QRR_TRUNC", "17")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["reports"][0]["trunc"], 17);
    let o = qrr(&[
        "--format", "json", "verify", "--id", "ANDREWS1", "--range", "n=1..1",
    ]);
    assert_eq!(json(&o)["reports"][0]["trunc"], 40);
}

#[test]
fn list_names_every_record() {
    let o = qrr(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in Registry::standard().ids() {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
}
