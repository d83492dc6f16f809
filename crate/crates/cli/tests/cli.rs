use std::process::{Command, Output};

use num_bigint::BigInt;
use qrr_cli::report::to_json;
use qrr_core::corpus::{Status, VerificationReport};
use qrr_core::{Mismatch, Rational};
use serde_json::Value;

fn qrr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrr"))
        .args(args)
        .env_remove("QRR_DEFAULT_ORDER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Checks one report object against the documented shape.
fn assert_report_shape(v: &Value) {
    let obj = v.as_object().unwrap();
    for key in obj.keys() {
        assert!(
            ["id", "order", "status", "elapsed_ms", "mismatch", "note"].contains(&key.as_str()),
            "{key}"
        );
    }
    assert!(obj["id"].is_string());
    assert!(obj["order"].is_u64());
    assert!(obj["elapsed_ms"].is_u64());
    let status = obj["status"].as_str().unwrap();
    assert!(["pass", "fail", "error"].contains(&status));
    assert_eq!(status == "fail", obj.contains_key("mismatch"));
    if let Some(m) = obj.get("mismatch") {
        let m = m.as_object().unwrap();
        assert_eq!(m.len(), 3);
        assert!(m["exponent"].is_u64());
        for side in ["lhs", "rhs"] {
            let s = m[side].as_str().unwrap();
            let (p, q) = s.split_once('/').unwrap();
            p.parse::<BigInt>().unwrap();
            assert!(q.parse::<BigInt>().unwrap() > BigInt::from(0));
        }
    }
}

#[test]
fn finite_identity_at_order_zero() {
    let o = qrr(&["verify", "--id", "qbi-8.1", "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_report_shape(&v);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["order"], 0);
}

#[test]
fn expand_gaussian_binomial() {
    let o = qrr(&["expand", "qbinom(4,2,1)", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\t1\n1\t1\n2\t2\n3\t1\n4\t1\n");
    let o = qrr(&["expand", "qbinom(4,2,1)", "--order", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["1/1", "1/1", "2/1", "1/1", "1/1"])
    );
}

#[test]
fn expand_with_x() {
    let o = qrr(&["expand", "chebv(x, 3) + q", "--order", "1", "--x", "3/2"]);
    assert_eq!(stdout(&o), "0\t13\n1\t1\n");
    let o = qrr(&["expand", "chebv(x, 3)", "--order", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let o = qrr(&["verify", "--id", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonexistent"));
    assert_eq!(qrr(&["verify"]).status.code(), Some(2));
    assert_eq!(qrr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        qrr(&["verify", "--id", "dyson-1.1", "--order", "ten"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qrr(&["verify", "--id", "dyson-1.1", "--x", "1/2"]).status.code(),
        Some(2)
    );
    let o = qrr(&["expand", "poch(q, q,", "--order", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 11"));
}

#[test]
fn list_prints_every_id() {
    let o = qrr(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ids: Vec<&str> = text.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(ids.len(), qrr_core::corpus::registry().len());
    assert!(ids.contains(&"dyson-1.1") && ids.contains(&"heine"));
}

#[test]
fn environment_order_and_flag_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qrr"));
        c.args(["verify", "--id", "dyson-1.1"]);
        if let Some(f) = flag {
            c.args(["--order", f]);
        }
        match env {
            Some(e) => c.env("QRR_DEFAULT_ORDER", e),
            None => c.env_remove("QRR_DEFAULT_ORDER"),
        };
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["order"].as_u64().unwrap()
    };
    let default = qrr_core::corpus::lookup("dyson-1.1").unwrap().default_order as u64;
    assert_eq!(run(None, None), default);
    assert_eq!(run(Some("12"), None), 12);
    assert_eq!(run(Some("12"), Some("7")), 7);
}

#[test]
fn single_point_and_table_output() {
    let o = qrr(&[
        "verify", "--id", "thm-1.1", "--order", "30", "--x", "-3/2", "--format", "table",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("1/1 passed\n"));
}

#[test]
fn verify_all_reports_every_record() {
    let o = qrr(&["verify-all", "--order", "20", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), qrr_core::corpus::registry().len());
    for v in &lines {
        assert_report_shape(v);
        assert_eq!(v["status"], "pass", "{v}");
    }
}

#[test]
fn fail_and_error_reports_serialize() {
    let fail = VerificationReport {
        id: "demo".into(),
        order: 10,
        status: Status::Fail,
        elapsed_ms: 3,
        mismatch: Some(Mismatch {
            exponent: 4,
            lhs: Rational::new(3.into(), 2.into()),
            rhs: Rational::from_integer((-7).into()),
        }),
        note: Some("x = 1/2".into()),
    };
    let v: Value = serde_json::from_str(&to_json(&fail)).unwrap();
    assert_report_shape(&v);
    assert_eq!(
        v["mismatch"],
        serde_json::json!({"exponent": 4, "lhs": "3/2", "rhs": "-7/1"})
    );

    let error = VerificationReport {
        status: Status::Error,
        mismatch: None,
        note: Some("boom".into()),
        ..fail
    };
    let v: Value = serde_json::from_str(&to_json(&error)).unwrap();
    assert_report_shape(&v);
    assert_eq!(v["status"], "error");
}
