//! End-to-end tests of the bp2 binary: spec'd example outputs, exit-code
//! contract, literal round-trips through JSON, and byte-level determinism.

use std::process::{Command, Output};

fn bp2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bp2"))
        .args(args)
        .env_remove("BP2_MAX_POINTS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn moment_example_from_word() {
    let out = bp2(&[
        "moment",
        "--weight",
        "q:1/2",
        "--word",
        "w:e1 w:e1 w:e1 w:e1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5/2");
}

#[test]
fn stats_example() {
    let out = bp2(&["stats", "(1,3)(2,4)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "crossings=1 blocks=1");
}

#[test]
fn psd_certificate_json_and_exit_codes() {
    let out = bp2(&[
        "psd",
        "--weight",
        "q:1/3",
        "--legs",
        "1",
        "--max-pairs",
        "2",
        "--exact",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["psd"]["psd"], serde_json::json!(true));
    assert_eq!(v["weight"], serde_json::json!("q:1/3"));

    // mathematical negative: exit 2 with a witness
    let out = bp2(&[
        "psd",
        "--weight",
        "qcr:-2",
        "--legs",
        "2",
        "--max-pairs",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["psd"]["psd"], serde_json::json!(false));
    assert!(v["psd"]["witness"]
        .as_array()
        .map(|a| !a.is_empty())
        .unwrap_or(false));
}

#[test]
fn usage_errors_exit_one() {
    let out = bp2(&["moment", "--weight", "nonsense", "--word", "w:e1 w:e1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bp2(&["stats", "(1,2)(2,3)"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bp2(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    let out = bp2(&["moment", "--weight", "free"]);
    assert_eq!(out.status.code(), Some(1), "needs --word or --pattern");
}

#[test]
fn enumerate_respects_max_points_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_bp2"))
        .args(["enumerate", "10", "--count"])
        .env("BP2_MAX_POINTS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_bp2"))
        .args(["enumerate", "10", "--count"])
        .env("BP2_MAX_POINTS", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "945");
}

#[test]
fn enumerate_json_literals_reparse() {
    let out = bp2(&["enumerate", "6", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["count"], serde_json::json!(15));
    for lit in v["partitions"].as_array().unwrap() {
        let lit = lit.as_str().unwrap();
        let reparse = bp2(&["stats", lit]);
        assert!(reparse.status.success(), "literal {lit} must reparse");
    }
}

#[test]
fn eval_weight_specs() {
    for (weight, partition, expect) in [
        ("bosonic", "(1,3)(2,4)", "1"),
        ("free", "(1,3)(2,4)", "0"),
        ("fermionic", "(1,3)(2,4)", "-1"),
        ("q:-1/2", "(1,3)(2,4)", "-1/2"),
        ("qcr:1/2", "(1,4)(2,5)(3,6)", "1/8"),
    ] {
        let out = bp2(&["eval", "--weight", weight, partition]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expect, "{weight} on {partition}");
    }
}

#[test]
fn fock_moment_pattern() {
    let out = bp2(&[
        "moment",
        "--weight",
        "q:1/2",
        "--pattern",
        "a:e1 a:e2 c:e1 c:e2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/2");
    let out = bp2(&["moment", "--weight", "q:1/2", "--pattern", "c:e1 a:e1"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn wick_transform_and_inner() {
    let out = bp2(&["wick", "to-moments", "2; (); 1:e1 2:e1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-1"), "Mobius sign visible: {text}");
    let out = bp2(&[
        "wick",
        "inner",
        "--weight",
        "q:1/2",
        "2; (1,2);",
        "2; (1,2);",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn standard_form_roundtrips() {
    for lit in ["(1,2)", "(1,4)(2,3)", "(1,3)(2,4)", "(1,4)(2,6)(3,5)"] {
        let out = bp2(&["standard-form", lit, "--format", "json"]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(v["roundtrip"], serde_json::json!(true), "{lit}");
    }
}

#[test]
fn fock_sim_agreement() {
    let out = bp2(&[
        "fock-sim",
        "--weight",
        "q:-1/2",
        "--dim",
        "2",
        "--levels",
        "2",
        "--len-cap",
        "4",
        "--pattern",
        "a:e1 a:e2 c:e1 c:e2",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["agree"], serde_json::json!(true));
    assert_eq!(v["model_value"], serde_json::json!("-1/2"));
}

#[test]
fn theta_refuses_indefinite_input_cleanly() {
    // The crossing family at q = -2 is rotation invariant but its sector-2
    // Gram is indefinite, so no quotient exists: exit 2, not a crash.
    let out = bp2(&[
        "theta",
        "--weight",
        "qcr:-2",
        "--max-legs",
        "2",
        "--max-pairs",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not positive"), "diagnostic: {err}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        vec!["enumerate", "8"],
        vec![
            "gram",
            "--weight",
            "q:1/2",
            "--legs",
            "2",
            "--max-pairs",
            "2",
            "--format",
            "json",
        ],
        vec![
            "theta",
            "--weight",
            "q:-1/2",
            "--max-legs",
            "2",
            "--max-pairs",
            "1",
            "--format",
            "json",
        ],
        vec!["check", "partitions", "--format", "json"],
    ];
    for a in &args {
        let first = bp2(a);
        let second = bp2(a);
        assert_eq!(first.stdout, second.stdout, "{a:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn gram_json_diagram_literals_reparse() {
    let out = bp2(&[
        "gram",
        "--weight",
        "q:1/2",
        "--legs",
        "1",
        "--max-pairs",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 4);
    for lit in basis {
        let lit = lit.as_str().unwrap();
        let d: bp2_core::semigroup::Diagram = lit.parse().expect("literal reparses");
        assert_eq!(d.to_string(), lit, "canonical form is stable");
    }
}

#[test]
fn eval_diagram_literal_through_hat_extension() {
    // open legs evaluate to zero under t-hat
    let out = bp2(&["eval", "--weight", "q:1/2", "BP{1; pairs=; L=[1]; R=[]}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
    // a legless diagram is its pair partition
    let out = bp2(&[
        "eval",
        "--weight",
        "q:1/2",
        "BP{4; pairs=(1,3)(2,4); L=[]; R=[]}",
    ]);
    assert_eq!(stdout(&out).trim(), "1/2");
}

#[test]
fn check_suites_pass() {
    for suite in ["partitions", "semigroup", "weights", "wick"] {
        let out = bp2(&["check", suite]);
        assert!(out.status.success(), "suite {suite}");
        assert!(!stdout(&out).contains("FAIL"));
    }
}
