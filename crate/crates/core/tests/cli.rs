use std::process::{Command, Output};

use serde_json::Value;

fn ncloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncloop")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn ok(args: &[&str]) -> String {
    let out = ncloop(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

const P3: &str = r#"{"dim":3,"entries":[[0,1,2],[-1,0,3],[-2,-3,0]]}"#;

#[test]
fn kappa_on_alpha_beta() {
    assert_eq!(ok(&["--genus", "1", "--boundaries", "2", "kappa", "a1", "b1"]), "b1 ⊗ a1");
}

#[test]
fn mu_on_boundary_generator() {
    assert_eq!(ok(&["--genus", "1", "--boundaries", "2", "mu", "d1"]), "3·|1_0| ⊗ d1 − 2·d1 ⊗ |1_0|");
}

#[test]
fn phi_and_mu_agree_up_to_sign() {
    assert_eq!(ok(&["phi", "a1"]), "−|1_0| ⊗ a1 + 1_0 ⊗ |a1|");
    assert_eq!(ok(&["mu", "a1"]), "|1_0| ⊗ a1 − 1_0 ⊗ |a1|");
}

#[test]
fn divergences_of_a_fox_derivative() {
    assert_eq!(ok(&["tdiv", r#"{"a1":[["1_0","1_0",1]]}"#]), "|1_0| ⊗ a1^-1");
    assert_eq!(ok(&["div", r#"{"a1":"1_0"}"#]), "|1_0| ⊗ |a1^-1|");
}

#[test]
fn tables_are_read_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.json");
    std::fs::write(&path, r#"{"a1":[["1_0","1_0",1]]}"#).unwrap();
    assert_eq!(ok(&["tdiv", path.to_str().unwrap()]), "|1_0| ⊗ a1^-1");
}

#[test]
fn modular_and_ham() {
    assert_eq!(ok(&["modular", "a1 b1 a1^-1"]), "0");
    assert_eq!(ok(&["ham", "a1", "b1"]), "1*b1 a1");
}

#[test]
fn tensor_bracket_display() {
    assert_eq!(ok(&["tensor", "bracket", "--pairing", P3, "w1 w2", "w3"]), "3·1_0 ⊗ w1 + 2·w2 ⊗ 1_0");
    assert_eq!(ok(&["tensor", "phi", "--pairing", P3, "w2"]), "0");
}

#[test]
fn json_output_carries_result_and_text() {
    let v: Value = serde_json::from_str(&ok(&["--format", "json", "kappa", "a1", "b1"])).unwrap();
    assert_eq!(v["text"], "b1 ⊗ a1");
    assert_eq!(v["result"], serde_json::json!([["b1", "a1", "1"]]));
}

#[test]
fn verify_all_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let args = [
        "verify", "--suite", "all", "--genus", "1", "--boundaries", "2", "--seed", "7", "--samples", "30", "--report",
        report.to_str().unwrap(),
    ];
    let text = ok(&args);
    assert!(text.ends_with("11/11 suites passed (seed 7, samples 30)"), "{text}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 11);
    for r in reports {
        assert_eq!(r["seed"], 7);
        assert_eq!(r["samples"], 30);
        assert!(r["cases"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["--format", "json", "verify", "--suite", "main-theorem", "--seed", "11", "--samples", "40"];
    let a = ncloop(&args);
    let b = ncloop(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["suite"], "main-theorem");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["kappa", "g1 d1", "a1"][..],
        &["mu", "x1"],
        &["mu", "a2"],
        &["verify", "--suite", "nope"],
        &["--genus", "0", "--boundaries", "0", "mu", "1_0"],
        &["tdiv", r#"{"d1":[["1_0","1_0",1]]}"#],
        &["frobnicate"],
    ] {
        let out = ncloop(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn composability_error_names_the_pair() {
    let out = ncloop(&["kappa", "g1 d1", "a1"]);
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("`g1` ends at object 0 but `d1` starts at object 1"), "{msg}");
}
