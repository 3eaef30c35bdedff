use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value as Json;
use twzeta::cli::main_with;
use twzeta::closed::{zeta_nn1_neg, EvalRequest};
use twzeta::number::ExactValue;
use twzeta::poly::ParameterSet;

const FIXTURE: &str = r#"{"n":2,"k":1,"gamma":["1","1"],"b":["1","2"],"mu":["1/2"],"N":[0,0]}"#;
const THREE: &str = r#"{"n":3,"k":2,"gamma":["1","1","1"],"b":["1","2","3"],"mu":["1/2","1/3"],"N":[0,1,0]}"#;

fn run(args: &[&str], input: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["twzeta"];
    argv.extend_from_slice(args);
    let code = main_with(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn json_lines(text: &str) -> Vec<Json> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn suite_path() -> String {
    format!("{}/fixtures/suite.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn value_one_fixture() {
    let (code, out) = run(&["eval-nn1"], FIXTURE);
    assert_eq!(code, 0);
    let v = json_lines(&out);
    assert_eq!(v.len(), 1, "n = 2 has one prefactor convention");
    assert_eq!(v[0]["value"], serde_json::json!({"L": 2, "coeffs": ["1"]}));
    let (code, out) = run(&["eval-nn1", "--out", "text"], FIXTURE);
    assert_eq!(code, 0);
    assert_eq!(out, "nn1: 1 in Q(ζ_2)\n");
}

#[test]
fn shifts_on_the_cut_exit_two() {
    let bad = r#"{"n":2,"k":1,"gamma":["1","1"],"b":["1","1"],"mu":["1/2"],"N":[0,0]}"#;
    let (code, out) = run(&["eval-nn1"], bad);
    assert_eq!(code, 2);
    let e = &json_lines(&out)[0];
    assert_eq!(e["error"], "validation");
    assert_eq!(e["condition"], "b_n - b_{n-1} not in (-inf, 0]");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["eval-nn1", "--bogus"], FIXTURE).0, 2);
    assert_eq!(run(&["eval-nn1", "--variant", "neither"], FIXTURE).0, 2);
    assert_eq!(run(&["frobnicate"], FIXTURE).0, 2);
    assert_eq!(run(&["eval-nn1"], "{not json").0, 2);
    assert_eq!(run(&["eval-nn1"], r#"{"n":2,"k":1,"gamma":["1","1"],"b":["1","2"],"mu":["1/2"]}"#).0, 2);
    // twist count does not fit the family
    assert_eq!(run(&["eval-fully-twisted"], FIXTURE).0, 2);
    // free angles need numeric mode
    let angle = r#"{"n":2,"k":1,"gamma":["1","1"],"b":["1","2"],"mu":["0.3"],"N":[0,0]}"#;
    assert_eq!(run(&["eval-nn1"], angle).0, 2);
    assert_eq!(run(&["eval-nn1", "--mode", "numeric"], angle).0, 0);
}

#[test]
fn exact_output_round_trips() {
    let (code, out) = run(&["eval-nn1", "--variant", "both"], THREE);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 2);
    let p = ParameterSet::from_json_str(THREE).unwrap();
    for line in &lines {
        let printed = ExactValue::from_json(&line["value"]).unwrap();
        let v = twzeta::closed::Variant::parse(line["variant"].as_str().unwrap()).unwrap();
        let lib = zeta_nn1_neg(&EvalRequest::new(p.clone(), vec![0, 1, 0]).variant(v)).unwrap();
        assert_eq!(&printed, lib.value.as_exact().unwrap());
    }
    let (_, text) = run(&["eval-nn1", "--variant", "derived", "--out", "text"], THREE);
    let body = text.trim_end().split_once(": ").unwrap().1;
    let lib = zeta_nn1_neg(&EvalRequest::new(p, vec![0, 1, 0])).unwrap();
    assert_eq!(&ExactValue::from_text(body).unwrap(), lib.value.as_exact().unwrap());
}

#[test]
fn output_is_deterministic() {
    for args in [&["eval-nn1", "--variant", "both"][..], &["eval-nn1", "--mode", "numeric", "--prec", "200"][..]] {
        let a = run(args, THREE);
        let b = run(args, THREE);
        assert_eq!(a, b);
    }
    let a = run(&["oracle-check"], FIXTURE);
    let b = run(&["oracle-check"], FIXTURE);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn point_and_theta_flags() {
    let two = r#"{"n":2,"k":0,"gamma":["1","1"],"b":["1","2"],"mu":[]}"#;
    let (code, out) = run(&["eval-nn2-theta", "--point", "0,0", "--theta", "1", "--out", "text"], two);
    assert_eq!(code, 0);
    assert_eq!(out, "nn2_theta: 23/12 in Q(ζ_1)\n");
    let (code, out) = run(&["eval-nn2-theta", "--point", "0,0", "--out", "text"], two);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn expand_coefficients() {
    let doc = r#"{"n":2,"k":1,"gamma":["1","1"],"b":["1","2"],"mu":["1/2"],"alpha":[1,1]}"#;
    let (code, out) = run(&["expand-coeffs"], doc);
    assert_eq!(code, 0);
    let v = &json_lines(&out)[0];
    let tilde: Vec<(Vec<u32>, String)> = v["tilde"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (serde_json::from_value(t["k"].clone()).unwrap(), t["c"].as_str().unwrap().to_string()))
        .collect();
    // (X1 + 1)(X1 + X2 + 2)
    let expect = [
        (vec![0, 0], "2"),
        (vec![0, 1], "1"),
        (vec![1, 0], "3"),
        (vec![1, 1], "1"),
        (vec![2, 0], "1"),
    ];
    assert_eq!(tilde.len(), expect.len());
    for (k, c) in expect {
        assert!(tilde.contains(&(k.clone(), c.to_string())), "{k:?}");
    }
    assert_eq!(run(&["expand-coeffs", "--alpha", "1,x"], doc).0, 2);
}

#[test]
fn shipped_suite_passes() {
    let (code, out) = run(&["oracle-check", &suite_path()], "");
    let lines = json_lines(&out);
    let summary = &lines.last().unwrap()["summary"];
    assert_eq!(code, 0, "{out}");
    assert_eq!(summary["failed"], 0);
    for r in &lines[..lines.len() - 1] {
        let tol = r["tolerance_log2"].as_f64().unwrap();
        let best = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter_map(|c| c["log2_discrepancy"].as_f64())
            .fold(f64::INFINITY, f64::min);
        assert!(best < tol || r["checks"].as_array().unwrap().iter().any(|c| c["log2_discrepancy"].is_null()));
    }
    assert_eq!(summary["adjudication"]["adjudicated_variant"], "derived_prefactor");
}

#[test]
fn disagreement_and_undecided_exit_codes() {
    let sep = r#"{"n":3,"k":2,"gamma":["1","1","1"],"b":["1","2","3"],"mu":["1/2","1/3"],"N":[0,0,0]}"#;
    let (code, out) = run(&["oracle-check", "--variant", "as-printed"], sep);
    assert_eq!(code, 1, "{out}");
    // no case separates the conventions: nothing to decide
    let (code, out) = run(&["adjudicate-variant"], FIXTURE);
    assert_eq!(code, 4, "{out}");
    assert_eq!(json_lines(&out).last().unwrap()["adjudication"]["consistent"], false);
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twzeta"))
        .args(["eval-nn1", "--out", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(FIXTURE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "nn1: 1 in Q(ζ_2)\n");
    let st = Command::new(env!("CARGO_BIN_EXE_twzeta")).args(["eval-nn1", "--nope"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
}
