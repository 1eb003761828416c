use std::path::PathBuf;
use std::process::{Command, Output};

fn amalgam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(args)
        .output()
        .expect("run amalgam")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn classify_z4() {
    let o = amalgam(&["classify", "Z4", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = &json(&o)["classification"]["verdicts"];
    assert_eq!(v["p3_arithmetical"]["value"], true);
    assert_eq!(v["p2_wgd_le_1"]["value"], false);
    assert!(v["p2_wgd_le_1"]["witness"].is_object());
}

#[test]
fn classify_r63_has_uv_witness() {
    let o = amalgam(&["classify", "R63", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let g = &json(&o)["classification"]["verdicts"]["p4_gauss"];
    assert_eq!(g["value"], false);
    assert_eq!(g["witness"]["items"], serde_json::json!(["u", "v"]));
}

#[test]
fn classify_zero_ring_is_vacuous() {
    let o = amalgam(&["classify", "(zmod 1)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("zero ring"));
    assert_eq!(text.matches("vacuous").count(), 11);
}

#[test]
fn classify_expression_over_catalog_names() {
    let o = amalgam(&["classify", "(product Z2 Z3)", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["classification"]["verdicts"]["p1_semihereditary"]["value"], true);
}

#[test]
fn classify_unknown_name_is_usage_error() {
    let o = amalgam(&["classify", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spectrum_e8() {
    let o = amalgam(&["spectrum", "E8", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["match"], true);
    assert_eq!(j["direct"]["maximals"].as_array().unwrap().len(), 2);
    assert_eq!(j["max_partition"], serde_json::json!({"lift": 1, "bar": 1}));
}

#[test]
fn spectrum_duplication_z6() {
    let o = amalgam(&["spectrum", "DUP_Z6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Max partition: lift 2, bar 1"));
    assert!(text.contains("match: yes"));
}

#[test]
fn spectrum_of_zero_ideal_matches_base() {
    let spec = temp("zero_ideal.sexp", "(def Z4 (zmod 4))\n(def E (dup Z4 (ideal Z4 0)))\n");
    let o = amalgam(&["spectrum", "E", "--spec", spec.to_str().unwrap(), "--out", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j = json(&o);
    assert_eq!(j["match"], true);
    assert_eq!(j["direct"]["primes"].as_array().unwrap().len(), 1);
}

#[test]
fn spectrum_rejects_non_amalgamation() {
    assert_eq!(amalgam(&["spectrum", "Z4"]).status.code(), Some(2));
}

#[test]
fn verify_default_catalog_passes() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("verify.json");
    let o = amalgam(&["verify", "--jobs", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("PASS"));
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(j["summary"]["failures"], 0);
    assert_eq!(j["schema_version"], 1);
}

#[test]
fn verify_theorem_filter() {
    let o = amalgam(&["verify", "--theorems", "valfib", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let ts = j["theorems"].as_array().unwrap();
    assert_eq!(ts.len(), 1);
    assert_eq!(ts[0]["theorem"], "valfib");
}

#[test]
fn verify_unknown_theorem_is_usage_error() {
    let o = amalgam(&["verify", "--theorems", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown theorem id"));
}

#[test]
fn verify_corrupted_table_fails_with_build_error() {
    let spec = temp(
        "corrupted.sexp",
        "(def T (table (elements 0 1) (zero 0) (one 1) (add 0 1 1 0) (mul 0 1 0 1)))\n(def Z2 (zmod 2))\n",
    );
    let o = amalgam(&["verify", "--spec", spec.to_str().unwrap(), "--out", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["build_errors"][0]["id"], "T");
    assert_eq!(j["summary"]["passed"], false);
}

#[test]
fn verify_syntax_error_reports_position() {
    let spec = temp("syntax.sexp", "(def X (zmod 0))\n");
    let o = amalgam(&["verify", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":1:"), "{}", stderr(&o));
    assert!(stderr(&o).contains("n must be >= 1"));
}

#[test]
fn verify_empty_catalog_succeeds() {
    let spec = temp("empty.sexp", "; nothing here\n");
    let o = amalgam(&["verify", "--spec", spec.to_str().unwrap(), "--out", "-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["summary"]["entries"], 0);
}

#[test]
fn budget_override_is_honoured() {
    let o = amalgam(&["classify", "(zmod 100)", "--max-ring", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget") || stderr(&o).contains("exceeds"), "{}", stderr(&o));
}

#[test]
fn bad_flag_is_usage_error() {
    assert_eq!(amalgam(&["verify", "--frobnicate"]).status.code(), Some(2));
}
