use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn superq(args: &[&str], field: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_superq"));
    cmd.args(args).env_remove("SUPERQ_FIELD");
    if let Some(f) = field {
        cmd.env("SUPERQ_FIELD", f);
    }
    cmd.output().unwrap()
}

fn write_tmp(name: &str, v: &Value) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("superq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn basis(parities: &[&str]) -> Value {
    parities.iter().enumerate().map(|(i, p)| json!({ "label": format!("e{i}"), "parity": p })).collect()
}

/// `[h, x] = y`, `[h, y] = -x`: the Cartan element acts by a rotation.
fn rotation() -> Value {
    json!({
        "name": "rot",
        "basis": basis(&["even", "odd", "odd"]),
        "brackets": [[0, 1, [[2, "1"]]], [0, 2, [[1, "-1"]]]],
    })
}

fn report(args: &[&str], field: Option<&str>) -> (i32, Value) {
    let out = superq(args, field);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn jacobi_violation_exits_1_with_triples() {
    // [x, x] = h with h acting nontrivially on x breaks the Jacobi identity.
    let bad = json!({
        "name": "bad",
        "basis": basis(&["even", "odd"]),
        "brackets": [[0, 1, [[1, "1"]]], [1, 1, [[0, "1"]]]],
    });
    let p = write_tmp("bad.json", &bad);
    let (code, v) = report(&["report", p.to_str().unwrap()], None);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    let jac = v["validation"]["jacobi"].as_array().unwrap();
    assert!(!jac.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(superq(&["report", "nosuch(3)"], None).status.code(), Some(2));
    assert_eq!(superq(&["verify", "nosuch"], None).status.code(), Some(2));
    assert_eq!(superq(&["report", "gl(1,1)"], Some("x,y")).status.code(), Some(2));
}

#[test]
fn extension_needed_exits_3_and_the_field_resolves_it() {
    let p = write_tmp("rot.json", &rotation());
    let (code, v) = report(&["report", p.to_str().unwrap()], None);
    assert_eq!(code, 3);
    let poly = v["extension_needed"].as_str().unwrap();
    assert!(poly.contains("t^2") && poly.contains('1'), "{poly}");
    let (code, v) = report(&["report", p.to_str().unwrap()], Some("1,0,1"));
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ok"], true);
}

#[test]
fn gl22_report_values() {
    let (code, v) = report(&["report", "gl(2,2)", "--skip", "repn"], None);
    assert_eq!(code, 0);
    assert_eq!(v["algebra"]["dims"], json!([8, 8]));
    let f = &v["structure"]["filtration"]["value"];
    assert_eq!(f["core"]["dims"], json!([6, 8]));
    assert_eq!(f["core"]["h2_restricted"]["value"], 3);
    let h2 = &v["dercoh"]["h2_restricted"]["value"];
    assert_eq!((h2["dim"].as_u64(), h2["formula_dim"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn construct_and_convert_roundtrip() {
    let out = superq(&["construct", "osp(1,2)"], None);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let src = write_tmp("osp.json", &v);
    let dst = src.with_file_name("osp2.json");
    assert!(superq(&["convert", src.to_str().unwrap(), dst.to_str().unwrap()], None).status.success());
    let back: Value = serde_json::from_str(&std::fs::read_to_string(&dst).unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn verify_lists_and_runs() {
    let out = superq(&["verify", "--list"], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("jacobi"));
    let out = superq(&["verify", "jacobi", "--algebra", "gl(2,1)", "--algebra", "q(2)"], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("2 passed, 0 failed"));
}

#[test]
fn reports_are_deterministic() {
    let a = superq(&["report", "osp(1,2)", "--seed", "7"], None);
    let b = superq(&["report", "osp(1,2)", "--seed", "7"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
