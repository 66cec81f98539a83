use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn vtamari(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vtamari"))
        .args(args)
        .env("VTAMARI_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn theta_polynomials() {
    let dir = TempDir::new().unwrap();
    let out = vtamari(dir.path(), &["theta", "--n", "2", "--charpoly"]);
    assert_eq!(String::from_utf8(out.stdout.clone()).unwrap().trim(), r#"{"coeffs":[1,1,1]}"#);
    assert_eq!(json_of(&vtamari(dir.path(), &["theta", "--n", "1", "--closed"])), json!({"coeffs": [1, 1]}));
    let m = json_of(&vtamari(dir.path(), &["theta", "--n", "2", "--matrix"]));
    assert_eq!(m["data"], json!([0, 1, -1, -1]));
}

#[test]
fn qbasis_unit_vertex() {
    let dir = TempDir::new().unwrap();
    let q = json_of(&vtamari(dir.path(), &["qbasis", "--tree", "(..)"]));
    assert_eq!(q, json!([{"coeff": 1, "tree": "m[*,*,*]"}]));
}

#[test]
fn trees_and_tamari() {
    let dir = TempDir::new().unwrap();
    let t = json_of(&vtamari(dir.path(), &["trees", "--n", "3"]));
    assert_eq!(t["count"], 5);
    assert_eq!(t["trees"][0], "(((..).).)");

    let summary = json_of(&vtamari(dir.path(), &["tamari", "--n", "4"]));
    assert_eq!(summary["elements"], 14);
    assert_eq!(summary["minimum"], "((((..).).).)");
    assert!(dir.path().read_dir().unwrap().count() > 0, "poset cached");
    // a second run reads the cached file
    assert_eq!(json_of(&vtamari(dir.path(), &["tamari", "--n", "4"])), summary);

    let covers = json_of(&vtamari(dir.path(), &["tamari", "--n", "2", "--covers"]));
    assert_eq!(covers["covers"], json!([["((..).)", "(.(..))"]]));
    let mu = json_of(&vtamari(dir.path(), &["tamari", "--n", "2", "--mobius"]));
    assert_eq!(mu["matrix"]["data"], json!([1, 0, -1, 1]));
}

#[test]
fn products_stay_in_input_basis() {
    let dir = TempDir::new().unwrap();
    let s = json_of(&vtamari(dir.path(), &["product", "--op", "star", "--basis", "S", "(..)", "(..)"]));
    assert_eq!(s, json!({"n": 2, "basis": "S", "coords": [1, 1]}));
    let p = json_of(&vtamari(dir.path(), &["product", "--op", "over", "--basis", "P", "(..)", "(..)"]));
    assert_eq!(p["basis"], "P");
    let text = vtamari(dir.path(), &["--format", "text", "product", "--op", "under", "(..)", "(..)"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().trim(), "S_(.(..))");
}

#[test]
fn symfun_degree_two() {
    let dir = TempDir::new().unwrap();
    for which in ["chv", "legendre"] {
        let f = json_of(&vtamari(dir.path(), &["symfun", "--which", which, "--degree", "2"]));
        assert_eq!(f["N"], 2);
        assert_eq!(f["terms"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let code = |args: &[&str]| vtamari(dir.path(), args).status.code();
    assert_eq!(code(&["verify", "dimension", "--max-n", "3"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["qbasis", "--tree", "(.."]), Some(2));
    assert_eq!(code(&["product", "--op", "star", "--basis", "Q", "(..)", "(..)"]), Some(2));
    assert_eq!(code(&["verify", "no-such-suite"]), Some(2));
    assert_eq!(code(&["trees", "--n", "40"]), Some(3));
    assert_eq!(code(&["verify", "periodicity", "--max-n", "50"]), Some(3));
    assert_eq!(code(&["symfun", "--which", "chw", "--degree", "1000"]), Some(3));
}

#[test]
fn verify_report_schema() {
    let dir = TempDir::new().unwrap();
    let r = json_of(&vtamari(dir.path(), &["verify", "groebner-confluence"]));
    assert_eq!(r["suite"], "groebner-confluence");
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"));
    assert!(r.get("duration_ms").is_none_or(Value::is_null));
}

#[test]
fn verify_all_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["verify", "all", "--max-n", "4", "--seed", "42"];
    let a = vtamari(dir.path(), &args);
    let b = vtamari(dir.path(), &args);
    assert!(a.status.success(), "stderr: {}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}
