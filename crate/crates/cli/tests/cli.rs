use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gprime"))
        .args(args)
        .env_remove("GPRIME_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_map(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn roots_g2() {
    let out = gprime(&["roots", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["command"], "roots");
    assert_eq!(v["numPositiveRoots"], 6);
    assert_eq!(v["degrees"], serde_json::json!([2, 6]));
    assert_eq!(v["selfDual"], true);
    assert_eq!(v["weylGroupOrder"], "12");
}

#[test]
fn sl2_case_4_scalar_is_i() {
    let out = gprime(&["sl2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let m = &v["modules"][0];
    assert_eq!(m["module"], "R3");
    assert_eq!(m["scalarSubgroup"]["order"], 4);
    assert_eq!(m["scalarSubgroup"]["generator"], "i");
}

#[test]
fn sl2_by_module_spec() {
    let out = gprime(&["sl2", "R4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["caseId"], 5);
}

#[test]
fn transpose_is_a_member_for_a2() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_map(dir.path(), "transpose.json", r#"{"builtin": "transpose"}"#);
    let out = gprime(&["gprime", "A2", "--map", &map]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["membership"]["method"], "symbolic");
}

#[test]
fn explicit_maps_on_modules() {
    let dir = tempfile::tempdir().unwrap();
    // i·Id on R3 is a member, 2·Id is not.
    let i = write_map(
        dir.path(),
        "i.json",
        r#"{"dim": 4, "entries": [["i","0","0","0"],["0","i","0","0"],["0","0","i","0"],["0","0","0","i"]]}"#,
    );
    let out = gprime(&["gprime", "R3", "--map", &i]);
    assert_eq!(out.status.code(), Some(0));
    let two = write_map(dir.path(), "two.json", r#"{"builtin": "scalar:2"}"#);
    let out = gprime(&["gprime", "R3", "--map", &two]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["member"], false);
}

#[test]
fn minus_identity_moves_an_odd_generator_of_a2() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_map(dir.path(), "m.json", r#"{"builtin": "minus-identity"}"#);
    let out = gprime(&["gprime", "A2", "--map", &map]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["membership"]["movedGenerator"], "c3");
}

#[test]
fn psi_b2() {
    let out = gprime(&["psi", "B2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["minusPsi"]["isAutomorphism"], false);
    assert_eq!(v["minusPsi"]["membership"]["member"], true);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = gprime(&["psi", "A3", "--seed", "7", "--output", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let first = gprime(&["stabilizer", "R2+R1"]);
    let second = gprime(&["stabilizer", "R2+R1"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_gprime"))
        .args(["roots", "B3"])
        .env("GPRIME_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("roots-B3.json")).unwrap()).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([2, 4, 6]));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(gprime(&["roots", "X3"]).status.code(), Some(2));
    assert_eq!(gprime(&["roots", "E9"]).status.code(), Some(2));
    assert_eq!(gprime(&["sl2", "6"]).status.code(), Some(2));
    assert_eq!(gprime(&["stabilizer", "R7"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let wrong = write_map(dir.path(), "w.json", r#"{"dim": 2, "entries": [["1","0"],["0","1"]]}"#);
    assert_eq!(gprime(&["gprime", "A2", "--map", &wrong]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(gprime(&["gprime", "A2", "--map", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_all_reports_the_failing_criteria() {
    let out = gprime(&["verify-all", "--max-rank", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["failed"], serde_json::json!([7, 9]));
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
}
