//! The binary end to end: exit codes, formats and determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gradinv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().expect("wait")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

const DIM1: &str = r#"{"case":"dim1","orders":[2,2],
  "mu":{"values":{"[0,0]":1,"[0,1]":1,"[1,0]":1,"[1,1]":-1}},
  "eta":{"values":{"[0,0]":1,"[0,1]":1,"[1,0]":1,"[1,1]":-1}}}"#;

const COMPLEX_1: &str = r#"{"case":"dim1","orders":[2],
  "mu":{"values":{"[0]":1,"[1]":-1}},
  "eta":{"values":{"[0]":1,"[1]":-1}}}"#;

#[test]
fn classify_from_stdin() {
    let o = bin(&["classify"], Some(DIM1));
    assert!(o.status.success());
    assert_eq!(json(&o), serde_json::json!({"family":"1-a","item":"1","m":1,"n":2}));
    let o = bin(&["classify", "-"], Some(COMPLEX_1));
    assert_eq!(json(&o)["family"], "1-c");
    assert_eq!(json(&o)["item"], "1");
}

#[test]
fn represent_examples() {
    let o = bin(&["represent", "1-b-1", "--n", "4"], None);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["profile"]["type"], "symplectic");
    assert!(v["form_matrix"]["entries"].is_array());
    let o = bin(&["represent", "2-f-2-0", "--profile", "2,3"], None);
    assert!(o.status.success());
    assert_eq!(json(&o)["algebra"]["matrix_size"], 6);
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(bin(&["nope"], None).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--format", "yaml"], None).status.code(), Some(2));
    let o = bin(&["classify"], Some("{not json"));
    assert_eq!(o.status.code(), Some(1));
    let d: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(d["error"], "Parse");
    let o = bin(&["construct", "--blocks", "M3R"], None);
    assert_eq!(o.status.code(), Some(1));
    let semi = r#"{"case":"semisimple","orders":[4],"dim":1,"mu":{"values":{"[0]":1}},"eta":{"values":{"[0]":1}}}"#;
    let o = bin(&["classify", semi], None);
    assert_eq!(o.status.code(), Some(1));
    let d: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(d["error"], "SecondKindImpossible");
}

#[test]
fn verify_and_determinism() {
    let a = bin(&["verify", "--suite", "census"], None);
    assert!(a.status.success());
    assert_eq!(json(&a)["pass"], true);
    let b = bin(&["verify", "--suite", "census"], None);
    assert_eq!(a.stdout, b.stdout);
    let c = bin(&["construct", "--blocks", "M2R,H", "--format", "table"], None);
    let d = bin(&["construct", "--blocks", "M2R,H", "--format", "table"], None);
    assert!(c.status.success());
    assert_eq!(c.stdout, d.stdout);
    assert!(String::from_utf8_lossy(&c.stdout).contains("structure"));
}

#[test]
fn invariants_and_distinguished() {
    let o = bin(&["invariants", "--input", DIM1], None);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["signature"], 2);
    assert_eq!(v["type"], "orthogonal");
    let o = bin(&["distinguished", "1-a-1", "--n", "4"], None);
    assert!(o.status.success());
    assert!(json(&o)["form_matrix"].is_object());
    let o = bin(&["distinguished", "2-f-2-0", "--profile", "4"], None);
    assert!(o.status.success());
    assert!(json(&o)["laws"]["violations"].as_array().unwrap().is_empty());
    let o = bin(&["distinguished", "1-a-2", "--n", "2"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["enumerate", "--max-order", "2"], None);
    assert!(json(&o)["count"].as_u64().unwrap() > 10);
}
