use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_artin-sigma"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sigma2_on_first_example() {
    let f = fixture("first_example.json");
    let out = run(&["--input", f.to_str().unwrap(), "--command", "sigma2", "--json"]);
    let v = json_of(&out);
    assert_eq!(v["result"]["sigma2"]["verdict"], "yes");
    assert_eq!(v["result"]["sigma2"]["provenance"], "sigma2-sufficient-criterion");
    assert_eq!(v["result"]["sigma2"]["conditional_on_kpi1"], false);
}

#[test]
fn fibring_on_second_example() {
    let f = fixture("second_example_chi2.json");
    let v = json_of(&run(&["--input", f.to_str().unwrap(), "--command", "fibring", "--json"]));
    assert_eq!(v["result"]["summary"], "kernel not finitely generated");
    let f = fixture("second_example_chi1.json");
    let v = json_of(&run(&["--input", f.to_str().unwrap(), "--command", "fibring", "--json"]));
    assert_eq!(v["result"]["summary"], "finitely generated but not finitely presented");
}

#[test]
fn scan_odd_path() {
    let v = json_of(&run(&["--inline", "a-b:3", "--command", "scan", "--bound", "1", "--json"]));
    assert_eq!(v["result"]["all_in_sigma1"], true);
    assert_eq!(v["result"]["all_in_sigma2"], true);
    assert_eq!(v["result"]["classes"], 2);
}

#[test]
fn output_is_byte_identical() {
    let f = fixture("second_example_chi2.json");
    let a = run(&["--input", f.to_str().unwrap(), "--command", "homology"]);
    let b = run(&["--input", f.to_str().unwrap(), "--command", "homology"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::File::create(&bad).unwrap().write_all(b"{\"vertices\": [\"a\", \"b\"], \"edges\": [[\"a\", \"b\", 1]]}").unwrap();
    let out = run(&["--input", bad.to_str().unwrap(), "--command", "classify"]);
    assert_eq!(out.status.code(), Some(2));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ \"vertices\": [").unwrap();
    assert_eq!(run(&["--input", broken.to_str().unwrap(), "--command", "classify"]).status.code(), Some(2));

    let out = run(&["--inline", "a-b:3;a=1/2,b=1/2", "--command", "homology"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("discrete"));

    assert_eq!(run(&["--inline", "a-b:3", "--command", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["--inline", "a-b:3", "--command", "scan", "--bound", "9"]).status.code(), Some(2));
}

#[test]
fn assume_kpi1_is_recorded() {
    let v = json_of(&run(&["--inline", "a-b:3,b-c:3,a-c:3;a=1,b=1,c=1", "--command", "sigma2", "--assume-kpi1", "--json"]));
    assert_eq!(v["assume_kpi1"], true);
    assert!(v["result"]["sigma2"]["provenance_assumption"].is_string());
}

#[test]
fn character_flag_and_text_output() {
    let f = fixture("first_example.json");
    let out = run(&[
        "--input",
        f.to_str().unwrap(),
        "--character",
        "a1=1,a2=1,a3=1,b1=0,b2=0,c1=0",
        "--command",
        "sigma1",
        "--text",
    ]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("result.sigma1.verdict: no"), "{s}");
    assert!(s.contains("result.sigma1.provenance: meier-necessary"));
}
