use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gowerslab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn report(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

const CUBE: &str = r#"{"ell":3,"forms":[[1,0,0],[1,1,0],[1,0,1],[1,1,1]]}"#;
const QUADRATIC: &str = r#"{"p":2,"n":3,"monomials":[{"exps":[1,1,0],"k":0,"c":1},{"exps":[0,1,1],"k":0,"c":1}]}"#;

#[test]
fn depset_on_the_cube() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", CUBE);
    let csv = dir.path().join("lambda.csv");
    let r = report(&run(&[
        "depset",
        "--constraint",
        &cube,
        "--d",
        "1",
        "--k",
        "0",
        "--p",
        "2",
        "--csv",
        csv.to_str().unwrap(),
    ]));
    assert_eq!(r["result"]["size"], 2);
    assert_eq!(r["command"], "depset");
    assert_eq!(r["mode"], "exact");
    assert!(r["version"].is_string());
    assert_eq!(std::fs::read_to_string(csv).unwrap(), "l1,l2,l3,l4\n0,0,0,0\n1,1,1,1\n");
}

#[test]
fn gowers_of_a_quadratic_phase() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "P.json", QUADRATIC);
    let r = report(&run(&["gowers", "--poly", &p, "--order", "3"]));
    assert!((r["result"]["norm"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(r["seed"], 0);
    assert_eq!(r["caps"]["enumeration"], 1 << 24);
}

#[test]
fn tester_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = gowerslab::tester::RFunction::random(2, 4, 2, 1).unwrap();
    let path = dir.path().join("f.bin");
    gowerslab::io::write_rfunction(&path, &f).unwrap();
    let args = [
        "test",
        "--fn",
        path.to_str().unwrap(),
        "--family",
        "affinity",
        "--trials",
        "10000",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["mode"], "sampled");
    assert_eq!(r["seed"], 7);
}

#[test]
fn precondition_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "P.json", QUADRATIC);
    let missing = write(dir.path(), "bad.json", "{\n  \"p\": 2,\n  \"monomials\": []\n}");
    let out = run(&["gowers", "--poly", &missing, "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("`n`") && msg.contains("line"), "{msg}");

    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"kind":"factorization","p":3,"d":2,"degrees":[1,1],"gamma":null}"#,
    );
    let out = run(&["degstruct", "--poly", &p, "--spec", &spec]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("field mismatch"));

    let out = bin()
        .args(["gowers", "--poly", &p, "--order", "4"])
        .env("GOWERSLAB_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain too large"));

    assert_eq!(run(&["gowers", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn human_summary_goes_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.json", CUBE);
    let out_path = dir.path().join("r.json");
    let out = run(&[
        "complexity",
        "--constraint",
        &cube,
        "--p",
        "2",
        "--human",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("complexity 1"));
    let r: serde_json::Value = serde_json::from_slice(&std::fs::read(out_path).unwrap()).unwrap();
    assert_eq!(r["result"]["complexity"], 1);
}
