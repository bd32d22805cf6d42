use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn dop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dop")).args(args).env_remove("DOP_SEED").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// CSV body without the leading `#` stamp line.
fn csv_body(o: &Output) -> String {
    let s = String::from_utf8(o.stdout.clone()).unwrap();
    let (stamp, body) = s.split_once('\n').unwrap();
    assert!(stamp.starts_with("# dop "), "{stamp}");
    body.to_string()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

fn emit(case: &str, params: &str) -> Output {
    dop(&["catalog", "emit", "--case", case, "--params", params])
}

#[test]
fn emitted_models_verify() {
    let dir = TempDir::new().unwrap();
    for (case, params) in [("thm51_iii2", "p=1/2,q=1"), ("thm51_i4", "p=1,q=1,r=1"), ("thm52_i1", "alpha=1,lambda=1,p=1/2")] {
        let o = emit(case, params);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let path = write(&dir, "m.json", std::str::from_utf8(&o.stdout).unwrap());
        let v = dop(&["verify", &path]);
        assert_eq!(code(&v), 0, "{case}: {}", stderr(&v));
        assert_eq!(stdout_json(&v)["pass"], true);
    }
}

#[test]
fn emission_is_byte_identical() {
    let a = emit("thm51_iii2", "p=1/2,q=1");
    let b = emit("thm51_iii2", "p=1/2,q=1");
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["tool"], "dop");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(v["seed"].is_u64());
}

#[test]
fn violated_inequality_is_reported() {
    let o = emit("thm51_iii2", "p=1/8,q=1");
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("4p>1"), "{}", stderr(&o));
}

#[test]
fn non_squarefree_boundary_fails_verification() {
    let dir = TempDir::new().unwrap();
    let mut m = stdout_json(&emit("thm51_iii2", "p=1/2,q=1"));
    m["gamma"] = json!({"field": "Q", "vars": ["x", "y", "z"], "terms": [{"c": "1", "e": [2, 1, 0]}]});
    let path = write(&dir, "bad.json", &m.to_string());
    let o = dop(&["verify", &path]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("A-squarefree: fail"), "{}", stderr(&o));
}

#[test]
fn unreadable_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "broken.json", "{\"g\": ");
    assert_eq!(code(&dop(&["verify", &path])), 2);
    assert_eq!(code(&dop(&["verify", "/nonexistent/model.json"])), 2);
    assert_eq!(code(&dop(&["verify", "--no-such-flag", &path])), 2);
    assert_eq!(code(&emit("thm51_iii2", "p=one")), 2);
}

#[test]
fn catalog_list_indexes_every_case() {
    let o = dop(&["catalog", "list"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["cases"]["thm51_i4"]["kind"], "solution");
    assert!(v["cases"].as_object().unwrap().len() > 20);
}

#[test]
fn d4_is_a_solution_and_d5_is_weighted() {
    let o = dop(&["coxeter", "emit", "--family", "D4"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    assert_eq!(v["coords"], json!(["X2", "X3", "Z"]));
    assert_eq!(v["degreeViolations"], json!([]));

    let o = dop(&["coxeter", "emit", "--family", "D", "--rank", "5"]);
    assert_eq!(code(&o), 3);
    let v = stdout_json(&o);
    assert_eq!(v["weighted"], true);
    assert_eq!(v["degreeViolations"][0]["degree"], 3);
}

#[test]
fn closed_form_matches_oracle() {
    for args in [
        vec!["--family", "A", "--rank", "5"],
        vec!["--family", "A1A", "--rank", "3", "--variant", "2"],
        vec!["--family", "Product", "--factors", "T1,B2,A1", "--variant", "2"],
    ] {
        let mut full = vec!["coxeter", "emit", "--check-oracle"];
        full.extend(&args);
        let o = dop(&full);
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        assert_eq!(stdout_json(&o)["oracle"], "match");
    }
    assert_eq!(code(&dop(&["coxeter", "emit", "--family", "A"])), 2);
    assert_eq!(code(&dop(&["coxeter", "emit", "--family", "Q", "--rank", "3"])), 2);
}

#[test]
fn twisted_cubic_has_six_cometrics() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "cubic.json", r#"{"var": "t", "components": ["t", "t^2", "t^3"]}"#);
    let o = dop(&["surface", "solve", "--curve", &path]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["basis"].as_array().unwrap().len(), 6);
}

#[test]
fn cone_solve_reports_a_verdict() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "cone.json", r#"{"components": ["1", "t", "t^3"]}"#);
    let o = dop(&["surface", "solve", "--cone", "--curve", &path]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    assert_eq!(v["surface"], "cone");
    assert_eq!(v["forcedFactor"]["factor"], "x^2");
    let verdict = v["forcedFactor"]["report"]["verdict"].as_str().unwrap();
    assert!(["forced", "not-forced", "indeterminate"].contains(&verdict));
}

#[test]
fn sampling_writes_points() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "gamma.txt", "x^2 + y^2 + z^2 - 1\n");
    let o = dop(&["surface", "sample", "--gamma", &path, "--grid", "8"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let body = csv_body(&o);
    assert!(body.starts_with("x,y,z\n"));
    assert!(body.lines().count() > 1);
    for line in body.lines().skip(1) {
        assert_eq!(line.split(',').filter(|s| s.parse::<f64>().is_ok()).count(), 3, "{line}");
    }
    let o = dop(&["surface", "sample", "--gamma", &path, "--grid", "8", "--out", "json"]);
    assert!(stdout_json(&o)["count"].as_u64().unwrap() > 0);
    let o = dop(&["surface", "sample", "--gamma", &path, "--box", "1,0,0,1,0,1"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn table1_matches_golden_file() {
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/table1.csv")).unwrap();
    let o = dop(&["pluecker", "table1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(csv_body(&o), golden);

    let o = dop(&["pluecker", "table1", "--r1-max", "5"]);
    let body = csv_body(&o);
    let golden_5: Vec<&str> = golden.lines().take(3).collect();
    assert_eq!(body.lines().collect::<Vec<_>>(), golden_5);

    let o = dop(&["pluecker", "table1", "--out", "json"]);
    assert_eq!(stdout_json(&o)["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn conic_search_reports_every_degree() {
    let o = dop(&["pluecker", "conic", "--dmin", "3", "--dmax", "4"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["infeasible"], true);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 2);
    assert_eq!(code(&dop(&["pluecker", "conic", "--dmin", "5", "--dmax", "3"])), 1);
}

#[test]
fn seed_and_jobs_do_not_change_results() {
    let a = dop(&["--seed", "7", "--jobs", "1", "catalog", "emit", "--case", "thm51_i4", "--params", "p=1,q=1,r=1"]);
    let b = dop(&["--seed", "7", "--jobs", "3", "catalog", "emit", "--case", "thm51_i4", "--params", "p=1,q=1,r=1"]);
    let (mut va, mut vb) = (stdout_json(&a), stdout_json(&b));
    assert_eq!(va["seed"], 7);
    va.as_object_mut().unwrap().remove("command");
    vb.as_object_mut().unwrap().remove("command");
    assert_eq!(va, vb);
    let env = Command::new(env!("CARGO_BIN_EXE_dop")).args(["pluecker", "conic"]).env("DOP_SEED", "42").output().unwrap();
    assert_eq!(stdout_json(&env)["seed"], 42);
}
