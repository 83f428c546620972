use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_growthbound")).args(args).env_remove("GROWTHBOUND_BUDGET").output().expect("spawn")
}

fn json_out(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn closed_form_bounds() {
    let v = json_out(&["bound", "--method", "eden", "--d", "2"]);
    assert_eq!(v["value"], "6.750000000");
    assert_eq!(v["exact"], "27/4");
    let v = json_out(&["bound", "--method", "multinomial", "--d", "3"]);
    let got: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((got - 9.807295572).abs() <= 1e-8, "{got}");
    assert_eq!(v["certificate"]["kind"], "minimizer");
    let v = json_out(&["bound", "--method", "closed2d", "--d", "2"]);
    let got: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((got - (2.0 + 2.0 * 2f64.sqrt())).abs() <= 1e-9, "{got}");
    let v = json_out(&["bound", "--method", "eden", "--d", "3", "--precision", "4"]);
    assert_eq!(v["value"], "12.2070");
}

#[test]
fn iterate_bound_d2_i5() {
    let v = json_out(&["bound", "--method", "iterate", "--d", "2", "--i", "5"]);
    assert_eq!(v["value"], "4.765532996");
    assert_eq!(v["i"], 5);
    assert_eq!(v["certificate"]["kind"], "discriminant");
    assert!(v.get("runtime_ms").is_none());
    let v = json_out(&["bound", "--method", "iterate", "--d", "2", "--i", "2", "--timings"]);
    assert!(v["runtime_ms"].is_u64());
}

#[test]
fn weights_output() {
    let o = run(&["weights", "--d", "2", "--i", "3"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("|C_3| = 93"));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "93");

    let v = json_out(&["weights", "--d", "2", "--i", "4"]);
    let t = v["terms"].as_array().unwrap().iter().find(|t| t["x"] == 5 && t["y"] == 4).expect("x^5 y^4 term");
    assert_eq!(t["c"], "124");

    let v = json_out(&["weights", "--d", "3", "--i", "2"]);
    assert_eq!(v["count"], "273");
}

#[test]
fn encode_and_decode() {
    let dir = tempfile::tempdir().unwrap();
    let mono = write(dir.path(), "mono.txt", "0 0\n");
    let o = run(&["encode", "--d", "2", "--in", &mono]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "L1\nweight x^1 y^1\n");

    let fig = "# ten cells\n-1 2\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n2 1\n3 0\n3 1\n";
    let path = write(dir.path(), "fig.txt", fig);
    let o = run(&["encode", "--d", "2", "--in", &path]);
    let text = String::from_utf8(o.stdout).unwrap();
    let seq = text.lines().next().unwrap();
    assert_eq!(seq, "L5 L4 L3 L5 L1 L1 L2 L1 L4 L1");
    let o = run(&["decode", "--d", "2", seq]);
    let back = write(dir.path(), "back.txt", &String::from_utf8(o.stdout).unwrap());
    let o = run(&["encode", "--d", "2", "--in", &back]);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with(seq));

    let o = run(&["encode", "--d", "2", "--in", &path, "--format", "eden"]);
    let bits = String::from_utf8(o.stdout).unwrap();
    let o = run(&["decode", "--d", "2", "--format", "eden", bits.trim()]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 10);

    let cube = write(dir.path(), "cube.txt", "0 0 0\n0 0 1\n0 1 1\n");
    let o = run(&["encode", "--d", "3", "--in", &cube]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stdout).unwrap().contains("weight x^3 y^3"));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let gap = write(dir.path(), "gap.txt", "0 0\n2 0\n");
    assert_eq!(run(&["encode", "--d", "2", "--in", &gap]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "0 zero\n");
    assert_eq!(run(&["encode", "--d", "2", "--in", &bad]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--method", "iterate", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--method", "eden", "--d", "2", "--i", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bound", "--method", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["weights", "--d", "4", "--i", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "table9"]).status.code(), Some(2));
    assert_eq!(run(&["decode", "--d", "2", "L1 Q7"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_growthbound"))
        .args(["weights", "--d", "2", "--i", "8"])
        .env("GROWTHBOUND_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "table1", "--max-i", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(!String::from_utf8(o.stdout).unwrap().contains("FAIL"));
    // printed 3D values at i = 2, 3 are off in the last digit
    let o = run(&["verify", "--suite", "table3", "--max-i", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stdout).unwrap().contains("(known:"));
}

#[test]
fn outputs_are_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, workers) in [(&a, "1"), (&b, "3")] {
        let o = run(&["bound", "--method", "iterate", "--d", "2", "--i", "6", "--workers", workers, "--out", dir.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    for f in ["bound.json", "weights.json"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let m: Value = serde_json::from_slice(&fs::read(a.path().join("manifest.json")).unwrap()).unwrap();
    let n: Value = serde_json::from_slice(&fs::read(b.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["outputs"], n["outputs"]);
    assert_eq!(m["outputs"]["bound.json"].as_str().unwrap().len(), 64);
}

#[test]
fn count_csv() {
    let o = run(&["count", "--d", "3", "--n", "4"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "n,count\n1,1\n2,3\n3,15\n4,86\n");
}
