use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn twinreduce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinreduce")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn convert_edgelist_to_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p3.txt");
    fs::write(&p, "0 1\n1 2 red\n").unwrap();
    let out = twinreduce(&["convert", p.to_str().unwrap(), "--to", "json"]);
    let v = json(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["red"][0], serde_json::json!([1, 2]));
    let dot = twinreduce(&["convert", p.to_str().unwrap(), "--to", "dot"]);
    assert!(String::from_utf8_lossy(&dot.stdout).contains("[color=red]"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    fs::write(&p, "0 1\n1 two\n").unwrap();
    let out = twinreduce(&["convert", p.to_str().unwrap(), "--to", "json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gen_param_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let gen = json(&twinreduce(&["gen", "s_xqr", "--x", "2", "--q", "2", "--r", "1"]));
    let p = dir.path().join("s.json");
    fs::write(&p, gen["graph"].to_string()).unwrap();
    let bw = json(&twinreduce(&["param", p.to_str().unwrap(), "--param", "bw"]));
    assert!(bw["value"].as_u64().unwrap() <= gen["bandwidth_bound"].as_u64().unwrap());

    let c4 = dir.path().join("c4.txt");
    fs::write(&c4, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = json(&twinreduce(&["oracle", c4.to_str().unwrap()]));
    assert_eq!((o["value"].as_u64(), o["exact"].as_bool()), (Some(0), Some(true)));
}

#[test]
fn max_n_env_raises_caps() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("path.txt");
    let edges: String = (0..29).map(|i| format!("{i} {}\n", i + 1)).collect();
    fs::write(&p, edges).unwrap();
    let capped = twinreduce(&["param", p.to_str().unwrap(), "--param", "bw"]);
    assert!(!capped.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_twinreduce"))
        .env("TWINREDUCE_MAX_N", "40")
        .args(["param", p.to_str().unwrap(), "--param", "bw"])
        .output()
        .unwrap();
    assert_eq!(json(&out)["value"], 1);
}

#[test]
fn grid_sequence_from_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let gen = json(&twinreduce(&["gen", "grid", "--m", "3"]));
    let g = dir.path().join("g.json");
    let c = dir.path().join("c.json");
    fs::write(&g, gen["graph"].to_string()).unwrap();
    fs::write(&c, gen["certificate"].to_string()).unwrap();
    let s = json(&twinreduce(&["seq", g.to_str().unwrap(), "--cert", c.to_str().unwrap(), "--q", "2"]));
    assert!(s["max_witness_bandwidth"].as_u64().unwrap() <= 6);
    assert_eq!(s["sequence"]["merges"].as_array().unwrap().len(), 8);
}

#[test]
fn diversity_with_bound() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p5.txt");
    fs::write(&p, "0 1\n1 2\n2 3\n3 4\n").unwrap();
    let v = json(&twinreduce(&["diversity", p.to_str().unwrap(), "--anchor", "0,4", "--bound", "surface"]));
    assert_eq!(v["count"], 3);
    assert_eq!(v["bound"]["holds"], true);
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = twinreduce(&["verify", "tightness"]);
    let v = json(&out);
    assert_eq!(v["suite"], "tightness");
    assert_eq!(v["seed"], 0xC0FFEE);
    assert_eq!(v["summary"]["holds"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
    assert!(v["checks"][0]["input_sha256"].is_string());
    assert_eq!(twinreduce(&["verify", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let strip = |mut v: Value| {
        for c in v["checks"].as_array_mut().unwrap() {
            c["runtime_ms"] = Value::Null;
        }
        v["summary"]["runtime_ms"] = Value::Null;
        v
    };
    let a = strip(json(&twinreduce(&["verify", "planar-pi1"])));
    let b = strip(json(&twinreduce(&["verify", "planar-pi1"])));
    assert_eq!(a, b);
}
