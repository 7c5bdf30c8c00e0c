use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn gdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdual")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = gdual(args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), json)
}

fn checks(v: &Value) -> &Vec<Value> {
    v["checks"].as_array().unwrap()
}

fn summary_matches(v: &Value) -> bool {
    let cs = checks(v);
    let count = |s: &str| cs.iter().filter(|c| c["status"] == s).count() as u64;
    let sum = &v["summary"];
    sum["total"] == cs.len() as u64
        && sum["pass"] == count("pass")
        && sum["fail"] == count("fail")
        && sum["indeterminate"] == count("indeterminate")
}

#[test]
fn prop51_k4() {
    let (code, v) = report(&["prop51", "--k", "4", "--n", "9"]);
    assert_eq!(code, 0);
    let c = &checks(&v)[0];
    assert_eq!(c["status"], "pass");
    assert_eq!(c["actual"]["intersection_dim"], 0);
    assert_eq!(v["command"][0], "prop51");
    assert_eq!(v["seed"], 0);
    assert!(summary_matches(&v));
}

#[test]
fn orbits_verify_n8() {
    let (code, v) = report(&["orbits", "verify", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(checks(&v).len(), 22);
    assert!(checks(&v).iter().all(|c| c["status"] == "pass"));
    assert_eq!(v["summary"]["pass"], 22);
}

#[test]
fn orbits_verify_n7_reports_failure() {
    let (code, v) = report(&["orbits", "verify", "--n", "7"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> =
        checks(&v).iter().filter(|c| c["status"] == "fail").map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, vec!["orbits/n=7/07-O33"]);
}

#[test]
fn lie_diamond_f4() {
    let (code, v) = report(&["lie", "diamond", "--type", "F4"]);
    assert_eq!(code, 0);
    let table = checks(&v).iter().find(|c| c["name"] == "lie/F4/table").unwrap();
    assert_eq!(table["actual"]["solutions"], serde_json::json!(["ω3"]));
    let (_, v2) = report(&["lie", "diamond", "--type", "C", "--rank", "5"]);
    let t = checks(&v2).iter().find(|c| c["name"] == "lie/C5/table").unwrap();
    assert_eq!(t["status"], "pass");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["prop51", "--k", "2", "--n", "4"][..],
        &["prop51", "--k", "4", "--n", "7"],
        &["orbits", "verify", "--n", "9"],
        &["sff", "certify", "--n", "5"],
        &["sff", "segre", "--format", "1,2"],
        &["lie", "diamond", "--type", "E9"],
        &["lie", "table1", "--max-rank", "3"],
        &["orbits", "hasse", "--n", "6", "--format", "svg"],
        &["veronese", "--d", "1", "--n", "2"],
        &["segre-check", "--dims", "1"],
        &["prop51", "--k", "3", "--n", "6", "--bogus"],
        &["nonsense"],
    ] {
        let out = gdual(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn deterministic_output() {
    for args in [&["osc-intersect", "--k", "3", "--n", "8", "--seed", "7"][..], &["sff", "segre", "--format", "2,2,3"]] {
        assert_eq!(gdual(args).stdout, gdual(args).stdout);
    }
    let (_, timed) = report(&["prop51", "--k", "3", "--n", "6", "--timings"]);
    assert!(checks(&timed)[0]["elapsed_ms"].is_u64());
}

#[test]
fn sff_certificate_artifact() {
    let (code, v) = report(&["sff", "certify", "--n", "14"]);
    assert_eq!(code, 0);
    assert_eq!(checks(&v)[0]["actual"]["rank"], 33);
    let cert: Value = serde_json::from_str(v["artifacts"][0]["content"].as_str().unwrap()).unwrap();
    assert_eq!(cert["n"], 14);
    assert_eq!(cert["rank"], 33);
}

#[test]
fn hasse_raw_dot_and_json() {
    let out = gdual(&["orbits", "hasse", "--n", "6", "--format", "dot", "--raw"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("\"O19\" -> \"O18\";"));
    let (_, v) = report(&["orbits", "hasse", "--n", "8", "--format", "json"]);
    let graph: Value = serde_json::from_str(v["artifacts"][0]["content"].as_str().unwrap()).unwrap();
    assert_eq!(graph["n"], 8);
}

#[test]
fn data_dir_override() {
    let dir = std::env::temp_dir().join(format!("gdual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = r#"{"version": 1, "rows": [{"family": "F", "rank": 4, "weights": [[{"coef": 1, "index": "1"}]], "label": "x"}], "absent": [], "defective_secant_reference": []}"#;
    std::fs::write(dir.join("table1.json"), table).unwrap();
    let d = dir.to_str().unwrap();
    let (code, v) = report(&["lie", "diamond", "--type", "F4", "--data-dir", d]);
    assert_eq!(code, 1);
    assert_eq!(checks(&v).iter().find(|c| c["name"] == "lie/F4/table").unwrap()["status"], "fail");
    let (code, _) = report(&["orbits", "verify", "--n", "6", "--data-dir", d]);
    assert_eq!(code, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn human_output() {
    let out = gdual(&["veronese", "--d", "2", "--n", "2", "--human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS veronese/d=2/n=2"));
    assert!(text.ends_with("2 checks: 2 pass, 0 fail, 0 indeterminate\n"));
}

#[test]
fn report_all_is_union_of_subcommands() {
    let (code, all) = report(&["report", "--all"]);
    assert_eq!(code, 1);
    assert!(summary_matches(&all));
    let mut names = Vec::new();
    let mut collect = |args: Vec<String>| {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, v) = report(&a);
        assert!(summary_matches(&v));
        for c in checks(&v) {
            names.push(c["name"].as_str().unwrap().to_string());
        }
    };
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for k in 3..=6usize {
        for n in (2 * k).max(6)..=12 {
            collect(s(&["prop51", "--k", &k.to_string(), "--n", &n.to_string()]));
        }
    }
    for (k, n) in [("3", "6"), ("3", "9"), ("4", "8")] {
        collect(s(&["osc-intersect", "--k", k, "--n", n]));
    }
    for (k, n) in [("2", "6"), ("3", "6"), ("3", "7"), ("3", "8")] {
        collect(s(&["secant-dim", "--k", k, "--n", n]));
    }
    for n in 9..=21 {
        collect(s(&["sff", "certify", "--n", &n.to_string()]));
    }
    for f in ["1,1,1", "1,1,3", "1,2,2", "2,2,2", "2,2,3", "3,3,2", "3,3,3"] {
        collect(s(&["sff", "segre", "--format", f]));
    }
    collect(s(&["lie", "table1"]));
    for n in ["6", "7", "8"] {
        collect(s(&["orbits", "verify", "--n", n]));
        collect(s(&["orbits", "hasse", "--n", n, "--format", "json"]));
    }
    collect(s(&["orbits", "dual-check"]));
    for d in 2..=4 {
        for n in 1..=4 {
            collect(s(&["veronese", "--d", &d.to_string(), "--n", &n.to_string()]));
        }
    }
    for dims in ["1,1", "1,2", "2,2", "1,1,1", "2,2,1"] {
        collect(s(&["segre-check", "--dims", dims]));
    }
    let union: BTreeSet<String> = names.iter().cloned().collect();
    assert_eq!(union.len(), names.len());
    let from_all: BTreeSet<String> = checks(&all).iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(from_all, union);
}
