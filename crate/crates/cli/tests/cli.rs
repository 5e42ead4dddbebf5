use std::process::{Command, Output};

use serde_json::Value;

fn hessk3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hessk3")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn slh_all_odd_has_no_embedding() {
    let o = hessk3(&["slh", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "no embedding");
    let o = hessk3(&["slh", "2", "-3", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("x = "));
}

#[test]
fn cayley_invariants_are_on_the_boundary() {
    let o = hessk3(&["invariants", "--lambda", "1,1,1,1,1/4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["flags"]["boundary"], true);
    assert_eq!(v["catalog_name"], "cayley");
    assert_eq!(v["point"], "(-3/2 : 17/256 : 1/128 : 7/4096 : 1/65536)");
}

#[test]
fn repro_clebsch_passes() {
    let o = hessk3(&["repro", "clebsch"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("clebsch [PASS]"));
    assert!(s.contains("disc: expected -15, computed -15"));
    assert!(s.contains("[[[4, 1], [1, 4]]]"));
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(hessk3(&["invariants", "--lambda", "1,2"]).status.code(), Some(2));
    assert_eq!(hessk3(&["repro", "nope"]).status.code(), Some(2));
    assert_eq!(hessk3(&["lattice", "--gram", "[[1]]"]).status.code(), Some(2));
    assert_eq!(hessk3(&["slh", "x", "1", "1"]).status.code(), Some(2));
    assert_eq!(hessk3(&["wps", "eq", "(1:2)", "(1:2:3:4:5)"]).status.code(), Some(2));
    assert_eq!(hessk3(&["limit", "--family", "{\"lambda\": []}"]).status.code(), Some(2));
    assert_eq!(hessk3(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn weighted_points() {
    let o = hessk3(&["wps", "eq", "(-8:1:0:0:0)", "(8:1:0:0:0)"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = hessk3(&["wps", "eq", "(1:1:0:0:0)", "(1:2:0:0:0)"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = hessk3(&["wps", "singular", "(0:1:0:1:0)"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = hessk3(&["wps", "singular", "(1:0:0:0:0)", "--sigma"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn lattice_report() {
    let o = hessk3(&["lattice", "--gram", "[[2,1],[1,2]]", "--report", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["det"], "3");
    assert_eq!(v["report"]["invariant_factors"][0], "3");
    let o = hessk3(&["lattice", "--gram", "U+<-4>", "--report"]);
    assert!(stdout(&o).contains("det          4"));
}

#[test]
fn limit_from_json_and_file() {
    let spec = r#"{"lambda": [[[0,"1"]],[[0,"1"]],[[0,"1"]],[[0,"1"]],[[-3,"1"]]]}"#;
    let o = hessk3(&["limit", "--family", spec, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["catalog_name"], "t3=xyz");
    let path = std::env::temp_dir().join(format!("hessk3_family_{}.json", std::process::id()));
    std::fs::write(&path, spec).unwrap();
    let o = hessk3(&["limit", "--family", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(stdout(&o).contains("limit        (-8 : 1 : 0 : 0 : 0)"));
}

fn without_timing(mut v: Value) -> Value {
    if let Some(a) = v.as_array_mut() {
        for r in a {
            r.as_object_mut().unwrap().remove("timing_ms");
        }
    }
    v
}

#[test]
fn repro_all_is_deterministic() {
    let runs: Vec<Value> = (0..2)
        .map(|_| {
            let o = hessk3(&["repro", "all", "--json"]);
            assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
            without_timing(serde_json::from_str(&stdout(&o)).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0].as_array().unwrap().len(), 24);
}
