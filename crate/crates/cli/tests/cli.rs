use std::process::{Command, Output};

use serde_json::Value;
use slingcalc::conway::nabla_j;
use slingcalc::LaurentPoly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slingcalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn conway_examples() {
    let v = json(&["conway", "--which", "J", "--r", "3", "--format", "json"]);
    let p: LaurentPoly = serde_json::from_value(v["results"][0]["polynomial"].clone()).unwrap();
    assert_eq!(p, LaurentPoly::parse(&["z"], "1 + 3z^4").unwrap());
    let v = json(&["conway", "--which", "M", "--r", "1", "--verify", "--format", "json"]);
    let p: LaurentPoly = serde_json::from_value(v["results"][0]["polynomial"].clone()).unwrap();
    assert_eq!(p, LaurentPoly::parse(&["z"], "z + 2z^3 + z^5").unwrap());
    assert_eq!(v["results"][0]["verified"], Value::Bool(true));
    let o = run(&["conway", "--which", "J", "--r", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conway_parallel_matches_serial() {
    let serial = run(&["conway", "--which", "J", "--r", "1..12", "--format", "json"]);
    let par = run(&["conway", "--which", "J", "--r", "1..12", "--jobs", "4", "--format", "json"]);
    assert_eq!(serial.stdout, par.stdout);
    let v: Value = serde_json::from_slice(&par.stdout).unwrap();
    for (i, entry) in v["results"].as_array().unwrap().iter().enumerate() {
        let p: LaurentPoly = serde_json::from_value(entry["polynomial"].clone()).unwrap();
        assert_eq!(p, nabla_j(i + 1).unwrap());
    }
}

#[test]
fn csv_output() {
    let o = run(&["conway", "--which", "J", "--r", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "exponent,coefficient\n0,1\n2,-2\n");
    let o = run(&["conway", "--which", "J", "--r", "2,3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["certify", "--variant", "growth2", "--r", "2,10", "--format", "json"][..],
        &["module", "--action", "reduce", "--format", "json"][..],
        &["group", "--demo", "heis-conj", "--format", "json"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn certify_examples() {
    let v = json(&["certify", "--variant", "growth2", "--r", "2,10", "--M", "3", "--N", "2", "--verify", "--format", "json"]);
    assert_eq!(v["certificate"]["verdict"], "no-fit");
    assert_eq!(v["divisibility"][0]["holds"], Value::Bool(true));
    let o = run(&["certify", "--variant", "growth1", "--r", "2,99", "--M", "6", "--N", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("99 < 100"));
    let v = json(&["certify", "--demo", "rational-product", "--format", "json"]);
    assert_eq!(v["fit"]["text"], "(2)/(-x + 1)");
    // a fit where none is predicted is reported with a nonzero exit code
    let o = run(&["certify", "--variant", "growth2", "--r", "2,10", "--order", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["certify", "--variant", "growth3", "--r", "2,10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn group_demos() {
    let o = run(&["group", "--demo", "heis-conj"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("t and txy not conjugate; inconsistent system l - m = 1, l = 1, l(l - m) + m(m - 1)/2 = 0"));
    let o = run(&["group", "--demo", "trefoil-meridian", "--verify"]);
    assert!(stdout(&o).contains("alternation 6 vs 2 ⇒ not conjugate"));
    assert_eq!(run(&["group", "--demo", "other"]).status.code(), Some(2));
}

#[test]
fn module_actions() {
    let v = json(&["module", "--action", "companion", "--verify", "--format", "json"]);
    assert_eq!(v["unit"], Value::Bool(true));
    assert_eq!(v["determinant"], "-t");
    let v = json(&["module", "--action", "torsion", "--delta", "t^2-t+1", "--format", "json"]);
    assert_eq!(v["torsion"], Value::Bool(true));
    assert_eq!(v["one_minus_t_invertible"], Value::Bool(true));
    let v = json(&["module", "--action", "torsion", "--free", "1", "--format", "json"]);
    assert_eq!(v["torsion"], Value::Bool(false));
    let v = json(&["module", "--action", "reduce", "--verify", "--format", "json"]);
    assert_eq!(v["relator_text"], "s - st^-1 + 2t - 3 + 2t^-1 - s^-1t + s^-1");
}

#[test]
fn module_input_and_out_file() {
    let dir = std::env::temp_dir().join(format!("slingcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"ring":"Z[t^]","gens":["a"],"rels":[["2t - 1"]]}"#).unwrap();
    let out = dir.join("report.json");
    let o = run(&[
        "module", "--action", "torsion", "--input", good.to_str().unwrap(), "--format", "json", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["torsion"], Value::Bool(true));
    assert_eq!(v["one_minus_t_invertible"], Value::Bool(true));
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"ring\": \"Z[t^]\",\n \"gens\": }").unwrap();
    let o = run(&["module", "--action", "torsion", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error") && stderr(&o).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn resource_limit() {
    let o = run(&["conway", "--which", "omega", "--r", "500"]);
    assert_eq!(o.status.code(), Some(4));
}
