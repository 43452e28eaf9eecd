use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verbalforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn product_orders() {
    let v = json(&run(&["product", "cyclic:2", "cyclic:2", "nil:2"]));
    assert_eq!(v["summary"], "order 8");
    assert_eq!(v["engine"], "class2");
    let v = json(&run(&["product", "cyclic:3", "cyclic:3", "burnside:3"]));
    assert_eq!(v["summary"], "order 27");
    let v = json(&run(&["product", "cyclic:2", "cyclic:2", "sol:2"]));
    assert_eq!(v["summary"], "Infinite (metabelian lattice rank 1)");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["product", "cyclic:2", "nonsense", "nil:2"]).status.code(), Some(2));
    assert_eq!(run(&["product", "cyclic:2", "cyclic:2", "nil:x"]).status.code(), Some(2));
    let capped = bin().env("VERBALFORGE_CAP", "5").args(["product", "sym:3", "sym:3", "nil:2"]).output().unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let cfg = scratch("eg.json");
    std::fs::write(&cfg, r#"{"phi_window": "eg"}"#).unwrap();
    assert_eq!(run(&["amplify", cfg.to_str().unwrap()]).status.code(), Some(4));
    std::fs::write(&cfg, r#"{"no_such_field": 1}"#).unwrap();
    assert_eq!(run(&["amplify", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn amplify_writes_json_and_csv_deterministically() {
    let cfg = scratch("perturbed.json");
    std::fs::write(&cfg, r#"{"perturbation": {"target": "phi", "rate": 0.1}, "seed": 7, "epsilon": "1/2", "kappa": "1/26"}"#).unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let (j, c) = (scratch(&format!("out{}.json", i)), scratch(&format!("out{}.csv", i)));
        let out = run(&["amplify", cfg.to_str().unwrap(), "--json", j.to_str().unwrap(), "--csv", c.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push((std::fs::read(&j).unwrap(), std::fs::read_to_string(&c).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let report: serde_json::Value = serde_json::from_slice(&outputs[0].0).unwrap();
    assert!(report["four_premise"]["chain_holds"].as_bool().unwrap());
    assert!(outputs[0].1.starts_with("index,"));
}

#[test]
fn exact_default_experiment() {
    let cfg = scratch("default.json");
    std::fs::write(&cfg, "{}").unwrap();
    let v = json(&run(&["amplify", cfg.to_str().unwrap()]));
    assert_eq!(v["defect"]["mult_defect"], "0/1");
}

#[test]
fn counterexample_is_flagged() {
    let v = json(&run(&["counterexample", "--p", "3"]));
    assert_eq!(v["theta_free_defect"], "0/1");
    assert_eq!(v["verdict"], "FAIL-BY-DESIGN");
}

#[test]
fn tensor_and_verbal_subgroup() {
    let v = json(&run(&["tensor", "ab:2:4", "ab:2:4"]));
    assert_eq!(v["free_rank"], 4);
    assert!(v["torsion"].as_array().unwrap().iter().any(|d| d == 4));
    let v = json(&run(&["tensor", "cyclic:2", "cyclic:3"]));
    assert_eq!(v["order"], "1");
    let v = json(&run(&["verbal-subgroup", "cyclic:6", "burnside:2"]));
    assert_eq!(v["order"], 3);
    let v = json(&run(&["wreath", "cyclic:2", "cyclic:2", "nil:2"]));
    assert_eq!(v["order"], "16");
    assert_eq!(v["enumerated_order"], 16);
}

#[test]
fn suite_json() {
    let v = json(&run(&["suite", "--json"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["verdict"] == "PASS"), "{}", v);
}
