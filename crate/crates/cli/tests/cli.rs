use std::process::{Command, Output};

use serde_json::Value;

fn cactus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn worked_example_agrees_in_all_modes() {
    let out = cactus(&["verify", "etingof", "--weights", "1,1,1", "--nu", "1", "--word", "[[1,3]]", "--mode", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], 1);
    let inst = &r["instances"][0];
    assert_eq!(inst["agreement"], true);
    assert_eq!(inst["labels_checked"], 2);
    assert_eq!(inst["results"].as_object().unwrap().len(), 3);
}

#[test]
fn closed_form_diagnostic_exits_3_with_diffs() {
    let out =
        cactus(&["verify", "etingof", "--weights", "1,1,1", "--mode", "combinatorial", "--commutor", "closed-form"]);
    assert_eq!(out.status.code(), Some(3));
    let r = json(&out);
    assert!(!r["commutor_discrepancies"].as_array().unwrap().is_empty());
    let flagged: Vec<&Value> = r["instances"].as_array().unwrap().iter().filter(|i| i["agreement"] == false).collect();
    assert!(!flagged.is_empty());
    assert!(flagged.iter().all(|i| !i["diffs"].as_array().unwrap().is_empty()));
}

#[test]
fn relation_sweep_passes() {
    let out = cactus(&["verify", "relations", "--weights", "2,2,2", "--mode", "combinatorial"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["disagreements"], 0);
}

#[test]
fn usage_errors_exit_4() {
    assert_eq!(cactus(&["verify", "etingof"]).status.code(), Some(4));
    assert_eq!(cactus(&["nonsense"]).status.code(), Some(4));
    assert_eq!(cactus(&["verify", "etingof", "--weights", "1,1,1", "--word", "[[1,4]]"]).status.code(), Some(4));
    assert_eq!(cactus(&["verify", "etingof", "--weights", "1,1,1,1,1"]).status.code(), Some(4));
    assert_eq!(cactus(&["crystal", "act", "--weights", "1", "--coords", "2", "--word", "[]"]).status.code(), Some(4));
}

#[test]
fn large_flag_lifts_the_cap() {
    let out =
        cactus(&["verify", "etingof", "--weights", "1,1,1,1,1", "--nu", "5", "--mode", "combinatorial", "--large"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn huge_tolerance_is_uncertified() {
    // a tolerance this large cannot be met by any gap
    let out = cactus(&["verify", "etingof", "--weights", "2,2,2", "--nu", "2", "--mode", "all", "--tol", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable_and_config_merges() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"weights":[1,2,1],"nu":"all","mode":"crystal"}"#).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let cfg_s = cfg.to_str().unwrap();
    for out in [&a, &b] {
        let o = cactus(&["verify", "etingof", "--config", cfg_s, "--mode", "hives", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let r: Value = serde_json::from_slice(&text).unwrap();
    assert_eq!(r["config"]["mode"], "hives");
    assert_eq!(r["config"]["weights"], serde_json::json!([1, 2, 1]));
}

#[test]
fn crystal_and_hives_commands() {
    let act = json(&cactus(&["crystal", "act", "--weights", "1,1,1", "--coords", "0,1,0", "--word", "[[1,3]]"]));
    assert_eq!(act["claim"], "crystal-core::cactus_act");
    assert_eq!(act["result"]["image"]["elem"]["weights"], serde_json::json!([1, 1, 1]));
    let high = json(&cactus(&["crystal", "highest", "--weights", "1,1,1", "--nu", "1"]));
    assert_eq!(high["result"][0]["elements"].as_array().unwrap().len(), 2);
    let labels = json(&cactus(&["hives", "labels", "--weights", "2,2,2", "--nu", "2", "--tree", "[[1,2],3]"]));
    assert_eq!(labels["result"][0]["states"].as_array().unwrap().len(), 3);
    let moved = json(&cactus(&["hives", "act", "--weights", "1,1,1", "--nu", "1", "--word", "[[2,3]]"]));
    assert_eq!(moved["result"]["map"].as_array().unwrap().len(), 2);
}

#[test]
fn gaudin_commands() {
    let s = cactus(&["gaudin", "simplicity", "--weights", "1,1,1,1", "--nu", "0", "--z", "0,1,3,7"]);
    assert_eq!(s.status.code(), Some(0));
    assert_eq!(json(&s)["result"][0]["certified"], true);
    let e = json(&cactus(&["gaudin", "eigenbasis", "--weights", "1,1,1", "--nu", "1"]));
    assert_eq!(e["result"][0]["eigenbasis"]["vectors"].as_array().unwrap().len(), 2);
    let d = cactus(&["gaudin", "spectrum", "--weights", "1,1,1", "--z", "0,1,1"]);
    assert_eq!(d.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&d.stderr).contains("degenerate configuration"));
}

#[test]
fn transport_commands_write_curves() {
    let dir = tempfile::tempdir().unwrap();
    let curves = dir.path().join("curves.csv");
    let out = cactus(&[
        "transport",
        "edge",
        "--weights",
        "2,2,2",
        "--nu",
        "2",
        "--dir",
        "right",
        "--curves",
        curves.to_str().unwrap(),
        "--grid",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&curves).unwrap();
    assert!(csv.starts_with("t,λ1,λ2,λ3"));
    assert_eq!(csv.lines().count(), 66);

    let lp = json(&cactus(&["transport", "loop", "--weights", "2,2,2", "--nu", "2"]));
    assert_eq!(lp["result"][0]["permutation"], serde_json::json!([2, 1, 0]));
    let comb = json(&cactus(&["transport", "loop", "--weights", "2,2,2", "--nu", "2", "--mode", "combinatorial"]));
    assert_eq!(comb["result"][0]["permutation"], lp["result"][0]["permutation"]);
}
