use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropicover"))
        .args(args)
        .env_remove("TROPICOVER_BUDGET")
        .env_remove("TROPICOVER_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn hurwitz_prints_exact_rationals() {
    let out = run(&["hurwitz", "--d", "2", "--profiles", "[[2],[2]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], "1/2");
    let out = run(&["hurwitz", "--d", "3", "--profiles", "[[3],[3],[2,1],[2,1]]"]);
    assert_eq!(json(&out)["value"], "2");
}

#[test]
fn enumerate_counts_classes() {
    let out = run(&["enumerate", "--d", "2", "--mu", "[[2],[2],[2],[2]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 3);
    assert_eq!(v["sourceGenus"], 1);
}

#[test]
fn local_balancing_sweep_passes() {
    let out = run(&["balance-local", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["allBalanced"], true);
    assert_eq!(v["problems"], 6);
}

#[test]
fn codim1_sweep_passes() {
    let out = run(&["balance-codim1", "--d", "2", "--mu", "[[2],[2],[2],[2],[1,1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["allBalanced"], true);
    assert_eq!(v["classes"], 6);
}

#[test]
fn catalan_genus_two() {
    let out = run(&["catalan", "--g", "2", "--r", "0", "--direct"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["count"], "1");
    assert_eq!(v["dyck"], 1);
    assert_eq!(v["directSum"], "720");
    assert_eq!(v["pushforwardDegree"], "720");
}

#[test]
fn catalan_rejects_odd_parity() {
    let out = run(&["catalan", "--g", "2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn dt_example_round_trips() {
    let out = run(&["dt-convert", "--example"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["roundTrip"], true);
    assert_eq!(v["sourceGenus"], 4);
}

#[test]
fn stable_graphs_by_edge_count() {
    let v = json(&run(&["graphs", "--g", "0", "--n", "5", "--edges", "1"]));
    assert_eq!(v["count"], 10);
    let v = json(&run(&["graphs", "--g", "0", "--n", "5", "--edges", "2"]));
    assert_eq!(v["count"], 15);
}

#[test]
fn cover_files_feed_weight_and_render() {
    let v = json(&run(&["enumerate", "--d", "2", "--mu", "[[2],[2],[2],[2]]"]));
    let dir = std::env::temp_dir().join(format!("tropicover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cover.json");
    std::fs::write(&path, v["classes"][0]["cover"].to_string()).unwrap();
    let p = path.to_str().unwrap();

    let w = json(&run(&["weight", "--cover", p]));
    assert!(w["weight"].is_string());
    assert_eq!(w["degree"], 2);

    let w = json(&run(&["weight", "--cover", p, "--J", "[1,2,3,4]"]));
    assert!(w.get("composedMatrix").is_some());

    let out = run(&["render", "--cover", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["table"].as_array().unwrap().len() > 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["hurwitz", "--d", "2", "--profiles", "x"]).status.code(), Some(2));
    assert_eq!(run(&["weight", "--cover", "/nonexistent/cover.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = run(&["--budget", "10", "enumerate", "--d", "3", "--mu", "[[3],[3],[2,1],[2,1]]"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["--budget", "1e7", "enumerate", "--d", "2", "--mu", "[[2],[2],[2],[2]]"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "--d", "3", "--mu", "[[3],[3],[2,1],[2,1]]", "--threads", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
