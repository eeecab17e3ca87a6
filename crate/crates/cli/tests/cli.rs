use std::path::{Path, PathBuf};
use std::process::Command;

use continua_cli::spec;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> continua_cli::Outcome {
    let mut full = vec!["continua"];
    full.extend_from_slice(args);
    continua_cli::run(full)
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    (serde_json::from_str(&out.stdout).expect("json report"), out.code)
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn validate_e1() {
    let (v, code) = json(&["validate", "--spec", &path("e1.space")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["valid"], true);
}

#[test]
fn closure_of_x0() {
    let (v, code) = json(&["closure", "--spec", &path("e1.space"), "--class", "X0", "--level", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["closure"], serde_json::json!(["0", "1"]));
}

#[test]
fn inline_classes() {
    let (v, _) = json(&["interior", "--spec", &path("e1.space"), "--class", "{0,1,2,3}", "--level", "2"]);
    assert_eq!(v["result"]["interior"], serde_json::json!(["0", "1", "2"]));
}

#[test]
fn real_lub_example() {
    let (v, code) = json(&["real-lub", "--members", "1/3", "--a", "0", "--b", "1", "--iters", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lub"], "43/128");
    assert_eq!(v["result"]["gap"], "1/384");
}

#[test]
fn real_lub_precondition_is_malformed_input() {
    let out = run(&["real-lub", "--members", "1/3", "--a", "1/2", "--b", "1", "--iters", "8"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("upper bound"));
}

#[test]
fn real_arith() {
    let (v, _) = json(&["real-arith", "--op", "add", "--x", "1/2", "--y", "1/3"]);
    assert_eq!(v["result"]["result"], "mon(5/6)");
    let (v, _) = json(&["real-arith", "--op", "mul", "--x", "2/3", "--y", "3/4"]);
    assert_eq!(v["result"]["result"], "mon(1/2)");
    let (v, _) = json(&["real-arith", "--op", "eq", "--x", "0", "--y", "1/16", "--level", "3"]);
    assert_eq!(v["result"]["result"], true);
    let (v, _) = json(&["real-arith", "--op", "eq", "--x", "0", "--y", "1/8", "--level", "3"]);
    assert_eq!(v["result"]["result"], false);
}

#[test]
fn paper_literal_loads_but_fails_validation() {
    let (v, code) = json(&["validate", "--spec", &path("paper_literal.space")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["valid"], false);
    assert!(v["witnesses"][0].as_str().unwrap().contains("composition at level 3: witness (0, 48, 8)"));
}

#[test]
fn invalid_space_blocks_other_commands() {
    let out = run(&["closure", "--spec", &path("paper_literal.space"), "--class", "0", "--level", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("invalid space"));
}

#[test]
fn asymmetric_edges_are_malformed() {
    let out = run(&["validate", "--spec", &path("asymmetric.space")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("symmetric at level 1: witness (0, 1)"));
}

#[test]
fn unknown_inputs_are_malformed() {
    assert_eq!(run(&["closure", "--spec", &path("e1.space"), "--class", "9", "--level", "1"]).code, 2);
    assert_eq!(run(&["closure", "--spec", &path("e1.space"), "--class", "X0", "--level", "7"]).code, 2);
    assert_eq!(run(&["validate", "--spec", &path("missing.space")]).code, 2);
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["suite", "nothing"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn parse_errors_carry_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.space");
    std::fs::write(&bad, "[carrier]\nvalues = [\"0\", \n").unwrap();
    let out = run(&["validate", "--spec", &bad.display().to_string()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line"));
}

#[test]
fn open_and_closed_witnesses() {
    let e1 = path("e1.space");
    let (v, code) = json(&["open", "--spec", &e1, "--class", "left", "--level", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["open"], false);
    assert!(v["witnesses"][0].as_str().unwrap().starts_with("2 ∈ X"));
    let (_, code) = json(&["clopen", "--spec", &path("e2.space"), "--class", "low", "--level", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn connectivity_commands() {
    let e2 = path("e2.space");
    let (v, code) = json(&["components", "--spec", &e2, "--level", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 2);
    let (_, code) = json(&["connected", "--spec", &e2, "--class", "0,10", "--level", "2"]);
    assert_eq!(code, 1);
    let (v, code) = json(&["motion", "--spec", &path("e1.space"), "--from", "0", "--to", "4", "--level", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["motion"], serde_json::json!(["0", "1", "2", "3", "4"]));
    let (_, code) = json(&["motion", "--spec", &e2, "--class", "0,10", "--level", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn nets_clusters_and_convergence() {
    let e1 = path("e1.space");
    let (v, _) = json(&["net", "--spec", &e1, "--level", "2"]);
    assert_eq!(v["result"]["net"], serde_json::json!(["0", "2", "4"]));
    assert_eq!(v["result"]["maximal"], true);
    let (v, _) = json(&["cluster", "--spec", &e1, "--seq", "4,3,4,0", "--level", "2"]);
    assert_eq!(v["result"]["position"], "4");
    assert_eq!(v["result"]["count"], 3);
    let (v, code) = json(&["converge", "--spec", &e1, "--seq", "0,4,3,2", "--point", "2", "--level", "2"]);
    assert_eq!((v["result"]["depth"].as_u64(), code), (Some(2), 0));
    let (_, code) = json(&["converge", "--spec", &e1, "--seq", "0,4,3,0", "--point", "2", "--level", "2"]);
    assert_eq!(code, 1);
    let (v, _) = json(&["accpoints", "--spec", &e1, "--class", "ends"]);
    assert_eq!(v["result"]["accumulation"], serde_json::json!(["1", "3"]));
}

#[test]
fn topology_and_separation() {
    let (v, _) = json(&["topology", "--spec", &path("e2.space"), "--level", "2"]);
    assert_eq!(v["result"]["count"], 4);
    let (v, code) = json(&["sep", "--spec", &path("e2.space"), "--class", "low", "--other", "high"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["level"], 1);
    // both monads of E1 touch 2 at every level
    let (v, code) = json(&["sep", "--spec", &path("e1-blocked.space"), "--class", "left", "--other", "right"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["separable"], false);
}

#[test]
fn morphism_commands() {
    let doubling = path("double-source.space");
    let (v, code) = json(&["morphism-modulus", "--spec", &doubling, "--function", "double"]);
    assert_eq!(code, 0);
    let sources: Vec<u64> = v["result"]["modulus"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["source"].as_u64().unwrap())
        .collect();
    assert_eq!(sources, vec![0, 2, 3, 4, 5]);

    let step = path("step.space");
    let (v, code) = json(&["morphism-check", "--spec", &step, "--function", "step", "--source-level", "2", "--target-level", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["preimage_open"], false);
    assert_eq!(v["result"]["preserves_connected"], false);
    let (_, code) = json(&[
        "morphism-push", "--spec", &step, "--function", "step", "--motion", "-1/4,-1/8,0", "--source-level", "2",
        "--target-level", "2",
    ]);
    assert_eq!(code, 1);
    let (v, code) = json(&["morphism-check", "--spec", &path("real.space"), "--function", "negate", "--source-level", "3", "--target-level", "3", "--epsilon", "1/4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["epsilon_delta"][0]["delta"], "1/4");
}

#[test]
fn metric_ball() {
    let (v, code) = json(&["ball", "--spec", &path("metric.space"), "--center", "1", "--radius", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ball"], serde_json::json!(["3/4", "1", "5/4"]));
    assert_eq!(v["result"]["ball"], v["result"]["direct"]);
}

#[test]
fn half_open_interval_disagreement_is_reported() {
    let out = run(&[
        "real-interval", "--granularity", "4", "--bound", "2", "--levels", "3", "--a", "0", "--b", "1", "--kind", "open-closed",
        "--level", "3",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("differ on [\"17/16\"]"));
    let (v, code) = json(&["real-interval", "--spec", &path("real.space"), "--a", "0", "--b", "1", "--kind", "open", "--level", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["interval"].as_array().unwrap().first().unwrap(), "1/8");
}

#[test]
fn export_dot_shapes() {
    let (v, _) = json(&["export-dot", "--spec", &path("e1.space")]);
    let graphs: Vec<&str> = v["result"]["graphs"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
    assert_eq!(graphs.len(), 3);
    assert_eq!(graphs[0].matches(" -- ").count(), 10);
    assert_eq!(graphs[2].matches(" -- ").count(), 4);
    assert!(graphs[2].contains("\"0\" -- \"1\"") && graphs[2].contains("\"3\" -- \"4\""));
    assert!(!graphs[2].contains("\"0\" -- \"0\""));
    let (v, _) = json(&["export-dot", "--spec", &path("e2.space"), "--level", "2"]);
    assert_eq!(v["result"]["graphs"][0].as_str().unwrap().matches(" -- ").count(), 2);
    assert_eq!(json(&["export-dot", "--spec", &path("e1.space")]).0, v_again());

    fn v_again() -> Value {
        let mut full = vec!["continua", "--json", "export-dot", "--spec"];
        let p = path("e1.space");
        full.push(&p);
        serde_json::from_str(&continua_cli::run(full).stdout).unwrap()
    }
}

#[test]
fn text_and_json_agree() {
    let args = ["components", "--spec", &path("e2.space"), "--level", "2"];
    let text = run(&args).stdout;
    let (v, _) = json(&args);
    for comp in v["result"]["components"].as_array().unwrap() {
        let ids: Vec<&str> = comp.as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
        assert!(text.contains(&format!("[{}]", ids.join(", "))));
    }
}

#[test]
fn round_trip_every_fixture() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().and_then(|e| e.to_str()) != Some("space") {
            continue;
        }
        let original = spec::read(&p).unwrap();
        let printed = spec::print(&original);
        let again = spec::parse(&printed, "printed").unwrap();
        assert_eq!(original, again, "{}", p.display());
        assert_eq!(spec::print(&again), printed);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_continua");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", "--spec", &path("e1.space")]), Some(0));
    assert_eq!(status(&["validate", "--spec", &path("paper_literal.space")]), Some(1));
    assert_eq!(status(&["validate", "--spec", &path("asymmetric.space")]), Some(2));
}
