//! End-to-end tests of the binary: exit codes, payloads, determinism, and
//! file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

use gutsline_cli::format::{parse_matroid_file, write_spec_file};
use gutsline_core::{catalog, Matroid};
use serde_json::Value;

fn gutsline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gutsline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn machine_payload(output: &Output) -> Value {
    let report: Value = serde_json::from_slice(&output.stdout).expect("valid JSON report");
    report["payload"].clone()
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("gutsline-test-{}-{}", std::process::id(), name));
    path
}

#[test]
fn vamos_check_is_blocked_with_witness_payload() {
    let out = gutsline(&[
        "check-extend",
        "catalog:vamos",
        "--A",
        "a1,a1p,a2,a2p",
        "--A0",
        "a1,a1p",
        "--B0",
        "b1,b1p",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&out), 1);
    let payload = machine_payload(&out);
    assert_eq!(payload["verdict"], "blocked");
    assert_eq!(payload["witness"]["a1"], serde_json::json!(["a2", "a2p"]));
    assert_eq!(payload["witness"]["b1"], serde_json::json!(["b2", "b2p"]));
    let ones = payload["witness"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v.as_i64() == Some(1))
        .count();
    assert_eq!(ones, 2);
}

#[test]
fn k4_extend_writes_a_valid_equal_matroid() {
    let out_path = temp_path("k4p.toml");
    let out = gutsline(&[
        "extend",
        "catalog:k4",
        "--A",
        "12,13,23",
        "--A0",
        "12",
        "--B0",
        "14,24",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    // The written file passes validation.
    let validate = gutsline(&["validate", out_path.to_str().unwrap()]);
    assert_eq!(exit_code(&validate), 0);

    // And re-parses to the graphic matroid of K4 plus a parallel edge.
    let text = std::fs::read_to_string(&out_path).unwrap();
    let file = parse_matroid_file(&text).unwrap();
    let rebuilt = Matroid::build(&file.spec).unwrap();
    let mut edges = catalog::K4_EDGES.to_vec();
    edges.push((0, 1));
    let mut labels = catalog::K4_LABELS.to_vec();
    labels.push("p");
    let expected = catalog::graphic(4, &edges, &labels);
    assert!(rebuilt.equals(&expected).unwrap());
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn corrupted_circuit_file_is_rejected_with_exit_2() {
    let path = temp_path("bad.toml");
    std::fs::write(
        &path,
        "name = \"bad\"\nelements = [\"1\", \"2\", \"3\"]\nkind = \"circuits\"\nsets = [[\"1\", \"2\"], [\"1\", \"2\", \"3\"]]\n",
    )
    .unwrap();
    let out = gutsline(&["validate", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn schema_violations_are_rejected() {
    // Duplicate element label.
    assert!(parse_matroid_file(
        "name = \"dup\"\nelements = [\"1\", \"1\"]\nkind = \"circuits\"\nsets = []\n"
    )
    .is_err());
    // Unknown field.
    assert!(parse_matroid_file(
        "name = \"x\"\nelements = [\"1\"]\nkind = \"circuits\"\nsets = []\nbogus = 1\n"
    )
    .is_err());
    // rank on a non-sparse-paving kind.
    assert!(parse_matroid_file(
        "name = \"x\"\nelements = [\"1\"]\nkind = \"bases\"\nrank = 1\nsets = [[\"1\"]]\n"
    )
    .is_err());
    // Unequal basis sizes surface at build time, still exit 2.
    let path = temp_path("bases.toml");
    std::fs::write(
        &path,
        "name = \"b\"\nelements = [\"1\", \"2\"]\nkind = \"bases\"\nsets = [[\"1\"], [\"1\", \"2\"]]\n",
    )
    .unwrap();
    let out = gutsline(&["validate", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(&path).ok();
}

#[test]
fn axiom_failure_is_a_negative_verdict_not_a_usage_error() {
    // Structurally fine circuits list that is not a matroid: {1,2} and
    // {2,3} demand by circuit elimination a circuit inside {1,3}.
    let path = temp_path("notmatroid.toml");
    std::fs::write(
        &path,
        "name = \"broken\"\nelements = [\"1\", \"2\", \"3\"]\nkind = \"circuits\"\nsets = [[\"1\", \"2\"], [\"2\", \"3\"]]\n",
    )
    .unwrap();
    let out = gutsline(&["validate", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(exit_code(&out), 1);
    let payload = machine_payload(&out);
    assert_eq!(payload["valid"], Value::Bool(false));
    std::fs::remove_file(&path).ok();
}

#[test]
fn machine_reports_are_deterministic() {
    let args = [
        "strands",
        "catalog:vamos",
        "--A",
        "a1,a1p,a2,a2p",
        "--format",
        "machine",
    ];
    let first = gutsline(&args);
    let second = gutsline(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn force_build_reports_the_submodularity_witness() {
    let out = gutsline(&[
        "extend",
        "catalog:vamos",
        "--A",
        "a1,a1p,a2,a2p",
        "--A0",
        "a1,a1p",
        "--B0",
        "b1,b1p",
        "--force-build",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&out), 1);
    let payload = machine_payload(&out);
    assert_eq!(payload["verdict"], "submodularity-failure");
    let sub = &payload["submodularity"];
    assert!(sub["lhs"].as_i64().unwrap() < sub["rhs"].as_i64().unwrap());
    assert!(!sub["first"].as_array().unwrap().is_empty());
}

#[test]
fn tree_extend_runs_the_prism_plan() {
    let plan_path = temp_path("plan.toml");
    std::fs::write(
        &plan_path,
        r#"tree_edges = [["X", "Y"], ["Y", "Z"]]

[parts]
X = ["12", "13", "23"]
Y = ["14", "25", "36"]
Z = ["45", "46", "56"]

[[requests]]
edge = ["X", "Y"]
Y_strand = ["12"]
Z_strand = ["14", "25", "45"]
label = "p1"

[[requests]]
edge = ["Y", "Z"]
Y_strand = ["12", "14", "25"]
Z_strand = ["45"]
label = "p2"
"#,
    )
    .unwrap();
    let out_path = temp_path("prism2.toml");
    let out = gutsline(&[
        "tree-extend",
        "catalog:prism",
        "--plan",
        plan_path.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);

    let text = std::fs::read_to_string(&out_path).unwrap();
    let file = parse_matroid_file(&text).unwrap();
    let rebuilt = Matroid::build(&file.spec).unwrap();
    let mut edges = catalog::PRISM_EDGES.to_vec();
    edges.push((0, 1));
    edges.push((3, 4));
    let mut labels = catalog::PRISM_LABELS.to_vec();
    labels.push("p1");
    labels.push("p2");
    assert!(rebuilt
        .equals(&catalog::graphic(6, &edges, &labels))
        .unwrap());
    std::fs::remove_file(&plan_path).ok();
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn oracle_exit_codes_follow_the_verdict() {
    let empty = gutsline(&[
        "oracle",
        "catalog:vamos",
        "--A",
        "a1,a1p,a2,a2p",
        "--A0",
        "a1,a1p",
        "--B0",
        "b1,b1p",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&empty), 1);
    assert_eq!(machine_payload(&empty)["count"], 0);

    let unique = gutsline(&[
        "oracle",
        "catalog:vamos-plus",
        "--A",
        "a1,a1p,a2,a2p",
        "--A0",
        "a1,a1p",
        "--B0",
        "b1,b1p",
        "--format",
        "machine",
    ]);
    assert_eq!(exit_code(&unique), 0);
    assert_eq!(machine_payload(&unique)["count"], 1);
}

#[test]
fn catalog_vamos_round_trips_canonically() {
    let out_path = temp_path("vamos.toml");
    let out = gutsline(&["catalog", "vamos", "-o", out_path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let text = std::fs::read_to_string(&out_path).unwrap();

    // write(parse(f)) is byte-identical for the canonical file.
    let file = parse_matroid_file(&text).unwrap();
    assert_eq!(write_spec_file(&file.name, &file.spec), text);

    // The file reproduces the built-in matroid.
    let rebuilt = Matroid::build(&file.spec).unwrap();
    assert!(rebuilt.equals(&catalog::vamos()).unwrap());
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn separation_test_flag() {
    let yes = gutsline(&["separations", "catalog:k4", "--A", "12,13,23", "--k", "3"]);
    assert_eq!(exit_code(&yes), 0);
    let no = gutsline(&["separations", "catalog:k4", "--A", "12"]);
    assert_eq!(exit_code(&no), 1);
}

#[test]
fn unknown_labels_are_usage_errors() {
    let out = gutsline(&[
        "check-extend",
        "catalog:k4",
        "--A",
        "12,13,23",
        "--A0",
        "99",
        "--B0",
        "14,24",
    ]);
    assert_eq!(exit_code(&out), 2);

    let missing = gutsline(&["info", "no-such-file.toml"]);
    assert_eq!(exit_code(&missing), 2);

    let unknown_catalog = gutsline(&["catalog", "no-such-entry"]);
    assert_eq!(exit_code(&unknown_catalog), 2);
}

#[test]
fn uniform_generator_is_reachable_from_the_cli() {
    let out = gutsline(&["info", "catalog:uniform(2,4)", "--format", "machine"]);
    assert_eq!(exit_code(&out), 0);
    let payload = machine_payload(&out);
    assert_eq!(payload["rank"], 2);
    assert_eq!(payload["circuit_count"], 4); // all 3-subsets of a 4-point line
}
