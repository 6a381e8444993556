//! End-to-end tests of the command-line interface: output formats, the
//! JSON schema, and the exit-status contract.

use std::path::PathBuf;

use eigensync::cli::run;
use serde_json::{json, Value};

struct CliResult {
    code: i32,
    stdout: String,
    stderr: String,
}

fn eigensync(args: &[&str]) -> CliResult {
    let mut argv = vec!["eigensync".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    CliResult {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn fixture_b(dir: &tempfile::TempDir) -> PathBuf {
    write_file(dir, "b.dgf", "4 2\n0 1\n3 0\n1 1\n2 2\n")
}

fn fixture_d(dir: &tempfile::TempDir) -> PathBuf {
    write_file(dir, "d.dgf", "4 2\n0 2\n2 0\n1 3\n3 2\n")
}

fn fixture_f2(dir: &tempfile::TempDir) -> PathBuf {
    write_file(dir, "f2.dgf", "2 2\n0 1\n0 1\n")
}

#[test]
fn eigenvector_of_cerny_4() {
    let dir = tempfile::tempdir().unwrap();
    let gen = eigensync(&["generate", "cerny", "4"]);
    assert_eq!(gen.code, 0);
    let path = write_file(&dir, "cerny4.dgf", &gen.stdout);
    let res = eigensync(&["eigenvector", path.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert_eq!(res.stdout.trim(), "2 2 2 1");
}

#[test]
fn eigenvector_with_distribution() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture_b(&dir);
    let res = eigensync(&["eigenvector", path.to_str().unwrap(), "--dist", "1/3,2/3"]);
    assert_eq!(res.code, 0);
    assert_eq!(res.stdout.trim(), "3 3 1 1");
}

#[test]
fn distribution_decimals_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture_b(&dir);
    let res = eigensync(&["eigenvector", path.to_str().unwrap(), "--dist", "0.5,0.5"]);
    assert_eq!(res.code, 2);
    assert!(res.stderr.contains("decimals are rejected"));
}

#[test]
fn sync_check_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let b = fixture_b(&dir);
    let res = eigensync(&["sync-check", b.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert_eq!(res.stdout.trim(), "SYNCHRONIZING");

    let res = eigensync(&["sync-check", b.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["command"], "sync-check");
    assert_eq!(v["input"], json!(b.to_str().unwrap()));
    assert_eq!(v["result"], json!({ "synchronizing": true }));

    let d = fixture_d(&dir);
    let res = eigensync(&["sync-check", d.to_str().unwrap()]);
    assert_eq!(res.stdout.trim(), "NOT_SYNCHRONIZING");
}

#[test]
fn reset_threshold_of_b() {
    let dir = tempfile::tempdir().unwrap();
    let b = fixture_b(&dir);
    let res = eigensync(&["reset-threshold", b.to_str().unwrap(), "--json"]);
    assert_eq!(res.code, 0);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["result"]["length"], 5);
    assert_eq!(v["budget"], 20);
    // budget violation is a domain error
    let res = eigensync(&["reset-threshold", b.to_str().unwrap(), "--max-n", "2"]);
    assert_eq!(res.code, 1);
    assert!(res.stderr.contains("budget"));
}

#[test]
fn friedman_on_d_reports_blocks_weight_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = fixture_d(&dir);
    let res = eigensync(&["friedman", d.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert_eq!(
        res.stdout.trim(),
        "blocks {0,3},{1,2}\nweight 3\nwitness bb"
    );
    let res = eigensync(&["friedman", d.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["result"]["blocks"], json!([[0, 3], [1, 2]]));
    assert_eq!(v["result"]["weight"], "3");
    assert_eq!(v["result"]["witness"], "bb");
    assert_eq!(v["result"]["eigenvector"], json!(["1", "1", "2", "2"]));
}

#[test]
fn partitions_from_digraph_and_from_vector() {
    let dir = tempfile::tempdir().unwrap();
    let d = fixture_d(&dir);
    let res = eigensync(&["partitions", d.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert!(res.stdout.contains("vector 1 1 2 2"));
    assert!(res.stdout.contains("b=2: 1 partition"));
    assert!(res.stdout.contains("b=3: 2 partitions"));
    assert!(res.stdout.contains("global count 3"));

    let vec_path = write_file(&dir, "w.txt", "2 2 2 1\n");
    let res = eigensync(&["partitions", vec_path.to_str().unwrap(), "--json"]);
    assert_eq!(res.code, 0);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["result"]["global_count"], 0);
    assert_eq!(v["result"]["partitionable"], json!(false));
    assert_eq!(v["result"]["source"], "vector");
}

#[test]
fn certify_verdicts_match_fixture_digraphs() {
    let dir = tempfile::tempdir().unwrap();
    let gen = eigensync(&["generate", "cerny", "5"]);
    let cerny = write_file(&dir, "cerny5.dgf", &gen.stdout);
    let res = eigensync(&["certify", cerny.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert!(res
        .stdout
        .starts_with("TOTALLY_SYNCHRONIZING non-partitionable eigenvector (2 2 2 2 1)"));

    let b = fixture_b(&dir);
    let res = eigensync(&["certify", b.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["result"]["status"], "TOTALLY_SYNCHRONIZING");
    assert_eq!(v["result"]["certificate_kind"], "exhaustive-enumeration");
    assert_eq!(v["certificate"]["labelings"], "16");
    assert_eq!(v["certificate"]["functions"], 4);

    let d = fixture_d(&dir);
    let res = eigensync(&["certify", d.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["result"]["status"], "NOT_TOTALLY_SYNCHRONIZING");
    let witness = v["witness"].as_str().unwrap();
    let a = eigensync::dgf::parse_automaton(witness).unwrap();
    assert!(!a.is_synchronizing());
}

#[test]
fn ratio_renders_value_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = fixture_f2(&dir);
    let res = eigensync(&["ratio", f2.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert_eq!(res.stdout.trim(), "1/2 (2/4)");
}

#[test]
fn rt_bound_on_b() {
    let dir = tempfile::tempdir().unwrap();
    let b = fixture_b(&dir);
    let res = eigensync(&["rt-bound", b.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert_eq!(res.stdout.trim(), "rt=5 W=6 bound=21 HOLDS");
}

#[test]
fn generate_families_round_trip() {
    let gen = eigensync(&["generate", "u", "3", "2"]);
    assert_eq!(gen.code, 0);
    let g = eigensync::dgf::parse_digraph(&gen.stdout).unwrap();
    assert_eq!(g.slots(1), &[0, 2]);

    let gen = eigensync(&["generate", "complete-weighted", "1,1,2"]);
    let g = eigensync::dgf::parse_digraph(&gen.stdout).unwrap();
    assert_eq!(g.k(), 4);
    assert_eq!(g.slots(0), &[0, 1, 2, 2]);

    let res = eigensync(&["generate", "cerny", "1"]);
    assert_eq!(res.code, 2);
}

#[test]
fn lift_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    let b = fixture_b(&dir);
    let res = eigensync(&["lift", b.to_str().unwrap(), "--json"]);
    assert_eq!(res.code, 0);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["result"]["states"], 6);
    assert_eq!(v["result"]["base_letters"], 2);
    assert_eq!(v["result"]["lambda_letters"], json!([2, 3, 4, 5, 6, 7]));
    assert_eq!(v["result"]["state_map"], json!([0, 0, 1, 1, 2, 3]));
    let lifted = eigensync::dgf::parse_automaton(v["result"]["dgf"].as_str().unwrap()).unwrap();
    assert!(lifted.is_eulerian());
}

#[test]
fn recolor_eulerian_yields_nonsync_permutations() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = fixture_f2(&dir);
    let res = eigensync(&["recolor-eulerian", f2.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    let a = eigensync::dgf::parse_automaton(&res.stdout).unwrap();
    assert!(!a.is_synchronizing());

    // non-Eulerian input is a domain error (exit 1)
    let gen = eigensync(&["generate", "cerny", "4"]);
    let cerny = write_file(&dir, "c4.dgf", &gen.stdout);
    let res = eigensync(&["recolor-eulerian", cerny.to_str().unwrap()]);
    assert_eq!(res.code, 1);
    assert!(res.stderr.contains("not Eulerian"));
}

#[test]
fn experiment_runs_and_reports() {
    let res = eigensync(&[
        "experiment",
        "--mode",
        "ratio-distribution",
        "--n",
        "2",
        "--k",
        "2",
        "--samples",
        "32",
        "--seed",
        "7",
        "--json",
    ]);
    assert_eq!(res.code, 0);
    let v: Value = serde_json::from_str(&res.stdout).unwrap();
    assert_eq!(v["command"], "experiment");
    assert_eq!(v["result"]["config"]["samples"], 32);
    let counts = v["result"]["counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 32);

    let res = eigensync(&[
        "experiment", "--mode", "no-such-mode", "--n", "2", "--k", "2", "--samples", "1",
        "--seed", "1",
    ]);
    assert_eq!(res.code, 2);
}

#[test]
fn export_dot_modes() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = fixture_f2(&dir);
    let res = eigensync(&["export-dot", f2.to_str().unwrap()]);
    assert_eq!(res.code, 0);
    assert!(res.stdout.contains("0 -> 1;"));
    assert!(!res.stdout.contains("label"));
    let res = eigensync(&["export-dot", f2.to_str().unwrap(), "--automaton"]);
    assert!(res.stdout.contains("[label=\"b\"]"));
}

#[test]
fn exit_codes_for_parse_and_domain_failures() {
    let dir = tempfile::tempdir().unwrap();
    // out-of-range destination: parse error, exit 2, line number named
    let bad = write_file(&dir, "bad.dgf", "2 2\n0 2\n0 1\n");
    let res = eigensync(&["sync-check", bad.to_str().unwrap()]);
    assert_eq!(res.code, 2);
    assert!(res.stderr.contains("line 2"));

    // missing file: usage error
    let res = eigensync(&["sync-check", "/nonexistent/x.dgf"]);
    assert_eq!(res.code, 2);

    // not strongly connected: domain error, exit 1
    let sink = write_file(&dir, "sink.dgf", "2 2\n0 0\n0 0\n");
    let res = eigensync(&["eigenvector", sink.to_str().unwrap()]);
    assert_eq!(res.code, 1);
    assert!(res.stderr.contains("not strongly connected"));

    // unknown subcommand: usage error from the parser
    let res = eigensync(&["frobnicate"]);
    assert_eq!(res.code, 2);

    // help exits 0
    let res = eigensync(&["--help"]);
    assert_eq!(res.code, 0);
    assert!(res.stdout.contains("Usage"));
}

#[test]
fn quiet_suppresses_output() {
    let dir = tempfile::tempdir().unwrap();
    let b = fixture_b(&dir);
    let res = eigensync(&["sync-check", b.to_str().unwrap(), "--quiet"]);
    assert_eq!(res.code, 0);
    assert!(res.stdout.is_empty());
}

/// The machine schema is stable: golden rendering of a full envelope.
#[test]
fn golden_json_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = write_file(&dir, "f2.dgf", "2 2\n0 1\n0 1\n");
    let res = eigensync(&["ratio", f2.to_str().unwrap(), "--json"]);
    let expected = format!(
        "{{\"budget\":10000000,\"command\":\"ratio\",\"input\":{:?},\"result\":{{\"denominator\":\"4\",\"numerator\":\"2\",\"value\":\"1/2\"}}}}",
        f2.to_str().unwrap()
    );
    assert_eq!(res.stdout.trim(), expected);

    let res = eigensync(&["eigenvector", f2.to_str().unwrap(), "--json"]);
    let expected = format!(
        "{{\"command\":\"eigenvector\",\"input\":{:?},\"result\":{{\"eigenvector\":[\"1\",\"1\"],\"sum\":\"2\"}}}}",
        f2.to_str().unwrap()
    );
    assert_eq!(res.stdout.trim(), expected);
}
