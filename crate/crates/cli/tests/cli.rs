use std::path::Path;
use std::process::{Command, Output};

use kef_core::report::InvariantReport;
use serde_json::Value;

fn kef(args: &[&str]) -> Output {
    kef_env(args, &[])
}

fn kef_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kef"));
    cmd.args(args).env_remove("KEF_CAPS_JSON");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("kef runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn verdicts(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
const BOWTIE: &str = "5 6\n0 1\n1 2\n2 0\n2 3\n3 4\n4 2\n";
const DIAMOND: &str = "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n";

#[test]
fn report_on_c5() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c5.txt", C5);
    let o = kef(&["report", "--input", &input]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r["alpha"].as_u64(), r["mu"].as_u64(), r["kappa"].as_u64()), (Some(2), Some(2), Some(1)));
    assert_eq!(r["rho_v"], 5);
    assert_eq!(r["graph_id"], "c5");
    assert_eq!(r["parity_class"], "almost_bipartite");
}

#[test]
fn report_on_fixture() {
    let o = kef(&["report", "--gen", "fixture:fig2-G1"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["rho_v"], 4);
    assert_eq!(r["graph_id"], "figure-fig2-G1");
}

#[test]
fn report_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = kef(&["report", "--gen", "fixture:fig11222", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(out).unwrap();
    let parsed = InvariantReport::from_json(&text).unwrap();
    assert_eq!(parsed.to_json_pretty(), text.trim_end());
}

#[test]
fn report_rejects_empty_and_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    assert_eq!(code(&kef(&["report", "--input", &empty])), 2);
    let bad = write(dir.path(), "bad.txt", "3 1\n0 7\n");
    assert_eq!(code(&kef(&["report", "--input", &bad])), 2);
    assert_eq!(code(&kef(&["report", "--input", "/nonexistent/graph.txt"])), 2);
    assert_eq!(code(&kef(&["report", "--gen", "wheel:n=5"])), 2);
}

#[test]
fn report_capacity_is_exit_three_with_partial_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c5.txt", C5);
    let o = kef(&["report", "--input", &input, "--solver-n", "3"]);
    assert_eq!(code(&o), 3);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["capacity_skipped"], serde_json::json!(["solver_n"]));
    assert!(r["alpha"].is_null());
    assert_eq!(r["n"], 5);
}

#[test]
fn caps_precedence_is_defaults_then_env_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c5.txt", C5);
    let env = [("KEF_CAPS_JSON", r#"{"solver_n": 3}"#)];
    let o = kef_env(&["report", "--input", &input], &env);
    assert_eq!(code(&o), 3);
    let o = kef_env(&["report", "--input", &input, "--solver-n", "10"], &env);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["caps"]["solver_n"], 10);
    let bad = [("KEF_CAPS_JSON", r#"{"nope": 1}"#)];
    assert_eq!(code(&kef_env(&["report", "--input", &input], &bad)), 2);
}

#[test]
fn verify_lem13_on_fig34() {
    let o = kef(&["verify", "--gen", "fixture:fig34-G1", "--theorems", "lem13"]);
    assert_eq!(code(&o), 0);
    let v = verdicts(&o);
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["theorem_id"], "lem13");
    assert_eq!(v[0]["status"], "pass");
    assert_eq!((v[0]["detail"]["lhs"].as_i64(), v[0]["detail"]["rhs"].as_i64()), (Some(1), Some(2)));
}

#[test]
fn verify_c5_all() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c5.txt", C5);
    let store = dir.path().join("store.jsonl");
    let o = kef(&["verify", "--input", &input, "--store", store.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = verdicts(&o);
    assert!(v.len() > 40);
    assert!(v.iter().all(|x| x["status"] == "pass" || x["status"] == "not_applicable"));
    assert!(!store.exists());
}

#[test]
fn verify_multi_odd_graph_th5_is_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bowtie.txt", BOWTIE);
    let o = kef(&["verify", "--input", &input, "--theorems", "th5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(verdicts(&o)[0]["status"], "not_applicable");
}

#[test]
fn verify_failure_writes_the_store_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "diamond.txt", DIAMOND);
    let store = dir.path().join("store.jsonl");
    let o = kef(&["verify", "--input", &input, "--store", store.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let lines: Vec<Value> = std::fs::read_to_string(&store)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["graph_id"], "diamond");
    assert_eq!(lines[0]["edges"].as_array().unwrap().len(), 5);
    assert_eq!(lines[0]["verdicts"][0]["theorem_id"], "th9-rho-e");
}

#[test]
fn verify_unknown_theorem_is_input_error() {
    assert_eq!(code(&kef(&["verify", "--gen", "odd_cycle:k=2", "--theorems", "thm99"])), 2);
    assert_eq!(code(&kef(&["verify"])), 2);
}

#[test]
fn verify_strict_turns_skips_into_exit_three() {
    let args = ["verify", "--gen", "odd_cycle:k=2", "--theorems", "th18", "--matching-enum-n", "3"];
    let o = kef(&args);
    assert_eq!(code(&o), 0);
    assert_eq!(verdicts(&o)[0]["status"], "capacity_skipped");
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&kef(&strict)), 3);
}

#[test]
fn fuzz_exhaustive_five_fails_only_the_edge_bound() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.jsonl");
    let o = kef(&["fuzz", "--exhaustive", "--n-max", "5", "--json", "--store", store.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["graphs"], 1 + 1 + 4 + 38 + 728);
    for (id, t) in s["per_theorem"].as_object().unwrap() {
        if id != "th9-rho-e" {
            assert_eq!(t["fail"], 0, "{id}");
        }
        assert_eq!(t["capacity_skipped"], 0, "{id}");
    }
    let others: Vec<String> = s["per_theorem"]
        .as_object()
        .unwrap()
        .keys()
        .filter(|k| *k != "th9-rho-e")
        .cloned()
        .collect();
    let o = kef(&["fuzz", "--exhaustive", "--n-max", "5", "--theorems", &others.join(","), "--store", store.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn fuzz_random_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.jsonl");
    let run = |jobs: &str| kef(&["fuzz", "--random", "--count", "100", "--seed", "7", "--jobs", jobs, "--store", store.to_str().unwrap()]);
    let a = run("1");
    let b = run("1");
    let c = run("3");
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));
    assert!(stdout(&a).starts_with("graphs: 100\n"));
}

#[test]
fn fuzz_large_graphs_report_capacity_skips() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("store.jsonl");
    let args = ["fuzz", "--n-max", "50", "--count", "40", "--theorems", "th5,cor8,th44,lem84", "--json", "--store", store.to_str().unwrap()];
    let o = kef(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let skipped: u64 = s["per_theorem"].as_object().unwrap().values().map(|t| t["capacity_skipped"].as_u64().unwrap()).sum();
    assert!(skipped > 0);
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&kef(&strict)), 3);
}

#[test]
fn gen_emits_edge_lists_and_graph6() {
    let o = kef(&["gen", "odd_cycle:k=2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("g.g6");
    let o = kef(&["gen", "fixture:fig11222", "--format", "graph6", "--out", g6.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = kef(&["report", "--input", g6.to_str().unwrap(), "--format", "graph6"]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r["alpha"].as_u64(), r["mu"].as_u64(), r["rho_v"].as_u64()), (Some(5), Some(4), Some(5)));
    let o = kef(&["gen", "cycle_plus_trees:k=2,n=9,count=3,seed=4"]);
    assert_eq!(stdout(&o).matches("9 9\n").count(), 3);
}
