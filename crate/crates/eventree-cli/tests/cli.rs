//! End-to-end tests of the `eventree` binary: argument handling, file
//! formats, exit codes, and output stability.

use std::path::Path;
use std::process::{Command, Output};

fn eventree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eventree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is JSON")
}

fn write_file(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_fixture_json_has_verified_tree() {
    let out = eventree(&["solve", "fixture:petersen", "--json"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", stderr_of(&out));
    let v = json_of(&out);
    assert_eq!(v["n"], 10);
    assert_eq!(v["r"], 3);
    assert_eq!(v["connected"], true);
    assert_eq!(v["nonbipartite"], true);
    assert_eq!(v["tree_edges"].as_array().unwrap().len(), 9);
    assert_eq!(v["certificate"]["overall"], true);
}

#[test]
fn solve_k4_emits_three_edge_tree() {
    let out = eventree(&["solve", "k4"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("spanning even tree (3 edges):"), "{text}");
    assert!(text.contains("certificate: PASS"), "{text}");
}

#[test]
fn solve_three_bridges_reports_bridges_and_fifteen_edges() {
    let out = eventree(&["solve", "fixture:three_bridges", "--json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["n"], 16);
    assert_eq!(v["bridges"].as_array().unwrap().len(), 3);
    assert_eq!(v["tree_edges"].as_array().unwrap().len(), 15);
    assert_eq!(v["certificate"]["overall"], true);
}

#[test]
fn bipartite_inputs_exit_12() {
    let out = eventree(&["solve", "c4"]);
    assert_eq!(code_of(&out), 12);
    assert!(stderr_of(&out).contains("bipartite"), "{}", stderr_of(&out));

    let dir = tempfile::tempdir().unwrap();
    let c6 = write_file(dir.path(), "c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let out = eventree(&["solve", c6.to_str().unwrap()]);
    assert_eq!(code_of(&out), 12);
}

#[test]
fn unknown_fixture_exits_10_and_lists_names() {
    let out = eventree(&["solve", "fixture:nosuch"]);
    assert_eq!(code_of(&out), 10);
    let err = stderr_of(&out);
    assert!(err.contains("nosuch"), "{err}");
    assert!(err.contains("petersen"), "should list fixtures: {err}");
}

#[test]
fn nonregular_and_disconnected_inputs_get_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let star = write_file(dir.path(), "star.txt", "4 3\n0 1\n0 2\n0 3\n");
    assert_eq!(code_of(&eventree(&["solve", star.to_str().unwrap()])), 11);

    let split = write_file(
        dir.path(),
        "split.txt",
        "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n",
    );
    assert_eq!(code_of(&eventree(&["solve", split.to_str().unwrap()])), 13);
}

#[test]
fn dimacs_and_edgelist_parse_to_the_same_graph() {
    let dir = tempfile::tempdir().unwrap();
    let el = write_file(
        dir.path(),
        "k4.txt",
        "# complete graph\n4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n",
    );
    let dm = write_file(
        dir.path(),
        "k4.col",
        "c complete graph\np edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n",
    );
    let a = eventree(&["solve", el.to_str().unwrap(), "--json"]);
    let b = eventree(&["solve", dm.to_str().unwrap(), "--json"]);
    let c = eventree(&["solve", dm.to_str().unwrap(), "--format", "dimacs", "--json"]);
    assert_eq!(code_of(&a), 0);
    assert_eq!(code_of(&b), 0);
    assert_eq!(stdout_of(&a), stdout_of(&b), "auto-detected dimacs must match");
    assert_eq!(stdout_of(&b), stdout_of(&c));
}

#[test]
fn malformed_input_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.txt", "4 4\n0 1\n0 x\n1 2\n2 3\n");
    let out = eventree(&["solve", bad.to_str().unwrap()]);
    assert_eq!(code_of(&out), 10);
    assert!(stderr_of(&out).contains("line 3"), "{}", stderr_of(&out));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let a = eventree(&["solve", "fixture:gp7_2", "--json"]);
    let b = eventree(&["solve", "fixture:gp7_2", "--json"]);
    assert_eq!(code_of(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_is_deterministic_and_round_trips_through_solve() {
    let a = eventree(&["gen", "--n", "24", "--r", "3", "--seed", "11"]);
    let b = eventree(&["gen", "--n", "24", "--r", "3", "--seed", "11"]);
    assert_eq!(code_of(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "g.txt", &stdout_of(&a));
    let solved = eventree(&["solve", path.to_str().unwrap(), "--json"]);
    assert_eq!(code_of(&solved), 0, "stderr: {}", stderr_of(&solved));
    let v = json_of(&solved);
    assert_eq!(v["m"], 36, "n*r/2 edges survive the round trip");
    assert_eq!(v["certificate"]["overall"], true);
}

#[test]
fn gen_n16_r3_emits_24_edges() {
    let out = eventree(&["gen", "--n", "16", "--r", "3", "--seed", "7"]);
    assert_eq!(code_of(&out), 0);
    let edge_lines = stdout_of(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .count();
    assert_eq!(edge_lines, 24);
}

#[test]
fn gen_fixture_petersen_emits_15_edges() {
    let out = eventree(&["gen", "--fixture", "petersen"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("10 15"), "{text}");
}

#[test]
fn gen_infeasible_spec_exits_14() {
    let out = eventree(&["gen", "--n", "5", "--r", "3"]);
    assert_eq!(code_of(&out), 14);
}

#[test]
fn gen_budget_can_be_exhausted_via_flag_and_env() {
    let out = eventree(&["gen", "--n", "8", "--r", "3", "--budget", "0"]);
    assert_eq!(code_of(&out), 15);

    let out = Command::new(env!("CARGO_BIN_EXE_eventree"))
        .args(["gen", "--n", "8", "--r", "3"])
        .env("EVENTREE_REJECTION_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 15);

    // An explicit flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_eventree"))
        .args(["gen", "--n", "8", "--r", "3", "--budget", "10000"])
        .env("EVENTREE_REJECTION_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(code_of(&out), 0);
}

#[test]
fn verify_accepts_solver_output_and_rejects_corruption() {
    let solved = eventree(&["solve", "fixture:petersen", "--json"]);
    let v = json_of(&solved);
    let mut tree_text = String::new();
    for e in v["tree_edges"].as_array().unwrap() {
        tree_text.push_str(&format!("{} {}\n", e["u"], e["v"]));
    }
    let dir = tempfile::tempdir().unwrap();
    let tree = write_file(dir.path(), "tree.txt", &tree_text);
    let ok = eventree(&["verify", "fixture:petersen", "--tree", tree.to_str().unwrap()]);
    assert_eq!(code_of(&ok), 0, "{}", stdout_of(&ok));
    assert!(stdout_of(&ok).contains("overall: PASS"));

    // Drop one edge: no longer spanning.
    let shorter: Vec<&str> = tree_text.lines().skip(1).collect();
    let partial = write_file(dir.path(), "partial.txt", &shorter.join("\n"));
    let fail = eventree(&["verify", "fixture:petersen", "--tree", partial.to_str().unwrap()]);
    assert_eq!(code_of(&fail), 16);
}

#[test]
fn verify_c5_path_passes_and_k4_odd_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path4 = write_file(dir.path(), "p4.txt", "0 1\n1 2\n2 3\n3 4\n");
    let ok = eventree(&["verify", "c5", "--tree", path4.to_str().unwrap()]);
    assert_eq!(code_of(&ok), 0);

    // A 3-edge hamiltonian path of K4 has its two leaves at odd distance.
    let path3 = write_file(dir.path(), "p3.txt", "0 1\n1 2\n2 3\n");
    let fail = eventree(&["verify", "k4", "--tree", path3.to_str().unwrap()]);
    assert_eq!(code_of(&fail), 16);
    assert!(stdout_of(&fail).contains("FAIL leaves-one-class"), "{}", stdout_of(&fail));

    let stub = write_file(dir.path(), "p2.txt", "0 1\n1 2\n");
    let fail = eventree(&["verify", "k4", "--tree", stub.to_str().unwrap()]);
    assert_eq!(code_of(&fail), 16);
    assert!(stdout_of(&fail).contains("FAIL spans-graph"), "{}", stdout_of(&fail));
}

#[test]
fn dot_export_renders_both_leaf_sides() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("tree.dot");
    let out = eventree(&["solve", "petersen", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph eventree {"), "{text}");
    assert!(text.contains("fillcolor=gold"), "{text}");
    assert!(text.contains("--"), "{text}");
}

#[test]
fn batch_reports_files_in_name_order_and_keeps_going_after_errors() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "b_k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    write_file(dir.path(), "a_c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    write_file(dir.path(), "c_c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let out = eventree(&["solve", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(code_of(&out), 12, "first failure's class becomes the exit code");
    let text = stdout_of(&out);
    let a = text.find("a_c5.txt").unwrap();
    let b = text.find("b_k4.txt").unwrap();
    let c = text.find("c_c4.txt").unwrap();
    assert!(a < b && b < c, "name order: {text}");
    assert!(text.contains("a_c5.txt: ok"), "{text}");
    assert!(text.contains("c_c4.txt: error"), "{text}");
}

#[test]
fn batch_json_emits_one_entry_per_file() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    write_file(dir.path(), "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let out = eventree(&["solve", "--batch", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(code_of(&out), 0);
    let v = json_of(&out);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().all(|e| e["ok"] == true));
}

#[test]
fn oracle_reports_match_known_answers() {
    let v = json_of(&eventree(&["oracle", "fixture:three_bridges", "--json"]));
    assert_eq!(v["even_spanning_tree"], true);
    assert_eq!(v["two_factor"], false);

    let v = json_of(&eventree(&["oracle", "c4", "--json"]));
    assert_eq!(v["even_spanning_tree"], false);
    assert_eq!(v["two_factor"], true);

    let v = json_of(&eventree(&["oracle", "k4", "--json"]));
    assert_eq!(v["even_spanning_tree"], true);
    assert_eq!(v["two_factor"], true);

    let v = json_of(&eventree(&["oracle", "c5", "--check", "count", "--json"]));
    assert_eq!(v["total"], 5);
    assert_eq!(v["even"], 5);
}

#[test]
fn oracle_budget_exhaustion_exits_15() {
    let out = eventree(&["oracle", "fixture:gp7_2", "--check", "count", "--budget", "3"]);
    assert_eq!(code_of(&out), 15);
}

#[test]
fn missing_graph_argument_exits_18_and_bad_flags_exit_2() {
    assert_eq!(code_of(&eventree(&["solve"])), 18);
    assert_eq!(code_of(&eventree(&["solve", "--nonsense"])), 2);
}

#[test]
fn verify_all_flag_is_accepted_and_passes() {
    let out = eventree(&["solve", "fixture:gp7_2", "--verify-all", "--json"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(json_of(&out)["certificate"]["overall"], true);
}
