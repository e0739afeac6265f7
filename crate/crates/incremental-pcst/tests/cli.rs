//! End-to-end checks of the `ipcst` subcommands: artifact contents, exit
//! codes and the round-trip stability of the instance format.

use std::path::Path;

use incremental_pcst::cli::run_from;

fn run(dir: &Path, args: &[&str]) -> i32 {
    let mut full = vec!["ipcst"];
    full.extend_from_slice(args);
    let _ = dir; // out dirs are passed explicitly per call
    run_from(full)
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn generate_parse_serialize_is_byte_stable() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(
        run(tmp.path(), &[
            "generate", "--family", "diamonds", "--copies", "3", "--out", out
        ]),
        0
    );
    let first = read(tmp.path(), "instance.txt");
    let parsed = incremental_pcst::format::parse_instance(&first).unwrap();
    assert_eq!(incremental_pcst::format::serialize_instance(&parsed), first);
    assert_eq!(parsed.edge_count(), 12);
}

#[test]
fn solve_tree_greedy_orders_skewed_fork() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(
        run(tmp.path(), &[
            "solve",
            "--family", "skewed-fork", "--eps", "1/10",
            "--algorithm", "tree-greedy",
            "--out", out,
        ]),
        0
    );
    // the dense unit edge comes first, then the cheap one
    assert_eq!(read(tmp.path(), "ordering.txt"), "1\n0\n");
    let trace = read(tmp.path(), "trace.jsonl");
    assert_eq!(trace.lines().count(), 2);
    let profile = read(tmp.path(), "profile.csv");
    assert!(profile.starts_with("budget_num,budget_den,prize_num,prize_den\n"));
    assert_eq!(profile.lines().count(), 4); // header + three breakpoints
}

#[test]
fn solve_rejects_non_tree_for_tree_greedy() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let code = run(tmp.path(), &[
        "solve",
        "--family", "hub-bypass", "--eps", "1/10",
        "--algorithm", "tree-greedy",
        "--out", out,
    ]);
    assert_eq!(code, 2);
}

#[test]
fn verify_exit_code_follows_verdict() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    // holds: graph greedy at slack gamma, factor 2
    assert_eq!(
        run(tmp.path(), &[
            "verify",
            "--family", "hub-bypass", "--eps", "1/10",
            "--algorithm", "graph-greedy",
            "--alpha", "gamma", "--mu", "2",
            "--out", out,
        ]),
        0
    );
    let report = read(tmp.path(), "report.json");
    assert!(report.contains("\"verdict\": \"holds\""));
    assert!(read(tmp.path(), "compare.csv").starts_with("B_num,B_den,opt_prize,alg_prize\n"));

    // violated: the eccentricity is not enough slack on this graph
    assert_eq!(
        run(tmp.path(), &[
            "verify",
            "--family", "hub-bypass", "--eps", "1/10",
            "--algorithm", "graph-greedy",
            "--alpha", "chi", "--mu", "1000000",
            "--out", out,
        ]),
        1
    );
    let report = read(tmp.path(), "report.json");
    assert!(report.contains("\"verdict\": \"violated\""));
    assert!(report.contains("\"budget\": \"1/5\""));
}

#[test]
fn verify_tree_greedy_holds_at_eccentricity_on_steep_fork() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(
        run(tmp.path(), &[
            "verify",
            "--family", "steep-fork", "--prize", "5",
            "--algorithm", "tree-greedy",
            "--alpha", "chi", "--mu", "1",
            "--out", out,
        ]),
        0
    );
    assert!(read(tmp.path(), "report.json").contains("\"verdict\": \"holds\""));
}

#[test]
fn verify_ell_sets_scaling_guarantee() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(
        run(tmp.path(), &[
            "verify",
            "--family", "random-graph", "--n", "6", "--m", "9", "--seed", "5",
            "--algorithm", "capacity-scaling",
            "--ell", "1",
            "--out", out,
        ]),
        0
    );
    let report = read(tmp.path(), "report.json");
    assert!(report.contains("\"mu\": \"8/1\""));
}

#[test]
fn frontier_of_single_vertex_is_origin_row() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(
        run(tmp.path(), &[
            "frontier",
            "--family", "random-tree", "--n", "1", "--seed", "1",
            "--out", out,
        ]),
        0
    );
    assert_eq!(
        read(tmp.path(), "frontier.csv"),
        "cost_num,cost_den,prize_num,prize_den\n0,1,0,1\n"
    );
}

#[test]
fn solve_empty_prize_instance_gives_empty_ordering() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    std::fs::write(tmp.path().join("inst.txt"), "root 0\nv 0 0\nv 1 0\ne 0 0 1 1\n").unwrap();
    let input = tmp.path().join("inst.txt");
    assert_eq!(
        run(tmp.path(), &[
            "solve",
            "--input", input.to_str().unwrap(),
            "--algorithm", "tree-greedy",
            "--out", out,
        ]),
        0
    );
    assert_eq!(read(tmp.path(), "ordering.txt"), "");
}

#[test]
fn sweep_aggregates_and_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(
        run(tmp.path(), &[
            "sweep",
            "--family", "random-tree", "--n", "6",
            "--seed-start", "1", "--seed-end", "6",
            "--algorithm", "tree-greedy",
            "--alpha", "chi", "--mu", "1",
            "--jobs", "2",
            "--out", out,
        ]),
        0
    );
    let csv = read(tmp.path(), "sweep.csv");
    assert_eq!(csv.lines().count(), 7); // header + 6 seeds
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",holds")));
}
