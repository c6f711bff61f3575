//! End-to-end tests of the command-line surface, driving the built binary.

use std::path::Path;
use std::process::{Command, Output};

const EXAMPLE_GRAPH: &str = "\
c example data hypergraph
t 7 6
v 0 A
v 1 C
v 2 A
v 3 C
v 4 B
v 5 A
v 6 A
e 2 4
e 4 6
e 0 1 2
e 3 5 6
e 0 1 4 6
e 2 3 4 5
";

const EXAMPLE_QUERY: &str = "\
t 5 3
v 0 A
v 1 C
v 2 A
v 3 A
v 4 B
e 2 4
e 0 1 2
e 0 1 3 4
";

fn hypermatch(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermatch"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_example(dir: &Path) -> (String, String) {
    let g = dir.join("h.hg");
    let q = dir.join("q.hg");
    std::fs::write(&g, EXAMPLE_GRAPH).unwrap();
    std::fs::write(&q, EXAMPLE_QUERY).unwrap();
    (
        g.to_str().unwrap().to_string(),
        q.to_str().unwrap().to_string(),
    )
}

#[test]
fn stats_reports_the_graph_fields() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = write_example(dir.path());
    let out = hypermatch(&["stats", "--graph", &g], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("num_vertices: 7"));
    assert!(text.contains("num_hyperedges: 6"));
    assert!(text.contains("num_labels: 3"));
    assert!(text.contains("max_arity: 4"));
    assert!(text.contains("mean_arity: 3"));
}

#[test]
fn run_counts_the_example_embeddings() {
    let dir = tempfile::tempdir().unwrap();
    let (g, q) = write_example(dir.path());
    for threads in ["1", "4"] {
        let out = hypermatch(
            &[
                "run", "--graph", &g, "--query", &q, "--threads", threads, "--report", "json",
            ],
            dir.path(),
        );
        assert!(out.status.success(), "threads={threads}");
        let text = String::from_utf8(out.stdout).unwrap();
        let query_line = text.lines().nth(1).expect("build line then query line");
        let row: serde_json::Value = serde_json::from_str(query_line).unwrap();
        assert_eq!(row["count"], 2, "threads={threads}");
        assert_eq!(row["status"], "ok");
        assert_eq!(row["order"], serde_json::json!([0, 1, 2]));
        assert_eq!(row["workers"].as_array().unwrap().len(), threads.parse::<usize>().unwrap());
        assert!(row["candidates"].as_u64().unwrap() >= row["filtered"].as_u64().unwrap());
        assert!(row["filtered"].as_u64().unwrap() >= 2);
    }
}

#[test]
fn run_build_line_reports_index_accounting() {
    let dir = tempfile::tempdir().unwrap();
    let (g, q) = write_example(dir.path());
    let out = hypermatch(
        &["run", "--graph", &g, "--query", &q, "--report", "json"],
        dir.path(),
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let build: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(build["num_partitions"], 3);
    assert_eq!(build["table_entries"], 6);
    assert_eq!(build["posting_entries"], 18);
}

#[test]
fn print_mode_streams_aligned_tuples() {
    let dir = tempfile::tempdir().unwrap();
    let (g, q) = write_example(dir.path());
    let out = hypermatch(
        &["run", "--graph", &g, "--query", &q, "--mode", "print"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut tuples: Vec<&str> = text
        .lines()
        .filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit()))
        .collect();
    tuples.sort();
    assert_eq!(tuples, vec!["0 2 4", "1 3 5"]);
}

#[test]
fn absent_signature_query_counts_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = write_example(dir.path());
    let q = dir.path().join("absent.hg");
    std::fs::write(&q, "t 2 1\nv 0 B\nv 1 B\ne 0 1\n").unwrap();
    let out = hypermatch(
        &[
            "run", "--graph", &g, "--query", q.to_str().unwrap(), "--report", "json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    assert_eq!(row["count"], 0);
}

#[test]
fn parse_errors_exit_nonzero_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hg");
    std::fs::write(&bad, "t 2 1\nv 0 A\nv 1 A\ne 0 9\n").unwrap();
    let out = hypermatch(&["stats", "--graph", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "stderr: {err}");
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = write_example(dir.path());
    // Neither --query nor --query-dir.
    let out = hypermatch(&["run", "--graph", &g], dir.path());
    assert_eq!(out.status.code(), Some(1));
    // Unknown flag.
    let out = hypermatch(&["run", "--graph", &g, "--frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_queries_then_run_directory() {
    let dir = tempfile::tempdir().unwrap();
    let (g, _) = write_example(dir.path());
    let qdir = dir.path().join("queries");
    let out = hypermatch(
        &[
            "gen-queries",
            "--graph",
            &g,
            "--edges",
            "2",
            "--min-vertices",
            "2",
            "--max-vertices",
            "6",
            "--count",
            "5",
            "--seed",
            "7",
            "--out-dir",
            qdir.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(&qdir).unwrap().count(), 5);

    let out = hypermatch(
        &[
            "run",
            "--graph",
            &g,
            "--query-dir",
            qdir.to_str().unwrap(),
            "--report",
            "json",
            "--threads",
            "2",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // Every sampled query matches its source at least once.
    for line in text.lines().skip(1) {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(row["count"].as_u64().unwrap() >= 1, "{row}");
    }
}

#[test]
fn verify_agrees_on_the_example() {
    let dir = tempfile::tempdir().unwrap();
    let (g, q) = write_example(dir.path());
    let out = hypermatch(
        &[
            "verify", "--graph", &g, "--query", &q, "--oracle", "both",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("agree on 2 embeddings"), "{text}");
}

#[test]
fn verify_refuses_bruteforce_on_oversized_queries() {
    let dir = tempfile::tempdir().unwrap();
    let mut graph = String::from("t 12 1\n");
    for v in 0..12 {
        graph.push_str(&format!("v {v} A\n"));
    }
    graph.push_str("e 0 1 2 3 4 5 6 7 8 9 10 11\n");
    let g = dir.path().join("big.hg");
    std::fs::write(&g, &graph).unwrap();
    let out = hypermatch(
        &[
            "verify",
            "--graph",
            g.to_str().unwrap(),
            "--query",
            g.to_str().unwrap(),
            "--oracle",
            "bruteforce",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("too large"), "stderr: {err}");
}

#[test]
fn timeout_marks_queries_and_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    // A graph large enough that a zero-second budget always trips first.
    let n: u32 = 24;
    let mut graph = format!("t {} {}\n", 2 * n, n * n);
    for v in 0..n {
        graph.push_str(&format!("v {v} A\n"));
    }
    for v in n..2 * n {
        graph.push_str(&format!("v {v} B\n"));
    }
    for x in 0..n {
        for y in 0..n {
            graph.push_str(&format!("e {x} {}\n", n + y));
        }
    }
    let g = dir.path().join("big.hg");
    std::fs::write(&g, &graph).unwrap();
    let q = dir.path().join("path.hg");
    std::fs::write(
        &q,
        "t 4 3\nv 0 A\nv 1 B\nv 2 A\nv 3 B\ne 0 1\ne 1 2\ne 2 3\n",
    )
    .unwrap();
    let out = hypermatch(
        &[
            "run",
            "--graph",
            g.to_str().unwrap(),
            "--query",
            q.to_str().unwrap(),
            "--timeout-secs",
            "0",
            "--report",
            "json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    let row: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    assert_eq!(row["status"], "timeout");
}

#[test]
fn agreement_leaves_no_counterexample_files() {
    let dir = tempfile::tempdir().unwrap();
    let (g, q) = write_example(dir.path());
    let out = hypermatch(&["verify", "--graph", &g, "--query", &q], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let leftovers = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| {
            e.file_name()
                .to_string_lossy()
                .starts_with("counterexample_")
        })
        .count();
    assert_eq!(leftovers, 0);
}
