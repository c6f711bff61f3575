//! `hypermatch` — exact subhypergraph matching on vertex-labelled
//! hypergraphs.

mod format;
mod report;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hypermatch_core::{EdgeId, Hypergraph, IndexedHypergraph};
use hypermatch_engine::{
    compile_plan, compute_matching_order, execute_parallel, EngineConfig, QueryPlan, SinkMode,
};
use hypermatch_oracle::{brute_force_tiny, enumerate_by_vertex};
use hypermatch_querygen::{generate_queries, QuerySettings};

use format::{parse_hypergraph, write_hypergraph, LabelDict};
use report::{BuildReport, RunReport, RunStatus};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hypermatch",
    version,
    about = "Exact subhypergraph matching on vertex-labelled hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print summary statistics of a hypergraph file.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sample connected random-walk queries from a data hypergraph.
    GenQueries {
        #[arg(long)]
        graph: PathBuf,
        /// Hyperedges per query.
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        min_vertices: usize,
        #[arg(long)]
        max_vertices: usize,
        /// Number of queries to generate.
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Build the index and execute queries.
    Run {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "query_dir")]
        query: Option<PathBuf>,
        #[arg(long)]
        query_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = Mode::Count)]
        mode: Mode,
        /// Per-query wall-clock budget; timed-out queries are reported and
        /// execution continues.
        #[arg(long, default_value_t = 3600)]
        timeout_secs: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
        /// Include candidate/filter counters and per-worker lines in text
        /// reports.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Run queries through the engine and a reference implementation and
    /// compare the embedding sets.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "query_dir")]
        query: Option<PathBuf>,
        #[arg(long)]
        query_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OracleChoice::Both)]
        oracle: OracleChoice,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Count embeddings.
    Count,
    /// Stream embeddings to stdout, one aligned tuple of data hyperedge ids
    /// per line.
    Print,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleChoice {
    /// Match-by-vertex backtracking with the IHS filter.
    Vertex,
    /// Exhaustive vertex-map enumeration (tiny instances only).
    Bruteforce,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too and are not usage errors.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Stats { graph } => cmd_stats(&graph),
        Command::GenQueries {
            graph,
            edges,
            min_vertices,
            max_vertices,
            count,
            seed,
            out_dir,
        } => cmd_gen_queries(&graph, edges, min_vertices, max_vertices, count, seed, &out_dir),
        Command::Run {
            graph,
            query,
            query_dir,
            threads,
            mode,
            timeout_secs,
            report,
            diagnostics,
        } => cmd_run(
            &graph,
            &query_paths(query, query_dir)?,
            threads,
            mode,
            timeout_secs,
            report,
            diagnostics,
        ),
        Command::Verify {
            graph,
            query,
            query_dir,
            oracle,
            threads,
        } => cmd_verify(&graph, &query_paths(query, query_dir)?, oracle, threads),
    }
}

/// Explicit query file, or every `.hg` file of a directory in name order.
fn query_paths(query: Option<PathBuf>, query_dir: Option<PathBuf>) -> Result<Vec<PathBuf>> {
    match (query, query_dir) {
        (Some(q), None) => Ok(vec![q]),
        (None, Some(dir)) => {
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
                .with_context(|| format!("reading query directory {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "hg"))
                .collect();
            paths.sort();
            if paths.is_empty() {
                bail!("no .hg query files in {}", dir.display());
            }
            Ok(paths)
        }
        _ => bail!("exactly one of --query and --query-dir is required"),
    }
}

fn load_graph(path: &Path, dict: &mut LabelDict) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    parse_hypergraph(&text, dict).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_stats(graph: &Path) -> Result<u8> {
    let mut dict = LabelDict::default();
    let g = load_graph(graph, &mut dict)?;
    let s = g.stats();
    println!("num_vertices: {}", s.num_vertices);
    println!("num_hyperedges: {}", s.num_hyperedges);
    println!("num_labels: {}", s.num_labels);
    println!("max_arity: {}", s.max_arity);
    println!("mean_arity: {}", s.mean_arity);
    println!("connected: {}", g.is_connected());
    Ok(EXIT_OK)
}

fn cmd_gen_queries(
    graph: &Path,
    edges: usize,
    min_vertices: usize,
    max_vertices: usize,
    count: usize,
    seed: u64,
    out_dir: &Path,
) -> Result<u8> {
    let mut dict = LabelDict::default();
    let g = load_graph(graph, &mut dict)?;
    let settings = QuerySettings {
        num_edges: edges,
        min_vertices,
        max_vertices,
        seed,
        num_queries: count,
    };
    let queries = generate_queries(&g, &settings)?;
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    for (i, q) in queries.iter().enumerate() {
        let path = out_dir.join(format!("query_{i:03}.hg"));
        std::fs::write(&path, write_hypergraph(q, &dict))
            .with_context(|| format!("writing {}", path.display()))?;
        println!(
            "wrote {} ({} vertices, {} hyperedges)",
            path.display(),
            q.vertex_count(),
            q.edge_count()
        );
    }
    Ok(EXIT_OK)
}

fn plan_query(q: &Hypergraph, idx: &IndexedHypergraph) -> Result<QueryPlan> {
    let order = compute_matching_order(q, idx)?;
    Ok(compile_plan(q, order)?)
}

fn cmd_run(
    graph: &Path,
    queries: &[PathBuf],
    threads: usize,
    mode: Mode,
    timeout_secs: u64,
    report: ReportFormat,
    diagnostics: bool,
) -> Result<u8> {
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    let mut dict = LabelDict::default();
    let g = load_graph(graph, &mut dict)?;
    let build_started = Instant::now();
    let idx = IndexedHypergraph::build(g);
    let build = BuildReport {
        graph: graph.display().to_string(),
        num_vertices: idx.graph().vertex_count(),
        num_hyperedges: idx.graph().edge_count(),
        build_ms: build_started.elapsed().as_secs_f64() * 1e3,
        num_partitions: idx.size_stats().num_partitions,
        table_entries: idx.size_stats().total_table_entries,
        posting_entries: idx.size_stats().total_posting_entries,
    };
    let stdout = std::io::stdout();
    match report {
        ReportFormat::Json => {
            serde_json::to_writer(stdout.lock(), &build)?;
            writeln!(stdout.lock())?;
        }
        ReportFormat::Text => println!(
            "graph {}: {} vertices, {} hyperedges; index built in {:.3} ms \
             ({} partitions, {} table entries, {} posting entries)",
            build.graph,
            build.num_vertices,
            build.num_hyperedges,
            build.build_ms,
            build.num_partitions,
            build.table_entries,
            build.posting_entries
        ),
    }

    let mut any_timeout = false;
    for qpath in queries {
        let q = load_graph(qpath, &mut dict)?;
        let plan = plan_query(&q, &idx)?;
        let config = EngineConfig {
            workers: threads,
            sink: match mode {
                Mode::Count => SinkMode::Count,
                Mode::Print => SinkMode::Emit,
            },
            instrument_memory: true,
            skew_initial_to_first_worker: false,
            timeout: Some(Duration::from_secs(timeout_secs)),
        };
        let exec = execute_parallel(&plan, &idx, &config);
        any_timeout |= exec.timed_out;
        if let Some(embeddings) = &exec.emitted {
            let mut out = stdout.lock();
            for m in embeddings {
                let line: Vec<String> = m.iter().map(|e| e.to_string()).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
        let row = RunReport::new(qpath.display().to_string(), &plan, &exec);
        match report {
            ReportFormat::Json => {
                serde_json::to_writer(stdout.lock(), &row)?;
                writeln!(stdout.lock())?;
            }
            ReportFormat::Text => println!("{}", row.render_text(diagnostics)),
        }
        debug_assert!(row.status == RunStatus::Timeout || row.count == exec.embeddings);
    }
    Ok(if any_timeout { EXIT_TIMEOUT } else { EXIT_OK })
}

fn cmd_verify(
    graph: &Path,
    queries: &[PathBuf],
    oracle: OracleChoice,
    threads: usize,
) -> Result<u8> {
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    let mut dict = LabelDict::default();
    let g = load_graph(graph, &mut dict)?;
    let idx = IndexedHypergraph::build(g.clone());

    let mut disagreements = 0usize;
    for qpath in queries {
        let q = load_graph(qpath, &mut dict)?;
        let plan = plan_query(&q, &idx)?;
        let config = EngineConfig {
            workers: threads,
            sink: SinkMode::Emit,
            ..Default::default()
        };
        let engine: BTreeSet<Vec<EdgeId>> = execute_parallel(&plan, &idx, &config)
            .emitted
            .unwrap()
            .into_iter()
            .collect();

        let mut oracle_sets: Vec<(&str, BTreeSet<Vec<EdgeId>>)> = Vec::new();
        if matches!(oracle, OracleChoice::Vertex | OracleChoice::Both) {
            oracle_sets.push(("vertex", enumerate_by_vertex(&q, &g, true)));
        }
        if matches!(oracle, OracleChoice::Bruteforce | OracleChoice::Both) {
            match brute_force_tiny(&q, &g) {
                Ok(set) => oracle_sets.push(("bruteforce", set)),
                Err(refusal) => {
                    bail!(
                        "{}: {refusal}; rerun with --oracle vertex",
                        qpath.display()
                    );
                }
            }
        }

        for (name, oracle_set) in &oracle_sets {
            if !compare_sets(graph, qpath, name, &engine, oracle_set)? {
                disagreements += 1;
            }
        }
    }
    Ok(if disagreements > 0 {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}

/// Compares the engine's embedding set against one oracle's; on mismatch a
/// counterexample file with the two one-sided differences is written next to
/// the working directory. Returns whether the sets agree.
fn compare_sets(
    graph: &Path,
    query: &Path,
    oracle: &str,
    engine: &BTreeSet<Vec<EdgeId>>,
    expected: &BTreeSet<Vec<EdgeId>>,
) -> Result<bool> {
    if engine == expected {
        println!(
            "query {}: engine and {oracle} oracle agree on {} embeddings",
            query.display(),
            engine.len()
        );
        return Ok(true);
    }
    let dump = dump_counterexample(graph, query, oracle, engine, expected)?;
    eprintln!(
        "query {}: DISAGREEMENT with {oracle} oracle (engine {}, oracle {}); details in {}",
        query.display(),
        engine.len(),
        expected.len(),
        dump.display()
    );
    Ok(false)
}

fn dump_counterexample(
    graph: &Path,
    query: &Path,
    oracle: &str,
    engine: &BTreeSet<Vec<EdgeId>>,
    expected: &BTreeSet<Vec<EdgeId>>,
) -> Result<PathBuf> {
    let stem = query
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("query");
    let path = PathBuf::from(format!("counterexample_{stem}_{oracle}.txt"));
    let mut out = String::new();
    out.push_str(&format!("graph: {}\n", graph.display()));
    out.push_str(&format!("query: {}\n", query.display()));
    out.push_str(&format!("oracle: {oracle}\n"));
    out.push_str("engine-only embeddings:\n");
    for m in engine.difference(expected) {
        out.push_str(&format!("  {m:?}\n"));
    }
    out.push_str("oracle-only embeddings:\n");
    for m in expected.difference(engine) {
        out.push_str(&format!("  {m:?}\n"));
    }
    std::fs::write(&path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simulates a faulty engine by dropping one embedding from the set the
    /// comparison sees; the disagreement must be detected and dumped.
    #[test]
    fn mismatched_sets_are_detected_and_dumped() {
        let dir = tempfile::tempdir().unwrap();
        let cwd = std::env::current_dir().unwrap();
        std::env::set_current_dir(dir.path()).unwrap();

        let full: BTreeSet<Vec<EdgeId>> =
            [vec![0, 2, 4], vec![1, 3, 5]].into_iter().collect();
        let mut mutated = full.clone();
        mutated.remove(&vec![1, 3, 5]);

        let agree = compare_sets(
            Path::new("h.hg"),
            Path::new("q.hg"),
            "bruteforce",
            &mutated,
            &full,
        )
        .unwrap();
        assert!(!agree);
        let dump = std::fs::read_to_string("counterexample_q_bruteforce.txt").unwrap();
        assert!(dump.contains("oracle-only embeddings:\n  [1, 3, 5]"), "{dump}");

        let agree = compare_sets(
            Path::new("h.hg"),
            Path::new("q.hg"),
            "bruteforce",
            &full,
            &full,
        )
        .unwrap();
        assert!(agree);

        std::env::set_current_dir(cwd).unwrap();
    }
}
