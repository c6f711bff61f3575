//! Machine-readable run reports.

use hypermatch_engine::{ExecutionReport, QueryPlan};
use serde::{Deserialize, Serialize};

/// Index construction summary, printed once per `run` invocation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildReport {
    pub graph: String,
    pub num_vertices: usize,
    pub num_hyperedges: usize,
    pub build_ms: f64,
    pub num_partitions: usize,
    pub table_entries: usize,
    pub posting_entries: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Timeout,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorkerEntry {
    pub tasks: u64,
    pub expand_tasks: u64,
    pub sink_tasks: u64,
    pub steals: u64,
    pub busy_ms: f64,
    pub peak_deque_len: usize,
}

/// Per-query result row. `count` mirrors the engine output exactly; under a
/// timeout it holds the partial count reached before cancellation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub query: String,
    pub status: RunStatus,
    pub count: u64,
    pub elapsed_ms: f64,
    /// Matching order as query hyperedge indices.
    pub order: Vec<u32>,
    pub candidates: u64,
    pub filtered: u64,
    pub workers: Vec<WorkerEntry>,
    pub peak_live_tasks: usize,
}

impl RunReport {
    pub fn new(query: String, plan: &QueryPlan, exec: &ExecutionReport) -> Self {
        RunReport {
            query,
            status: if exec.timed_out {
                RunStatus::Timeout
            } else {
                RunStatus::Ok
            },
            count: exec.embeddings,
            elapsed_ms: exec.elapsed.as_secs_f64() * 1e3,
            order: plan.order().steps().to_vec(),
            candidates: exec.candidates,
            filtered: exec.filtered,
            workers: exec
                .workers
                .iter()
                .map(|w| WorkerEntry {
                    tasks: w.tasks_executed,
                    expand_tasks: w.expand_tasks,
                    sink_tasks: w.sink_tasks,
                    steals: w.successful_steals,
                    busy_ms: w.busy.as_secs_f64() * 1e3,
                    peak_deque_len: w.peak_deque_len,
                })
                .collect(),
            peak_live_tasks: exec.peak_live_tasks.unwrap_or(0),
        }
    }

    pub fn render_text(&self, diagnostics: bool) -> String {
        let mut out = format!(
            "query {}: {} count={} elapsed_ms={:.3} order={:?}",
            self.query,
            match self.status {
                RunStatus::Ok => "ok",
                RunStatus::Timeout => "TIMEOUT",
            },
            self.count,
            self.elapsed_ms,
            self.order,
        );
        if diagnostics {
            out.push_str(&format!(
                "\n  candidates={} filtered={} embeddings={} peak_live_tasks={}",
                self.candidates, self.filtered, self.count, self.peak_live_tasks
            ));
            for (i, w) in self.workers.iter().enumerate() {
                out.push_str(&format!(
                    "\n  worker {i}: tasks={} expands={} sinks={} steals={} busy_ms={:.3} peak_deque={}",
                    w.tasks, w.expand_tasks, w.sink_tasks, w.steals, w.busy_ms, w.peak_deque_len
                ));
            }
        }
        out
    }
}
