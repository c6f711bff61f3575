//! Task-based parallel execution of a compiled plan.
//!
//! The dataflow is a straight SCAN → EXPAND* → SINK path. A scan task covers
//! a contiguous slice of the first-edge partition and spawns one expand task
//! per slice edge; an expand task generates candidates, extends, validates,
//! and spawns expand or sink children; a sink task folds a finished
//! embedding into its worker's counter or output buffer.
//!
//! Each worker owns a double-ended task queue. The owner pushes and pops at
//! the head, so newest tasks run first and intermediate results never pile
//! up beyond one candidate fan-out per matching step. Idle workers steal the
//! older half of a random non-empty victim's queue from the tail. Quiescence
//! is detected by a shared pending-task counter, incremented on spawn and
//! decremented on completion; workers stop once it reaches zero.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use hypermatch_core::{EdgeId, IndexedHypergraph};

use crate::embedding::PartialEmbedding;
use crate::matching::{generate_candidates, validate, Validation};
use crate::plan::QueryPlan;

/// What the sink operator does with finished embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SinkMode {
    /// Count embeddings per worker and merge the counters.
    #[default]
    Count,
    /// Buffer realigned embeddings per worker and merge the buffers.
    Emit,
}

/// Runtime configuration. `workers` must be at least 1.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub workers: usize,
    pub sink: SinkMode,
    /// Track queued-task counts to report the global peak.
    pub instrument_memory: bool,
    /// Seed every initial scan slice into worker 0's queue instead of
    /// distributing one per worker. Exists to exercise work stealing under
    /// a deliberately skewed start.
    pub skew_initial_to_first_worker: bool,
    /// Wall-clock budget; on expiry workers stop and the report is marked
    /// timed out.
    pub timeout: Option<Duration>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            workers: 1,
            sink: SinkMode::Count,
            instrument_memory: false,
            skew_initial_to_first_worker: false,
            timeout: None,
        }
    }
}

impl EngineConfig {
    pub fn with_workers(workers: usize) -> Self {
        EngineConfig {
            workers,
            ..Default::default()
        }
    }
}

/// Per-worker execution counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorkerReport {
    pub tasks_executed: u64,
    pub expand_tasks: u64,
    pub sink_tasks: u64,
    pub successful_steals: u64,
    pub busy: Duration,
    pub peak_deque_len: usize,
}

/// Outcome of one parallel execution.
#[derive(Debug, Clone, Default)]
pub struct ExecutionReport {
    pub embeddings: u64,
    pub elapsed: Duration,
    pub workers: Vec<WorkerReport>,
    /// Peak number of tasks resident in all queues at once; `None` when
    /// memory instrumentation is off.
    pub peak_live_tasks: Option<usize>,
    /// Candidate/filtered diagnostics, summed across workers.
    pub candidates: u64,
    pub filtered: u64,
    pub expansions: u64,
    pub timed_out: bool,
    /// Realigned embeddings in worker-merge order under `SinkMode::Emit`.
    pub emitted: Option<Vec<Vec<EdgeId>>>,
}

enum Task {
    /// Half-open slice of the first-edge partition table.
    Scan { lo: usize, hi: usize },
    /// Expand `embedding` by matching step `embedding.len()`.
    Expand { embedding: PartialEmbedding },
    /// Deliver a full-length embedding.
    Sink { embedding: PartialEmbedding },
}

/// A finely-locked deque. The owner pushes and pops at the head; thieves
/// take the ceiling half from the tail. Critical sections are a few pointer
/// moves, so an owner is never held up longer than one constant-time steal.
struct Deque {
    inner: Mutex<DequeState>,
}

struct DequeState {
    tasks: VecDeque<Task>,
    peak_len: usize,
}

impl Deque {
    fn new() -> Self {
        Deque {
            inner: Mutex::new(DequeState {
                tasks: VecDeque::new(),
                peak_len: 0,
            }),
        }
    }

    fn push_head(&self, t: Task) {
        let mut s = self.inner.lock().unwrap();
        s.tasks.push_front(t);
        s.peak_len = s.peak_len.max(s.tasks.len());
    }

    fn pop_head(&self) -> Option<Task> {
        self.inner.lock().unwrap().tasks.pop_front()
    }

    /// Installs a stolen batch, preserving its relative order (the batch's
    /// first element becomes the new head). Only called on the thief's own
    /// empty deque.
    fn install(&self, batch: Vec<Task>) {
        let mut s = self.inner.lock().unwrap();
        for t in batch.into_iter().rev() {
            s.tasks.push_front(t);
        }
        s.peak_len = s.peak_len.max(s.tasks.len());
    }

    /// Removes the ceiling half of the tasks from the tail: the oldest
    /// `ceil(n/2)` of them, ordered newest-first. Empty when the victim is
    /// empty.
    fn steal_half(&self) -> Vec<Task> {
        let mut s = self.inner.lock().unwrap();
        let n = s.tasks.len();
        if n == 0 {
            return Vec::new();
        }
        let keep = n / 2; // take n - n/2 = ceil(n/2)
        s.tasks.split_off(keep).into()
    }

    fn is_empty(&self) -> bool {
        self.inner.lock().unwrap().tasks.is_empty()
    }

    fn peak_len(&self) -> usize {
        self.inner.lock().unwrap().peak_len
    }
}

struct Pool<'a> {
    plan: &'a QueryPlan,
    idx: &'a IndexedHypergraph,
    deques: Vec<Deque>,
    /// Tasks spawned but not yet completed; zero means quiescent.
    pending: AtomicUsize,
    /// Tasks currently resident in queues (instrumentation only).
    live: AtomicUsize,
    peak_live: AtomicUsize,
    cancelled: AtomicBool,
    instrument: bool,
    sink: SinkMode,
    deadline: Option<Instant>,
}

impl Pool<'_> {
    fn spawn(&self, worker: usize, task: Task) {
        self.pending.fetch_add(1, Ordering::AcqRel);
        if self.instrument {
            let live = self.live.fetch_add(1, Ordering::AcqRel) + 1;
            self.peak_live.fetch_max(live, Ordering::AcqRel);
        }
        self.deques[worker].push_head(task);
    }

    fn note_pop(&self, n: usize) {
        if self.instrument && n > 0 {
            self.live.fetch_sub(n, Ordering::AcqRel);
        }
    }
}

struct WorkerState {
    id: usize,
    report: WorkerReport,
    embeddings: u64,
    candidates: u64,
    filtered: u64,
    emitted: Vec<Vec<EdgeId>>,
    aligned: Vec<EdgeId>,
    rng: u64,
}

impl WorkerState {
    /// xorshift64*; only steers victim selection, nothing result-bearing.
    fn next_random(&mut self) -> u64 {
        let mut x = self.rng;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.rng = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }
}

/// Executes a compiled plan over `config.workers` workers. The embedding
/// count (and the embedding set under `SinkMode::Emit`) is identical to
/// [`crate::enumerate_sequential`] for every worker count.
pub fn execute_parallel(
    plan: &QueryPlan,
    idx: &IndexedHypergraph,
    config: &EngineConfig,
) -> ExecutionReport {
    assert!(config.workers >= 1, "worker pool needs at least one worker");
    let started = Instant::now();
    let p = config.workers;
    let pool = Pool {
        plan,
        idx,
        deques: (0..p).map(|_| Deque::new()).collect(),
        pending: AtomicUsize::new(0),
        live: AtomicUsize::new(0),
        peak_live: AtomicUsize::new(0),
        cancelled: AtomicBool::new(false),
        instrument: config.instrument_memory,
        sink: config.sink,
        deadline: config.timeout.map(|t| started + t),
    };

    // One near-equal contiguous scan slice per worker. Under the skewed
    // test distribution all slices start on worker 0 and stealing has to
    // spread them.
    let table_len = idx
        .partition(&plan.step(0).signature)
        .map_or(0, |part| part.edges().len());
    let base = table_len / p;
    let extra = table_len % p;
    let mut lo = 0;
    for w in 0..p {
        let len = base + usize::from(w < extra);
        if len > 0 {
            let target = if config.skew_initial_to_first_worker { 0 } else { w };
            pool.spawn(target, Task::Scan { lo, hi: lo + len });
            lo += len;
        }
    }

    let mut states: Vec<WorkerState> = Vec::with_capacity(p);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(p);
        for id in 0..p {
            let pool = &pool;
            handles.push(scope.spawn(move || worker_loop(pool, id)));
        }
        for h in handles {
            states.push(h.join().expect("worker panicked"));
        }
    });
    states.sort_by_key(|s| s.id);

    let mut report = ExecutionReport {
        elapsed: started.elapsed(),
        timed_out: pool.cancelled.load(Ordering::Acquire),
        peak_live_tasks: config
            .instrument_memory
            .then(|| pool.peak_live.load(Ordering::Acquire)),
        emitted: matches!(config.sink, SinkMode::Emit).then(Vec::new),
        ..Default::default()
    };
    for s in states {
        report.embeddings += s.embeddings;
        report.candidates += s.candidates;
        report.filtered += s.filtered;
        report.expansions += s.report.expand_tasks;
        if let Some(out) = report.emitted.as_mut() {
            out.extend(s.emitted);
        }
        report.workers.push(s.report);
    }
    report
}

fn worker_loop(pool: &Pool<'_>, id: usize) -> WorkerState {
    let mut state = WorkerState {
        id,
        report: WorkerReport::default(),
        embeddings: 0,
        candidates: 0,
        filtered: 0,
        emitted: Vec::new(),
        aligned: Vec::new(),
        rng: 0x9E3779B97F4A7C15u64.wrapping_mul(id as u64 + 1) | 1,
    };
    let mut idle_rounds = 0u32;
    loop {
        if pool.cancelled.load(Ordering::Acquire) {
            break;
        }
        if let Some(deadline) = pool.deadline {
            if Instant::now() >= deadline {
                pool.cancelled.store(true, Ordering::Release);
                break;
            }
        }
        if let Some(task) = pool.deques[id].pop_head() {
            pool.note_pop(1);
            let begun = Instant::now();
            execute(pool, id, task, &mut state);
            state.report.busy += begun.elapsed();
            state.report.tasks_executed += 1;
            pool.pending.fetch_sub(1, Ordering::AcqRel);
            idle_rounds = 0;
            continue;
        }
        if pool.pending.load(Ordering::Acquire) == 0 {
            break;
        }
        // Own deque empty but work is in flight: steal the older half from
        // a random non-empty victim.
        let victims: Vec<usize> = (0..pool.deques.len())
            .filter(|&w| w != id && !pool.deques[w].is_empty())
            .collect();
        if victims.is_empty() {
            idle_rounds += 1;
            if idle_rounds > 64 {
                std::thread::sleep(Duration::from_micros(50));
            } else {
                std::thread::yield_now();
            }
            continue;
        }
        let victim = victims[(state.next_random() % victims.len() as u64) as usize];
        let batch = pool.deques[victim].steal_half();
        if !batch.is_empty() {
            state.report.successful_steals += 1;
            pool.deques[id].install(batch);
        }
        idle_rounds = 0;
    }
    state.report.peak_deque_len = pool.deques[id].peak_len();
    state
}

fn execute(pool: &Pool<'_>, worker: usize, task: Task, state: &mut WorkerState) {
    match task {
        Task::Scan { lo, hi } => {
            let part = pool
                .idx
                .partition(&pool.plan.step(0).signature)
                .expect("scan tasks exist only for present partitions");
            let single = pool.plan.num_steps() == 1;
            state.candidates += (hi - lo) as u64;
            state.filtered += (hi - lo) as u64;
            // Reverse spawn order so the head pops slice edges ascending,
            // matching the sequential depth-first visit order.
            for &edge in part.edges()[lo..hi].iter().rev() {
                let embedding = PartialEmbedding::seed(edge, pool.idx);
                let child = if single {
                    Task::Sink { embedding }
                } else {
                    Task::Expand { embedding }
                };
                pool.spawn(worker, child);
            }
        }
        Task::Expand { embedding } => {
            state.report.expand_tasks += 1;
            let step = embedding.len();
            let cs = generate_candidates(pool.plan, step, &embedding, pool.idx);
            state.candidates += cs.candidates.len() as u64;
            let last = step + 1 == pool.plan.num_steps();
            for &c in cs.candidates.iter().rev() {
                let next = embedding
                    .extended(c, pool.idx)
                    .expect("candidates never repeat a matched edge");
                match validate(pool.plan, step, &next, pool.idx) {
                    Validation::WrongVertexCount => {}
                    Validation::WrongProfiles => state.filtered += 1,
                    Validation::Valid => {
                        state.filtered += 1;
                        let child = if last {
                            Task::Sink { embedding: next }
                        } else {
                            Task::Expand { embedding: next }
                        };
                        pool.spawn(worker, child);
                    }
                }
            }
        }
        Task::Sink { embedding } => {
            state.report.sink_tasks += 1;
            state.embeddings += 1;
            if matches!(pool.sink, SinkMode::Emit) {
                let mut aligned = std::mem::take(&mut state.aligned);
                pool.plan.realign(embedding.matched(), &mut aligned);
                state.emitted.push(aligned.clone());
                state.aligned = aligned;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_sequential;
    use crate::plan::{compile_plan, compute_matching_order};
    use hypermatch_core::Hypergraph;

    fn example_pair() -> (Hypergraph, Hypergraph) {
        let (a, b, c) = (0, 1, 2);
        let h = Hypergraph::new(
            vec![a, c, a, c, b, a, a],
            vec![
                vec![2, 4],
                vec![4, 6],
                vec![0, 1, 2],
                vec![3, 5, 6],
                vec![0, 1, 4, 6],
                vec![2, 3, 4, 5],
            ],
        )
        .unwrap();
        let q = Hypergraph::new(
            vec![a, c, a, a, b],
            vec![vec![2, 4], vec![0, 1, 2], vec![0, 1, 3, 4]],
        )
        .unwrap();
        (q, h)
    }

    fn plan_for(q: &Hypergraph, idx: &IndexedHypergraph) -> QueryPlan {
        compile_plan(q, compute_matching_order(q, idx).unwrap()).unwrap()
    }

    #[test]
    fn counts_are_worker_invariant_on_the_example() {
        let (q, h) = example_pair();
        let idx = IndexedHypergraph::build(h);
        let plan = plan_for(&q, &idx);
        for p in [1, 2, 4, 8] {
            let report = execute_parallel(&plan, &idx, &EngineConfig::with_workers(p));
            assert_eq!(report.embeddings, 2, "p={p}");
            assert!(!report.timed_out);
        }
    }

    #[test]
    fn single_worker_execution_mirrors_sequential_order() {
        let (q, h) = example_pair();
        let idx = IndexedHypergraph::build(h);
        let plan = plan_for(&q, &idx);

        let mut sequential = Vec::new();
        let stats = enumerate_sequential(&plan, &idx, |m| sequential.push(m.to_vec()));

        let config = EngineConfig {
            workers: 1,
            sink: SinkMode::Emit,
            ..Default::default()
        };
        let report = execute_parallel(&plan, &idx, &config);
        assert_eq!(report.emitted.as_deref(), Some(&sequential[..]));
        assert_eq!(report.expansions, stats.expansions);
        assert_eq!(report.candidates, stats.candidates);
        assert_eq!(report.filtered, stats.filtered);
    }

    #[test]
    fn empty_first_partition_completes_immediately() {
        let (_, h) = example_pair();
        let idx = IndexedHypergraph::build(h);
        let q = Hypergraph::new(vec![1, 1], vec![vec![0, 1]]).unwrap();
        let plan = plan_for(&q, &idx);
        let report = execute_parallel(&plan, &idx, &EngineConfig::with_workers(4));
        assert_eq!(report.embeddings, 0);
        assert!(report.workers.iter().all(|w| w.tasks_executed == 0));
    }

    #[test]
    fn memory_instrumentation_respects_the_task_bound() {
        let (q, h) = example_pair();
        let idx = IndexedHypergraph::build(h);
        let plan = plan_for(&q, &idx);
        for p in [1, 2, 4] {
            let config = EngineConfig {
                workers: p,
                instrument_memory: true,
                ..Default::default()
            };
            let report = execute_parallel(&plan, &idx, &config);
            let bound = p * plan.num_steps() * idx.max_partition_size();
            let peak = report.peak_live_tasks.unwrap();
            assert!(peak <= bound, "peak {peak} exceeds bound {bound} at p={p}");
        }
    }

    #[test]
    fn zero_timeout_reports_timed_out() {
        let (q, h) = example_pair();
        let idx = IndexedHypergraph::build(h);
        let plan = plan_for(&q, &idx);
        let config = EngineConfig {
            workers: 2,
            timeout: Some(Duration::ZERO),
            ..Default::default()
        };
        let report = execute_parallel(&plan, &idx, &config);
        assert!(report.timed_out);
    }

    #[test]
    fn steal_takes_the_ceiling_half_from_the_tail() {
        let deque = Deque::new();
        for i in 0..7 {
            deque.push_head(Task::Scan { lo: i, hi: i + 1 });
        }
        // Head..tail is now 6,5,4,3,2,1,0; the thief gets the oldest four.
        let batch = deque.steal_half();
        assert_eq!(batch.len(), 4);
        let slots: Vec<usize> = batch
            .iter()
            .map(|t| match t {
                Task::Scan { lo, .. } => *lo,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(slots, vec![3, 2, 1, 0]);
        // Victim keeps the newest three.
        assert_eq!(deque.inner.lock().unwrap().tasks.len(), 3);
    }

    #[test]
    fn steal_from_singleton_and_empty_deques() {
        let deque = Deque::new();
        assert!(deque.steal_half().is_empty());
        deque.push_head(Task::Scan { lo: 0, hi: 1 });
        assert_eq!(deque.steal_half().len(), 1);
        assert!(deque.is_empty());
    }
}
