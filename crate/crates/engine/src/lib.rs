//! Match-by-hyperedge subhypergraph enumeration.
//!
//! The engine matches a query hyperedge per step instead of a vertex per
//! step. A compiled [`QueryPlan`] fixes a connected matching order over the
//! query hyperedges and precomputes, for every step, the adjacency structure
//! and profile templates the expansion operators need. Enumeration then
//! alternates candidate generation (posting-list set algebra inside one
//! signature partition) with embedding validation (vertex-profile multiset
//! comparison), either depth-first on one thread or as a task dataflow over
//! a work-stealing pool.

pub mod embedding;
pub mod matching;
pub mod plan;
pub mod runtime;
mod setops;

pub use embedding::{ExtendError, PartialEmbedding};
pub use matching::{
    enumerate_sequential, generate_candidates, is_valid_embedding, scan_first, CandidateSet,
    EnumerationStats,
};
pub use plan::{compile_plan, compute_matching_order, MatchingOrder, PlanError, QueryPlan};
pub use runtime::{execute_parallel, EngineConfig, ExecutionReport, SinkMode, WorkerReport};

/// Set of matching-order step indices, as a bitmask. Bounds query size to 64
/// hyperedges, far beyond practical query shapes.
pub type StepSet = u64;
