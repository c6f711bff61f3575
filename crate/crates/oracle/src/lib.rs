//! Correctness oracles for subhypergraph matching.
//!
//! Two independent reference implementations, both counting embeddings at
//! the same granularity as the engine — aligned tuples of data hyperedges,
//! one per query hyperedge, deduplicated over vertex mappings:
//!
//! * [`enumerate_by_vertex`] — a classic backtracking search over query
//!   vertices, extended with a per-assignment hyperedge check and an
//!   optional incident-hyperedge-structure (IHS) candidate filter.
//! * [`brute_force_tiny`] — exhaustive enumeration of all injective
//!   label-preserving vertex maps, guarded to tiny instances.
//!
//! Neither shares any code with the engine's match-by-hyperedge path.

mod brute;
mod vertex;

pub use brute::{brute_force_tiny, BruteForceRefusal, BRUTE_FORCE_VERTEX_LIMIT};
pub use vertex::{enumerate_by_vertex, ihs_filter, ihs_filter_with, CondFourMode};

/// An embedding as the engine reports it: one data hyperedge per query
/// hyperedge, aligned with query-input edge order.
pub type AlignedEmbedding = Vec<hypermatch_core::EdgeId>;
