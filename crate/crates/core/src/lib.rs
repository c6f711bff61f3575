//! Labelled hypergraph model and the partitioned storage layout used by the
//! matching engine.
//!
//! A data hypergraph is stored as a set of *partitions*, one per hyperedge
//! signature (the multiset of vertex labels of a hyperedge). Each partition
//! holds a hyperedge table and an inverted index mapping every vertex to the
//! posting list of its incident hyperedges inside that partition. Candidate
//! retrieval during matching then reduces to posting-list set operations
//! within a single partition.

pub mod graph;
pub mod index;
pub mod signature;

pub use graph::{GraphError, Hyperedge, Hypergraph, HypergraphStats};
pub use index::{IndexSizeStats, IndexedHypergraph, Partition, PostingList};
pub use signature::Signature;

/// Dense vertex identifier, `0..vertex_count`.
pub type VertexId = u32;
/// Dense hyperedge identifier, `0..edge_count`, assigned in canonical input order.
pub type EdgeId = u32;
/// Dense label identifier. The string dictionary lives with the I/O layer.
pub type LabelId = u32;
