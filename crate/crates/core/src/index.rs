//! Signature-partitioned hyperedge tables with per-partition inverted
//! hyperedge indexes.
//!
//! Every hyperedge lands in exactly one partition, keyed by its signature.
//! Within a partition, the inverted index maps each incident vertex to the
//! ascending posting list of table edges containing it, so that `he(v, s)`
//! retrieval is a hash lookup followed by a slice borrow.

use std::collections::HashMap;

use crate::{EdgeId, Hypergraph, Signature, VertexId};

/// Sorted, duplicate-free list of hyperedge ids.
pub type PostingList = Vec<EdgeId>;

const EMPTY: &[EdgeId] = &[];

/// One hyperedge table: all edges sharing a signature, plus the inverted
/// index over their vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    signature: Signature,
    edges: Vec<EdgeId>,
    inverted: HashMap<VertexId, PostingList>,
}

impl Partition {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Table edges, ascending by id.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Posting list of `v` inside this partition; empty if `v` is not
    /// incident to any table edge.
    pub fn posting(&self, v: VertexId) -> &[EdgeId] {
        self.inverted.get(&v).map_or(EMPTY, |p| p.as_slice())
    }

    /// Vertices present in the inverted index, in no particular order.
    pub fn indexed_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.inverted.keys().copied()
    }
}

/// Index accounting, matching the storage size analysis: the posting entries
/// total equals the sum of all hyperedge arities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexSizeStats {
    pub num_partitions: usize,
    pub total_table_entries: usize,
    pub total_posting_entries: usize,
}

/// A hypergraph together with its signature partitions and inverted indexes.
///
/// Built single-threaded in one grouping pass plus a per-partition incidence
/// scatter; immutable afterwards and safe for concurrent reads.
#[derive(Debug, Clone)]
pub struct IndexedHypergraph {
    graph: Hypergraph,
    partitions: Vec<Partition>,
    by_signature: HashMap<Signature, usize>,
}

impl IndexedHypergraph {
    pub fn build(graph: Hypergraph) -> Self {
        let mut by_signature: HashMap<Signature, usize> = HashMap::new();
        let mut partitions: Vec<Partition> = Vec::new();
        for e in graph.edges() {
            let sig = Signature::of(e, &graph);
            let slot = *by_signature.entry(sig.clone()).or_insert_with(|| {
                partitions.push(Partition {
                    signature: sig,
                    edges: Vec::new(),
                    inverted: HashMap::new(),
                });
                partitions.len() - 1
            });
            partitions[slot].edges.push(e.id());
        }
        for p in &mut partitions {
            for &id in &p.edges {
                for &v in graph.edge(id).vertices() {
                    p.inverted.entry(v).or_default().push(id);
                }
            }
        }
        Self {
            graph,
            partitions,
            by_signature,
        }
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    /// Partitions in order of first appearance of their signature.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Looks a partition up by signature; `None` when the signature is
    /// absent from the data graph.
    pub fn partition(&self, s: &Signature) -> Option<&Partition> {
        self.by_signature.get(s).map(|&i| &self.partitions[i])
    }

    /// Number of data hyperedges with signature `s`; 0 for absent signatures.
    pub fn cardinality(&self, s: &Signature) -> usize {
        self.partition(s).map_or(0, |p| p.edges.len())
    }

    /// `he(v, s)`: incident hyperedges of `v` with signature `s`, ascending.
    pub fn incident_in_partition(&self, v: VertexId, s: &Signature) -> &[EdgeId] {
        self.partition(s).map_or(EMPTY, |p| p.posting(v))
    }

    pub fn size_stats(&self) -> IndexSizeStats {
        IndexSizeStats {
            num_partitions: self.partitions.len(),
            total_table_entries: self.partitions.iter().map(|p| p.edges.len()).sum(),
            total_posting_entries: self
                .partitions
                .iter()
                .map(|p| p.inverted.values().map(|l| l.len()).sum::<usize>())
                .sum(),
        }
    }

    /// Largest partition table size; 0 is impossible since graphs are
    /// non-empty.
    pub fn max_partition_size(&self) -> usize {
        self.partitions.iter().map(|p| p.edges.len()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_index() -> IndexedHypergraph {
        let (a, b, c) = (0, 1, 2);
        let g = Hypergraph::new(
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
        IndexedHypergraph::build(g)
    }

    #[test]
    fn partitions_group_by_signature() {
        let idx = example_index();
        assert_eq!(idx.partitions().len(), 3);
        let sigs: Vec<_> = idx.partitions().iter().map(|p| p.signature().pairs()).collect();
        assert_eq!(
            sigs,
            vec![
                &[(0, 1), (1, 1)][..],          // {A,B}
                &[(0, 2), (2, 1)][..],          // {A,A,C}
                &[(0, 2), (1, 1), (2, 1)][..],  // {A,A,B,C}
            ]
        );
        assert_eq!(idx.partitions()[0].edges(), &[0, 1]);
        assert_eq!(idx.partitions()[1].edges(), &[2, 3]);
        assert_eq!(idx.partitions()[2].edges(), &[4, 5]);
    }

    #[test]
    fn posting_lists_match_expected_layout() {
        let idx = example_index();
        let s3 = Signature::from_labels([0, 0, 1, 2]);
        assert_eq!(idx.incident_in_partition(4, &s3), &[4, 5]);
        assert_eq!(idx.incident_in_partition(0, &s3), &[4]);
        // v0 carries no {A,B} edge.
        let s1 = Signature::from_labels([0, 1]);
        assert_eq!(idx.incident_in_partition(0, &s1), EMPTY);
    }

    #[test]
    fn cardinality_counts_partition_tables() {
        let idx = example_index();
        assert_eq!(idx.cardinality(&Signature::from_labels([0, 1])), 2);
        assert_eq!(idx.cardinality(&Signature::from_labels([0, 0, 2])), 2);
        assert_eq!(idx.cardinality(&Signature::from_labels([1, 1])), 0);
    }

    #[test]
    fn absent_signature_is_an_empty_answer() {
        let idx = example_index();
        let absent = Signature::from_labels([1, 1]);
        assert!(idx.partition(&absent).is_none());
        assert_eq!(idx.incident_in_partition(3, &absent), EMPTY);
    }

    #[test]
    fn size_stats_account_every_arity() {
        let idx = example_index();
        let s = idx.size_stats();
        assert_eq!(s.num_partitions, 3);
        assert_eq!(s.total_table_entries, 6);
        assert_eq!(s.total_posting_entries, 18); // 2+2+3+3+4+4

        let single = IndexedHypergraph::build(Hypergraph::new(vec![0], vec![vec![0]]).unwrap());
        assert_eq!(
            single.size_stats(),
            IndexSizeStats {
                num_partitions: 1,
                total_table_entries: 1,
                total_posting_entries: 1
            }
        );
    }
}
