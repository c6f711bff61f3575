//! Vertex-labelled hypergraphs: construction, incidence queries, and summary
//! statistics.

use std::collections::HashSet;

use thiserror::Error;

use crate::{EdgeId, LabelId, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("hyperedge {index} is empty")]
    EmptyHyperedge { index: usize },
    #[error("hyperedge {edge_index} references vertex {vertex} which has no label")]
    UnknownVertex { edge_index: usize, vertex: VertexId },
    #[error("hypergraph has no hyperedges")]
    NoHyperedges,
}

/// A hyperedge: a non-empty, duplicate-free set of vertices, stored sorted
/// ascending so that set operations are linear merges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    id: EdgeId,
    vertices: Vec<VertexId>,
}

impl Hyperedge {
    pub fn id(&self) -> EdgeId {
        self.id
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of vertices in the hyperedge.
    pub fn arity(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Summary statistics of a hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergraphStats {
    pub num_vertices: usize,
    pub num_hyperedges: usize,
    pub num_labels: usize,
    pub max_arity: usize,
    pub mean_arity: f64,
}

/// An immutable vertex-labelled hypergraph.
///
/// Construction canonicalizes the input: vertex lists are deduplicated and
/// sorted, duplicate hyperedges (equal as vertex sets) are collapsed keeping
/// the first occurrence, and surviving hyperedges get dense ids in input
/// order. After construction the graph is immutable and safe for
/// unsynchronized concurrent reads.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    labels: Vec<LabelId>,
    edges: Vec<Hyperedge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Hypergraph {
    /// Builds a canonical hypergraph from a label map (`labels[v]` is the
    /// label of vertex `v`) and raw hyperedge vertex lists.
    ///
    /// Rejects empty edges, vertex ids without labels, and an empty edge set.
    pub fn new(labels: Vec<LabelId>, raw_edges: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        if raw_edges.is_empty() {
            return Err(GraphError::NoHyperedges);
        }
        let n = labels.len();
        let mut edges: Vec<Hyperedge> = Vec::with_capacity(raw_edges.len());
        let mut seen: HashSet<Vec<VertexId>> = HashSet::with_capacity(raw_edges.len());
        for (i, mut vs) in raw_edges.into_iter().enumerate() {
            if vs.is_empty() {
                return Err(GraphError::EmptyHyperedge { index: i });
            }
            if let Some(&v) = vs.iter().find(|&&v| v as usize >= n) {
                return Err(GraphError::UnknownVertex {
                    edge_index: i,
                    vertex: v,
                });
            }
            vs.sort_unstable();
            vs.dedup();
            if seen.insert(vs.clone()) {
                let id = edges.len() as EdgeId;
                edges.push(Hyperedge { id, vertices: vs });
            }
        }
        let mut incidence = vec![Vec::new(); n];
        for e in &edges {
            for &v in &e.vertices {
                incidence[v as usize].push(e.id);
            }
        }
        Ok(Self {
            labels,
            edges,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: VertexId) -> LabelId {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[LabelId] {
        &self.labels
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Hyperedge {
        &self.edges[id as usize]
    }

    /// Hyperedges incident to `v`, ascending by edge id.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v as usize]
    }

    /// Degree of `v`: the number of incident hyperedges.
    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v as usize].len()
    }

    /// Incident hyperedges of `v` with the given arity.
    pub fn incident_edges_with_arity(&self, v: VertexId, arity: usize) -> Vec<EdgeId> {
        self.incidence[v as usize]
            .iter()
            .copied()
            .filter(|&e| self.edge(e).arity() == arity)
            .collect()
    }

    /// Vertices sharing at least one hyperedge with `u`, excluding `u`,
    /// sorted ascending.
    pub fn adjacent_vertices(&self, u: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.incidence[u as usize]
            .iter()
            .flat_map(|&e| self.edge(e).vertices().iter().copied())
            .filter(|&v| v != u)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Hyperedges intersecting `e`, excluding `e` itself, sorted ascending.
    pub fn adjacent_edges(&self, e: EdgeId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .edge(e)
            .vertices()
            .iter()
            .flat_map(|&v| self.incidence[v as usize].iter().copied())
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True iff the hyperedge-adjacency graph is connected and every vertex
    /// is covered by some hyperedge.
    pub fn is_connected(&self) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        let mut edge_seen = vec![false; self.edges.len()];
        let mut vertex_seen = vec![false; self.labels.len()];
        let mut stack = vec![0 as EdgeId];
        edge_seen[0] = true;
        while let Some(e) = stack.pop() {
            for &v in self.edge(e).vertices() {
                if !vertex_seen[v as usize] {
                    vertex_seen[v as usize] = true;
                    for &f in self.incident_edges(v) {
                        if !edge_seen[f as usize] {
                            edge_seen[f as usize] = true;
                            stack.push(f);
                        }
                    }
                }
            }
        }
        edge_seen.iter().all(|&s| s) && vertex_seen.iter().all(|&s| s)
    }

    pub fn stats(&self) -> HypergraphStats {
        let mut labels: Vec<LabelId> = self.labels.clone();
        labels.sort_unstable();
        labels.dedup();
        let total_arity: usize = self.edges.iter().map(|e| e.arity()).sum();
        HypergraphStats {
            num_vertices: self.labels.len(),
            num_hyperedges: self.edges.len(),
            num_labels: labels.len(),
            max_arity: self.edges.iter().map(|e| e.arity()).max().unwrap_or(0),
            mean_arity: total_arity as f64 / self.edges.len() as f64,
        }
    }
}
