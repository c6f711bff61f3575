//! Partial embeddings: the matched data hyperedges of an order prefix plus
//! the incidence map of the induced data subhypergraph.

use hypermatch_core::{EdgeId, IndexedHypergraph, VertexId};
use thiserror::Error;

use crate::StepSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error("data hyperedge {edge} is already matched at step {step}")]
    DuplicateEdge { edge: EdgeId, step: usize },
}

/// Incidence of the matched data subhypergraph: per data vertex, the set of
/// matching-order steps whose matched hyperedge contains it. Kept as a small
/// sorted vector so cloning a task payload is one allocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncidenceMap {
    entries: Vec<(VertexId, StepSet)>,
}

impl IncidenceMap {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Steps of `v`; 0 when `v` is not part of the matched subhypergraph.
    pub fn steps(&self, v: VertexId) -> StepSet {
        match self.entries.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, StepSet)> + '_ {
        self.entries.iter().copied()
    }

    fn add_step(&mut self, v: VertexId, step: usize) {
        match self.entries.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.entries[i].1 |= 1 << step,
            Err(i) => self.entries.insert(i, (v, 1 << step)),
        }
    }
}

/// An aligned tuple of matched data hyperedges for a matching-order prefix.
/// Self-contained (no references into shared search state), so it can be
/// carried by tasks and moved between workers freely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEmbedding {
    matched: Vec<EdgeId>,
    incidence: IncidenceMap,
}

impl PartialEmbedding {
    /// Single-step embedding for a first-edge match.
    pub fn seed(edge: EdgeId, idx: &IndexedHypergraph) -> Self {
        let mut incidence = IncidenceMap::default();
        for &v in idx.graph().edge(edge).vertices() {
            incidence.add_step(v, 0);
        }
        PartialEmbedding {
            matched: vec![edge],
            incidence,
        }
    }

    /// Matched data hyperedge ids, aligned with the matching order.
    pub fn matched(&self) -> &[EdgeId] {
        &self.matched
    }

    /// Number of matched steps.
    pub fn len(&self) -> usize {
        self.matched.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matched.is_empty()
    }

    /// `|V(H_m)|`: distinct data vertices covered by the matched edges.
    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    /// Degree of data vertex `v` within the matched subhypergraph.
    pub fn degree(&self, v: VertexId) -> u32 {
        self.incidence.steps(v).count_ones()
    }

    pub fn incidence(&self) -> &IncidenceMap {
        &self.incidence
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.matched.contains(&e)
    }

    /// Returns a copy extended by `c` at the next step; the original is
    /// unchanged. Rejects a data hyperedge that is already matched.
    pub fn extended(
        &self,
        c: EdgeId,
        idx: &IndexedHypergraph,
    ) -> Result<PartialEmbedding, ExtendError> {
        if let Some(step) = self.matched.iter().position(|&e| e == c) {
            return Err(ExtendError::DuplicateEdge { edge: c, step });
        }
        let mut next = self.clone();
        let step = next.matched.len();
        next.matched.push(c);
        for &v in idx.graph().edge(c).vertices() {
            next.incidence.add_step(v, step);
        }
        Ok(next)
    }
}
