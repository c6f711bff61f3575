//! Exhaustive tiny-instance oracle: enumerate every injective
//! label-preserving vertex map and keep those whose edge images all exist.

use std::collections::{BTreeSet, HashMap};

use hypermatch_core::{EdgeId, Hypergraph, VertexId};
use thiserror::Error;

use crate::AlignedEmbedding;

/// Hard cap on query vertices; beyond this the factorial search space is
/// unreasonable and the oracle refuses instead of hanging.
pub const BRUTE_FORCE_VERTEX_LIMIT: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("instance too large for brute force: query has {vertices} vertices (limit {limit})")]
pub struct BruteForceRefusal {
    pub vertices: usize,
    pub limit: usize,
}

/// Enumerates all embeddings of `q` in `h` by exhausting injective
/// label-preserving vertex maps in query-vertex input order, with no
/// ordering heuristics and no pruning beyond the map definition itself.
/// Each full map is checked directly against the embedding definition and
/// recorded as an aligned hyperedge tuple.
pub fn brute_force_tiny(
    q: &Hypergraph,
    h: &Hypergraph,
) -> Result<BTreeSet<AlignedEmbedding>, BruteForceRefusal> {
    if q.vertex_count() > BRUTE_FORCE_VERTEX_LIMIT {
        return Err(BruteForceRefusal {
            vertices: q.vertex_count(),
            limit: BRUTE_FORCE_VERTEX_LIMIT,
        });
    }
    let edge_lookup: HashMap<&[VertexId], EdgeId> = h
        .edges()
        .iter()
        .map(|e| (e.vertices(), e.id()))
        .collect();
    let mut results = BTreeSet::new();
    let mut mapping = vec![0 as VertexId; q.vertex_count()];
    let mut used = vec![false; h.vertex_count()];
    assign(
        q,
        h,
        &edge_lookup,
        &mut mapping,
        &mut used,
        0,
        &mut results,
    );
    Ok(results)
}

fn assign(
    q: &Hypergraph,
    h: &Hypergraph,
    edge_lookup: &HashMap<&[VertexId], EdgeId>,
    mapping: &mut Vec<VertexId>,
    used: &mut Vec<bool>,
    u: usize,
    results: &mut BTreeSet<AlignedEmbedding>,
) {
    if u == q.vertex_count() {
        if let Some(tuple) = check(q, mapping, edge_lookup) {
            results.insert(tuple);
        }
        return;
    }
    for v in 0..h.vertex_count() as VertexId {
        if used[v as usize] || h.label(v) != q.label(u as VertexId) {
            continue;
        }
        mapping[u] = v;
        used[v as usize] = true;
        assign(q, h, edge_lookup, mapping, used, u + 1, results);
        used[v as usize] = false;
    }
}

/// Checks the embedding definition for a full map: every query hyperedge's
/// vertex image must exist as a data hyperedge. Returns the aligned tuple.
fn check(
    q: &Hypergraph,
    mapping: &[VertexId],
    edge_lookup: &HashMap<&[VertexId], EdgeId>,
) -> Option<AlignedEmbedding> {
    let mut tuple = Vec::with_capacity(q.edge_count());
    for e in q.edges() {
        let mut image: Vec<VertexId> = e
            .vertices()
            .iter()
            .map(|&w| mapping[w as usize])
            .collect();
        image.sort_unstable();
        tuple.push(*edge_lookup.get(image.as_slice())?);
    }
    Some(tuple)
}
