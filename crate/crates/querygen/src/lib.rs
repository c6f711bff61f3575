//! Random-walk sampling of connected query subhypergraphs.
//!
//! Queries are drawn as subhypergraphs of the data hypergraph, so every
//! generated query has at least one embedding (itself) by construction.
//!
//! Randomness is consumed in a fixed, documented order from a single seeded
//! ChaCha8 stream so that identical `(graph, settings)` inputs always yield
//! identical query lists: per walk attempt, one uniform draw for the start
//! hyperedge, then one uniform draw per added hyperedge (over the
//! ascending-id list of edges adjacent to the collected set). Rejected
//! attempts consume their draws.

use std::collections::BTreeSet;

use hypermatch_core::{EdgeId, Hypergraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Walk attempts per requested query before giving up.
pub const ATTEMPT_BUDGET: usize = 1000;

/// Parameters of one query-sampling batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySettings {
    /// Hyperedges per query.
    pub num_edges: usize,
    /// Inclusive lower bound on distinct vertices per query.
    pub min_vertices: usize,
    /// Inclusive upper bound on distinct vertices per query.
    pub max_vertices: usize,
    pub seed: u64,
    pub num_queries: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryGenError {
    #[error("settings require at least one hyperedge per query")]
    ZeroEdges,
    #[error("settings have min_vertices {min} > max_vertices {max}")]
    EmptyVertexRange { min: usize, max: usize },
    #[error("data hypergraph has {available} hyperedges, fewer than the {requested} per query")]
    NotEnoughEdges { available: usize, requested: usize },
    #[error(
        "exhausted {budget} walk attempts for query {query_index} \
         (num_edges={num_edges}, min_vertices={min_vertices}, max_vertices={max_vertices}, seed={seed})"
    )]
    BudgetExhausted {
        budget: usize,
        query_index: usize,
        num_edges: usize,
        min_vertices: usize,
        max_vertices: usize,
        seed: u64,
    },
}

/// Samples `settings.num_queries` connected queries from `h`.
///
/// Each walk starts at a uniform random hyperedge and repeatedly adds a
/// uniform random hyperedge adjacent to the collected set until `num_edges`
/// distinct edges are gathered; the walk is accepted iff its distinct vertex
/// count lies in `[min_vertices, max_vertices]`. Accepted walks are
/// relabelled to dense vertex ids (ascending data-id order) with labels
/// preserved and edges in collection order.
pub fn generate_queries(
    h: &Hypergraph,
    settings: &QuerySettings,
) -> Result<Vec<Hypergraph>, QueryGenError> {
    if settings.num_edges == 0 {
        return Err(QueryGenError::ZeroEdges);
    }
    if settings.min_vertices > settings.max_vertices {
        return Err(QueryGenError::EmptyVertexRange {
            min: settings.min_vertices,
            max: settings.max_vertices,
        });
    }
    if h.edge_count() < settings.num_edges {
        return Err(QueryGenError::NotEnoughEdges {
            available: h.edge_count(),
            requested: settings.num_edges,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut queries = Vec::with_capacity(settings.num_queries);
    for query_index in 0..settings.num_queries {
        let mut accepted = None;
        for _ in 0..ATTEMPT_BUDGET {
            if let Some(edges) = walk(h, settings, &mut rng) {
                accepted = Some(edges);
                break;
            }
        }
        match accepted {
            Some(edges) => queries.push(extract(h, &edges)),
            None => {
                return Err(QueryGenError::BudgetExhausted {
                    budget: ATTEMPT_BUDGET,
                    query_index,
                    num_edges: settings.num_edges,
                    min_vertices: settings.min_vertices,
                    max_vertices: settings.max_vertices,
                    seed: settings.seed,
                })
            }
        }
    }
    Ok(queries)
}

/// One walk attempt; `None` when the walk gets stuck or the vertex count
/// falls outside the accepted range.
fn walk(h: &Hypergraph, settings: &QuerySettings, rng: &mut ChaCha8Rng) -> Option<Vec<EdgeId>> {
    let start = rng.gen_range(0..h.edge_count()) as EdgeId;
    let mut collected = vec![start];
    let mut collected_set: BTreeSet<EdgeId> = collected.iter().copied().collect();
    let mut vertices: BTreeSet<VertexId> = h.edge(start).vertices().iter().copied().collect();

    while collected.len() < settings.num_edges {
        let frontier: Vec<EdgeId> = {
            let mut f: BTreeSet<EdgeId> = BTreeSet::new();
            for &v in &vertices {
                for &e in h.incident_edges(v) {
                    if !collected_set.contains(&e) {
                        f.insert(e);
                    }
                }
            }
            f.into_iter().collect()
        };
        if frontier.is_empty() {
            return None;
        }
        let next = frontier[rng.gen_range(0..frontier.len())];
        collected.push(next);
        collected_set.insert(next);
        vertices.extend(h.edge(next).vertices().iter().copied());
    }

    if vertices.len() < settings.min_vertices || vertices.len() > settings.max_vertices {
        return None;
    }
    Some(collected)
}

/// Builds the query hypergraph induced by the collected edges, with dense
/// vertex ids assigned in ascending data-id order.
fn extract(h: &Hypergraph, edges: &[EdgeId]) -> Hypergraph {
    let vertex_ids: Vec<VertexId> = {
        let mut vs: BTreeSet<VertexId> = BTreeSet::new();
        for &e in edges {
            vs.extend(h.edge(e).vertices().iter().copied());
        }
        vs.into_iter().collect()
    };
    let remap = |v: VertexId| vertex_ids.binary_search(&v).unwrap() as VertexId;
    let labels = vertex_ids.iter().map(|&v| h.label(v)).collect();
    let raw = edges
        .iter()
        .map(|&e| h.edge(e).vertices().iter().map(|&v| remap(v)).collect())
        .collect();
    Hypergraph::new(labels, raw).expect("subhypergraph of a canonical graph is valid")
}
