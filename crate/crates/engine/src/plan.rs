//! Matching-order computation and query-plan compilation.

use hypermatch_core::{EdgeId, Hypergraph, IndexedHypergraph, LabelId, Signature, VertexId};
use thiserror::Error;

use crate::StepSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanError {
    #[error("query hypergraph is not connected")]
    DisconnectedQuery,
    #[error("query has {edges} hyperedges, more than the supported 64")]
    TooManyEdges { edges: usize },
    #[error("matching order is not a permutation of the query hyperedges")]
    NotAPermutation,
    #[error("matching order prefix of length {prefix} is not connected")]
    DisconnectedPrefix { prefix: usize },
}

/// A permutation of the query hyperedges in which every prefix of length
/// >= 2 shares at least one vertex with the union of its predecessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingOrder(Vec<EdgeId>);

impl MatchingOrder {
    /// Wraps an explicit order; validated by [`compile_plan`].
    pub fn new(steps: Vec<EdgeId>) -> Self {
        MatchingOrder(steps)
    }

    pub fn steps(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A query vertex shared between the step being matched and one prior step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedVertex {
    pub vertex: VertexId,
    pub label: LabelId,
    /// Degree of the vertex within the partial query formed by the prior
    /// steps only; the step being matched is excluded.
    pub prior_degree: u32,
}

/// One prior step adjacent to the step being matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriorAdjacency {
    pub step: usize,
    pub shared: Vec<SharedVertex>,
}

/// Everything the expansion operators need at one step.
#[derive(Debug, Clone)]
pub struct PlanStep {
    pub query_edge: EdgeId,
    pub signature: Signature,
    /// Prior steps sharing at least one query vertex with this step.
    pub adjacent: Vec<PriorAdjacency>,
    /// Prior steps vertex-disjoint from this step.
    pub non_adjacent: Vec<usize>,
    /// Query-side vertex profiles for this step's hyperedge: per vertex, its
    /// label and the set of steps up to and including this one whose
    /// hyperedge contains it. Sorted for direct multiset comparison.
    pub profile_template: Vec<(LabelId, StepSet)>,
    /// Number of distinct query vertices covered by steps `0..=this`.
    pub prefix_vertex_count: usize,
}

/// A compiled execution plan: the matching order plus per-step tables.
#[derive(Debug, Clone)]
pub struct QueryPlan {
    order: MatchingOrder,
    steps: Vec<PlanStep>,
    /// For query edge `e`, the step index at which it is matched. Used to
    /// realign finished embeddings to query-input edge order.
    step_of_edge: Vec<usize>,
}

impl QueryPlan {
    pub fn order(&self) -> &MatchingOrder {
        &self.order
    }

    pub fn steps(&self) -> &[PlanStep] {
        &self.steps
    }

    pub fn step(&self, i: usize) -> &PlanStep {
        &self.steps[i]
    }

    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn step_of_edge(&self, e: EdgeId) -> usize {
        self.step_of_edge[e as usize]
    }

    /// Rewrites `matched` (aligned with the matching order) into
    /// query-input edge order.
    pub fn realign(&self, matched: &[EdgeId], out: &mut Vec<EdgeId>) {
        out.clear();
        out.extend(self.step_of_edge.iter().map(|&s| matched[s]));
    }
}

/// Computes the matching order: start from the query hyperedge with the
/// smallest cardinality in the data graph, then repeatedly append the
/// hyperedge that shares vertices with the covered set and minimizes
/// `cardinality / shared-vertex-count`. Ties break towards the smallest
/// query hyperedge id; ratio comparisons use exact cross-multiplied integer
/// arithmetic.
///
/// Zero-cardinality hyperedges are allowed (the engine then finds nothing);
/// a disconnected query is an error.
pub fn compute_matching_order(
    q: &Hypergraph,
    idx: &IndexedHypergraph,
) -> Result<MatchingOrder, PlanError> {
    if !q.is_connected() {
        return Err(PlanError::DisconnectedQuery);
    }
    let m = q.edge_count();
    let cards: Vec<usize> = q
        .edges()
        .iter()
        .map(|e| idx.cardinality(&Signature::of(e, q)))
        .collect();

    let first = (0..m).min_by_key(|&e| (cards[e], e)).expect("non-empty");
    let mut order = vec![first as EdgeId];
    let mut chosen = vec![false; m];
    chosen[first] = true;
    let mut covered = vec![false; q.vertex_count()];
    for &v in q.edge(first as EdgeId).vertices() {
        covered[v as usize] = true;
    }

    while order.len() < m {
        let mut best: Option<(usize, usize)> = None; // (edge, shared count)
        for e in 0..m {
            if chosen[e] {
                continue;
            }
            let shared = q
                .edge(e as EdgeId)
                .vertices()
                .iter()
                .filter(|&&v| covered[v as usize])
                .count();
            if shared == 0 {
                continue;
            }
            // cards[e] / shared < cards[b] / bshared, exactly.
            let better = match best {
                None => true,
                Some((b, bshared)) => {
                    (cards[e] as u128) * (bshared as u128) < (cards[b] as u128) * (shared as u128)
                }
            };
            if better {
                best = Some((e, shared));
            }
        }
        let (e, _) = best.expect("connected query always has an adjacent unchosen edge");
        chosen[e] = true;
        order.push(e as EdgeId);
        for &v in q.edge(e as EdgeId).vertices() {
            covered[v as usize] = true;
        }
    }
    Ok(MatchingOrder(order))
}

/// Compiles a plan for an explicit matching order, validating the order's
/// invariants.
pub fn compile_plan(q: &Hypergraph, order: MatchingOrder) -> Result<QueryPlan, PlanError> {
    let m = q.edge_count();
    if m > 64 {
        return Err(PlanError::TooManyEdges { edges: m });
    }
    if order.len() != m {
        return Err(PlanError::NotAPermutation);
    }
    let mut step_of_edge = vec![usize::MAX; m];
    for (i, &e) in order.steps().iter().enumerate() {
        if (e as usize) >= m || step_of_edge[e as usize] != usize::MAX {
            return Err(PlanError::NotAPermutation);
        }
        step_of_edge[e as usize] = i;
    }

    // steps_of_vertex[v] = matching-order steps whose hyperedge contains v.
    let mut steps_of_vertex: Vec<StepSet> = vec![0; q.vertex_count()];
    for (i, &e) in order.steps().iter().enumerate() {
        for &v in q.edge(e).vertices() {
            steps_of_vertex[v as usize] |= 1 << i;
        }
    }

    let mut steps = Vec::with_capacity(m);
    let mut covered = vec![false; q.vertex_count()];
    let mut prefix_vertex_count = 0usize;
    for (i, &e) in order.steps().iter().enumerate() {
        let edge = q.edge(e);
        let below = (1u64 << i) - 1;

        let mut adjacent: Vec<PriorAdjacency> = Vec::new();
        let mut non_adjacent: Vec<usize> = Vec::new();
        for (j, &f) in order.steps().iter().enumerate().take(i) {
            let shared: Vec<SharedVertex> = q
                .edge(f)
                .vertices()
                .iter()
                .filter(|&&v| edge.contains(v))
                .map(|&v| SharedVertex {
                    vertex: v,
                    label: q.label(v),
                    prior_degree: (steps_of_vertex[v as usize] & below).count_ones(),
                })
                .collect();
            if shared.is_empty() {
                non_adjacent.push(j);
            } else {
                adjacent.push(PriorAdjacency { step: j, shared });
            }
        }
        if i > 0 && adjacent.is_empty() {
            return Err(PlanError::DisconnectedPrefix { prefix: i + 1 });
        }

        for &v in edge.vertices() {
            if !covered[v as usize] {
                covered[v as usize] = true;
                prefix_vertex_count += 1;
            }
        }

        let upto = below | (1 << i);
        let mut profile_template: Vec<(LabelId, StepSet)> = edge
            .vertices()
            .iter()
            .map(|&v| (q.label(v), steps_of_vertex[v as usize] & upto))
            .collect();
        profile_template.sort_unstable();

        steps.push(PlanStep {
            query_edge: e,
            signature: Signature::of(edge, q),
            adjacent,
            non_adjacent,
            profile_template,
            prefix_vertex_count,
        });
    }

    Ok(QueryPlan {
        order,
        steps,
        step_of_edge,
    })
}
