//! Expansion operators: candidate generation by posting-list set algebra,
//! embedding validation by vertex-profile multisets, and the sequential
//! depth-first enumerator built from them.

use hypermatch_core::{EdgeId, IndexedHypergraph, LabelId, VertexId};

use crate::embedding::PartialEmbedding;
use crate::plan::QueryPlan;
use crate::setops;
use crate::StepSet;

/// Candidate data hyperedges for one step, plus counters over the
/// intermediate vertex sets for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    /// Ascending, duplicate-free, confined to the step's signature
    /// partition, and excluding already-matched data hyperedges.
    pub candidates: Vec<EdgeId>,
    /// Size of the forbidden-vertex set (vertices of matched hyperedges at
    /// non-adjacent prior steps).
    pub forbidden_vertices: usize,
    /// Total admissible vertices found across all shared query vertices.
    pub admissible_vertices: usize,
}

impl CandidateSet {
    fn empty(forbidden_vertices: usize, admissible_vertices: usize) -> Self {
        CandidateSet {
            candidates: Vec::new(),
            forbidden_vertices,
            admissible_vertices,
        }
    }
}

/// Enumerates the single-step embeddings of the first query hyperedge: one
/// per data hyperedge in the partition of its signature. Every edge of the
/// partition matches, since equal signatures always admit a label-preserving
/// bijection.
pub fn scan_first<'a>(
    plan: &'a QueryPlan,
    idx: &'a IndexedHypergraph,
) -> impl Iterator<Item = PartialEmbedding> + 'a {
    idx.partition(&plan.step(0).signature)
        .map(|p| p.edges())
        .unwrap_or(&[])
        .iter()
        .map(move |&e| PartialEmbedding::seed(e, idx))
}

/// Generates the candidate data hyperedges for matching step `step` (which
/// must equal `m.len()`) against partial embedding `m`.
///
/// For every prior step adjacent to the step's query hyperedge and every
/// query vertex they share, the matched data hyperedge is scanned for
/// admissible vertices: not forbidden by non-adjacency, label equal to the
/// shared query vertex, and degree within the matched subhypergraph equal to
/// the vertex's degree within the prior partial query. The posting lists of
/// the admissible vertices (within the step's signature partition) are
/// unioned per shared vertex, and the per-vertex unions intersected. Data
/// hyperedges already matched by `m` are dropped from the result.
pub fn generate_candidates(
    plan: &QueryPlan,
    step: usize,
    m: &PartialEmbedding,
    idx: &IndexedHypergraph,
) -> CandidateSet {
    debug_assert_eq!(m.len(), step);
    debug_assert!(step >= 1);
    let step_plan = plan.step(step);

    // Vertices of matched hyperedges whose query hyperedges are non-adjacent
    // to the one being matched; the candidate must avoid all of them.
    let mut forbidden: Vec<VertexId> = Vec::new();
    for &j in &step_plan.non_adjacent {
        forbidden.extend_from_slice(idx.graph().edge(m.matched()[j]).vertices());
    }
    forbidden.sort_unstable();
    forbidden.dedup();

    let partition = match idx.partition(&step_plan.signature) {
        Some(p) => p,
        None => return CandidateSet::empty(forbidden.len(), 0),
    };

    let mut admissible_total = 0usize;
    let mut acc: Option<Vec<EdgeId>> = None;
    for adj in &step_plan.adjacent {
        let data_edge = idx.graph().edge(m.matched()[adj.step]);
        for shared in &adj.shared {
            let mut postings: Vec<&[EdgeId]> = Vec::new();
            let mut admissible = 0usize;
            for &v in data_edge.vertices() {
                if forbidden.binary_search(&v).is_ok() {
                    continue;
                }
                if idx.graph().label(v) != shared.label || m.degree(v) != shared.prior_degree {
                    continue;
                }
                admissible += 1;
                postings.push(partition.posting(v));
            }
            admissible_total += admissible;
            if admissible == 0 {
                return CandidateSet::empty(forbidden.len(), admissible_total);
            }
            let contribution = setops::union_all(&postings);
            acc = Some(match acc {
                None => contribution,
                Some(prev) => setops::intersect(&prev, &contribution),
            });
            if acc.as_ref().is_some_and(|a| a.is_empty()) {
                return CandidateSet::empty(forbidden.len(), admissible_total);
            }
        }
    }

    let mut candidates = acc.unwrap_or_default();
    candidates.retain(|&c| !m.contains_edge(c));
    CandidateSet {
        candidates,
        forbidden_vertices: forbidden.len(),
        admissible_vertices: admissible_total,
    }
}

/// Validation verdict, split so diagnostics can distinguish the cheap
/// vertex-count rejection from the profile-multiset rejection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Validation {
    WrongVertexCount,
    WrongProfiles,
    Valid,
}

pub(crate) fn validate(
    plan: &QueryPlan,
    step: usize,
    m: &PartialEmbedding,
    idx: &IndexedHypergraph,
) -> Validation {
    debug_assert_eq!(m.len(), step + 1);
    let step_plan = plan.step(step);
    if step_plan.prefix_vertex_count != m.vertex_count() {
        return Validation::WrongVertexCount;
    }
    let last = m.matched()[step];
    let mut profiles: Vec<(LabelId, StepSet)> = idx
        .graph()
        .edge(last)
        .vertices()
        .iter()
        .map(|&v| (idx.graph().label(v), m.incidence().steps(v)))
        .collect();
    profiles.sort_unstable();
    if profiles == step_plan.profile_template {
        Validation::Valid
    } else {
        Validation::WrongProfiles
    }
}

/// Theorem-level validation of the newest hyperedge of `m` (matched at
/// `step`): the prefix vertex counts must agree and the vertex-profile
/// multisets of the last query hyperedge and the last matched hyperedge must
/// be equal.
pub fn is_valid_embedding(
    plan: &QueryPlan,
    step: usize,
    m: &PartialEmbedding,
    idx: &IndexedHypergraph,
) -> bool {
    validate(plan, step, m, idx) == Validation::Valid
}

/// Counters accumulated over one enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Full-length embeddings delivered to the sink.
    pub embeddings: u64,
    /// First-edge matches plus candidates produced by every expansion.
    pub candidates: u64,
    /// Candidates surviving the vertex-count check (first-edge matches pass
    /// trivially).
    pub filtered: u64,
    /// Expansion operator invocations.
    pub expansions: u64,
}

/// Depth-first enumeration of all embeddings. Every full-length valid
/// embedding is delivered to `sink` exactly once, realigned to query-input
/// hyperedge order. Counts aligned hyperedge tuples, not vertex mappings.
pub fn enumerate_sequential<F: FnMut(&[EdgeId])>(
    plan: &QueryPlan,
    idx: &IndexedHypergraph,
    mut sink: F,
) -> EnumerationStats {
    let mut stats = EnumerationStats::default();
    let k = plan.num_steps();
    let mut aligned: Vec<EdgeId> = Vec::with_capacity(k);
    for m in scan_first(plan, idx) {
        stats.candidates += 1;
        stats.filtered += 1;
        if k == 1 {
            stats.embeddings += 1;
            plan.realign(m.matched(), &mut aligned);
            sink(&aligned);
        } else {
            descend(plan, idx, &m, &mut stats, &mut sink, &mut aligned);
        }
    }
    stats
}

fn descend<F: FnMut(&[EdgeId])>(
    plan: &QueryPlan,
    idx: &IndexedHypergraph,
    m: &PartialEmbedding,
    stats: &mut EnumerationStats,
    sink: &mut F,
    aligned: &mut Vec<EdgeId>,
) {
    let step = m.len();
    let cs = generate_candidates(plan, step, m, idx);
    stats.expansions += 1;
    stats.candidates += cs.candidates.len() as u64;
    for &c in &cs.candidates {
        let next = m
            .extended(c, idx)
            .expect("candidates never repeat a matched edge");
        match validate(plan, step, &next, idx) {
            Validation::WrongVertexCount => {}
            Validation::WrongProfiles => stats.filtered += 1,
            Validation::Valid => {
                stats.filtered += 1;
                if step + 1 == plan.num_steps() {
                    stats.embeddings += 1;
                    plan.realign(next.matched(), aligned);
                    sink(aligned);
                } else {
                    descend(plan, idx, &next, stats, sink, aligned);
                }
            }
        }
    }
}
