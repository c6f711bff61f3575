//! Match-by-vertex baseline: generic backtracking over query vertices with a
//! hyperedge compatibility check, plus the four-condition IHS candidate
//! filter.

use std::collections::{BTreeSet, HashMap};

use hypermatch_core::{EdgeId, Hypergraph, Signature, VertexId};

use crate::AlignedEmbedding;

/// Reading of the fourth IHS condition (hyperedge labels).
///
/// The condition compares label multisets of incident hyperedges between the
/// query vertex `u` and a data vertex `v`. `PerQueryEdge` demands a
/// signature-equal data edge for every incident query edge; `SinglePair`
/// only demands one signature-equal pair to exist. `PerQueryEdge` is the
/// default since it is the reading with actual filtering power; both are
/// lossless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CondFourMode {
    PerQueryEdge,
    SinglePair,
}

/// Candidate data vertices for query vertex `u` under the IHS filter with
/// the default (per-query-edge) fourth condition.
pub fn ihs_filter(u: VertexId, q: &Hypergraph, h: &Hypergraph) -> Vec<VertexId> {
    ihs_filter_with(u, q, h, CondFourMode::PerQueryEdge)
}

/// IHS filter with an explicit fourth-condition mode. A data vertex `v`
/// passes iff:
///
/// 1. `l(u) = l(v)` and `d(u) <= d(v)`;
/// 2. `|adj(u)| <= |adj(v)|`;
/// 3. for every arity `a`, `|he_a(u)| <= |he_a(v)|`;
/// 4. incident hyperedge label multisets are compatible per `mode`.
pub fn ihs_filter_with(
    u: VertexId,
    q: &Hypergraph,
    h: &Hypergraph,
    mode: CondFourMode,
) -> Vec<VertexId> {
    let u_label = q.label(u);
    let u_degree = q.degree(u);
    let u_adj = q.adjacent_vertices(u).len();
    let u_sigs: Vec<Signature> = q
        .incident_edges(u)
        .iter()
        .map(|&e| Signature::of(q.edge(e), q))
        .collect();

    (0..h.vertex_count() as VertexId)
        .filter(|&v| {
            if h.label(v) != u_label || h.degree(v) < u_degree {
                return false;
            }
            if h.adjacent_vertices(v).len() < u_adj {
                return false;
            }
            let arity_ok = q.incident_edges(u).iter().all(|&e| {
                let a = q.edge(e).arity();
                q.incident_edges_with_arity(u, a).len() <= h.incident_edges_with_arity(v, a).len()
            });
            if !arity_ok {
                return false;
            }
            let v_sigs: Vec<Signature> = h
                .incident_edges(v)
                .iter()
                .map(|&e| Signature::of(h.edge(e), h))
                .collect();
            match mode {
                CondFourMode::PerQueryEdge => {
                    u_sigs.iter().all(|s| v_sigs.iter().any(|t| t == s))
                }
                CondFourMode::SinglePair => {
                    u_sigs.iter().any(|s| v_sigs.iter().any(|t| t == s))
                }
            }
        })
        .collect()
}

/// Enumerates all embeddings of `q` in `h` by backtracking over query
/// vertices. With `use_ihs` the candidate vertex sets are prefiltered by
/// [`ihs_filter`]; otherwise only labels prefilter. The result set is
/// identical either way.
///
/// Query vertices are matched in BFS order from the vertex with the
/// smallest candidate set (ties by vertex id). On every assignment, each
/// query hyperedge whose vertices are now fully mapped must have its image
/// present in the data edge set. Full vertex mappings are converted to
/// aligned hyperedge tuples and deduplicated.
pub fn enumerate_by_vertex(
    q: &Hypergraph,
    h: &Hypergraph,
    use_ihs: bool,
) -> BTreeSet<AlignedEmbedding> {
    assert!(q.is_connected(), "query hypergraph must be connected");

    let candidates: Vec<Vec<VertexId>> = (0..q.vertex_count() as VertexId)
        .map(|u| {
            if use_ihs {
                ihs_filter(u, q, h)
            } else {
                (0..h.vertex_count() as VertexId)
                    .filter(|&v| h.label(v) == q.label(u))
                    .collect()
            }
        })
        .collect();

    let order = bfs_order(q, &candidates);
    let edge_lookup: HashMap<&[VertexId], EdgeId> = h
        .edges()
        .iter()
        .map(|e| (e.vertices(), e.id()))
        .collect();

    let mut search = Search {
        q,
        candidates: &candidates,
        order: &order,
        edge_lookup,
        mapping: vec![u32::MAX; q.vertex_count()],
        used: vec![false; h.vertex_count()],
        results: BTreeSet::new(),
    };
    search.recurse(0);
    search.results
}

/// BFS over query vertices starting from the smallest candidate set, ties by
/// vertex id; neighbours are visited in ascending id order.
fn bfs_order(q: &Hypergraph, candidates: &[Vec<VertexId>]) -> Vec<VertexId> {
    let start = (0..q.vertex_count() as VertexId)
        .min_by_key(|&u| (candidates[u as usize].len(), u))
        .expect("connected query has at least one vertex");
    let mut order = vec![start];
    let mut seen = vec![false; q.vertex_count()];
    seen[start as usize] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in q.adjacent_vertices(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                order.push(w);
            }
        }
    }
    debug_assert_eq!(order.len(), q.vertex_count(), "query is connected");
    order
}

struct Search<'a> {
    q: &'a Hypergraph,
    candidates: &'a [Vec<VertexId>],
    order: &'a [VertexId],
    edge_lookup: HashMap<&'a [VertexId], EdgeId>,
    mapping: Vec<VertexId>,
    used: Vec<bool>,
    results: BTreeSet<AlignedEmbedding>,
}

impl Search<'_> {
    fn recurse(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.record();
            return;
        }
        let u = self.order[depth];
        for i in 0..self.candidates[u as usize].len() {
            let v = self.candidates[u as usize][i];
            if self.used[v as usize] {
                continue;
            }
            self.mapping[u as usize] = v;
            if self.covered_edges_exist(u) {
                self.used[v as usize] = true;
                self.recurse(depth + 1);
                self.used[v as usize] = false;
            }
            self.mapping[u as usize] = u32::MAX;
        }
    }

    /// Every query hyperedge containing `u` whose vertices are all mapped
    /// must have its vertex image present as a data hyperedge.
    fn covered_edges_exist(&self, u: VertexId) -> bool {
        'edges: for &e in self.q.incident_edges(u) {
            let mut image: Vec<VertexId> = Vec::with_capacity(self.q.edge(e).arity());
            for &w in self.q.edge(e).vertices() {
                let v = self.mapping[w as usize];
                if v == u32::MAX {
                    continue 'edges;
                }
                image.push(v);
            }
            image.sort_unstable();
            if !self.edge_lookup.contains_key(image.as_slice()) {
                return false;
            }
        }
        true
    }

    fn record(&mut self) {
        let tuple: AlignedEmbedding = self
            .q
            .edges()
            .iter()
            .map(|e| {
                let mut image: Vec<VertexId> = e
                    .vertices()
                    .iter()
                    .map(|&w| self.mapping[w as usize])
                    .collect();
                image.sort_unstable();
                self.edge_lookup[image.as_slice()]
            })
            .collect();
        self.results.insert(tuple);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_pair() -> (Hypergraph, Hypergraph) {
        let (a, b, c) = (0, 1, 2);
        let h = Hypergraph::new(
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
        let q = Hypergraph::new(
            vec![a, c, a, a, b],
            vec![vec![2, 4], vec![0, 1, 2], vec![0, 1, 3, 4]],
        )
        .unwrap();
        (q, h)
    }

    #[test]
    fn ihs_filter_matches_hand_evaluation() {
        let (q, h) = example_pair();
        // u2 (label A): v0 and v5 fail arity containment, leaving v2 and v6.
        assert_eq!(ihs_filter(2, &q, &h), vec![2, 6]);
        // u4 is the only B-labelled query vertex; v4 the only B data vertex.
        assert_eq!(ihs_filter(4, &q, &h), vec![4]);
    }

    #[test]
    fn ihs_filter_empty_for_absent_label() {
        let (_, h) = example_pair();
        let q = Hypergraph::new(vec![9, 9], vec![vec![0, 1]]).unwrap();
        assert_eq!(ihs_filter(0, &q, &h), Vec::<VertexId>::new());
    }

    #[test]
    fn literal_condition_four_is_weaker_but_contains_strict() {
        let (q, h) = example_pair();
        for u in 0..q.vertex_count() as VertexId {
            let strict = ihs_filter_with(u, &q, &h, CondFourMode::PerQueryEdge);
            let literal = ihs_filter_with(u, &q, &h, CondFourMode::SinglePair);
            assert!(strict.iter().all(|v| literal.contains(v)));
        }
    }

    #[test]
    fn enumerates_both_embeddings_of_the_example() {
        let (q, h) = example_pair();
        let expect: BTreeSet<AlignedEmbedding> =
            [vec![0, 2, 4], vec![1, 3, 5]].into_iter().collect();
        assert_eq!(enumerate_by_vertex(&q, &h, true), expect);
        assert_eq!(enumerate_by_vertex(&q, &h, false), expect);
    }

    #[test]
    fn single_edge_query_matches_its_partition() {
        let (_, h) = example_pair();
        let q = Hypergraph::new(vec![0, 1], vec![vec![0, 1]]).unwrap();
        let expect: BTreeSet<AlignedEmbedding> = [vec![0], vec![1]].into_iter().collect();
        assert_eq!(enumerate_by_vertex(&q, &h, true), expect);
    }
}
