//! Hyperedge signatures: the multiset of vertex labels of a hyperedge,
//! canonically encoded as `(label, multiplicity)` pairs sorted by label.

use std::fmt;

use crate::{graph::Hyperedge, Hypergraph, LabelId};

/// Canonical label multiset of a hyperedge. Used as the partition key of the
/// data store; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<(LabelId, u32)>);

impl Signature {
    /// Signature of a hyperedge within its graph.
    pub fn of(edge: &Hyperedge, graph: &Hypergraph) -> Self {
        Self::from_labels(edge.vertices().iter().map(|&v| graph.label(v)))
    }

    /// Builds a signature from an arbitrary label sequence.
    pub fn from_labels(labels: impl IntoIterator<Item = LabelId>) -> Self {
        let mut ls: Vec<LabelId> = labels.into_iter().collect();
        ls.sort_unstable();
        let mut pairs: Vec<(LabelId, u32)> = Vec::new();
        for l in ls {
            match pairs.last_mut() {
                Some((last, m)) if *last == l => *m += 1,
                _ => pairs.push((l, 1)),
            }
        }
        Signature(pairs)
    }

    pub fn pairs(&self) -> &[(LabelId, u32)] {
        &self.0
    }

    /// Total multiplicity, which equals the arity of the source hyperedge.
    pub fn arity(&self) -> usize {
        self.0.iter().map(|&(_, m)| m as usize).sum()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for &(l, m) in &self.0 {
            for _ in 0..m {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_is_a_sorted_multiset() {
        let (a, b, c) = (0, 1, 2);
        let g = Hypergraph::new(
            vec![a, c, a, c, b, a, a],
            vec![vec![2, 4], vec![0, 1, 4, 6]],
        )
        .unwrap();
        assert_eq!(Signature::of(g.edge(0), &g).pairs(), &[(a, 1), (b, 1)]);
        assert_eq!(
            Signature::of(g.edge(1), &g).pairs(),
            &[(a, 2), (b, 1), (c, 1)]
        );
    }

    #[test]
    fn singleton_signature() {
        let g = Hypergraph::new(vec![0], vec![vec![0]]).unwrap();
        assert_eq!(Signature::of(g.edge(0), &g).pairs(), &[(0, 1)]);
        assert_eq!(Signature::of(g.edge(0), &g).arity(), 1);
    }

    #[test]
    fn multiplicities_sum_to_arity() {
        let s = Signature::from_labels([3, 1, 3, 3, 1]);
        assert_eq!(s.pairs(), &[(1, 2), (3, 3)]);
        assert_eq!(s.arity(), 5);
    }
}
