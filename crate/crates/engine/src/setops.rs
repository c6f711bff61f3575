//! Sorted-slice set operations for posting lists.

use hypermatch_core::EdgeId;

/// Intersection of two ascending duplicate-free slices.
pub fn intersect(a: &[EdgeId], b: &[EdgeId]) -> Vec<EdgeId> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Union of several ascending duplicate-free slices.
pub fn union_all(lists: &[&[EdgeId]]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = Vec::with_capacity(lists.iter().map(|l| l.len()).sum());
    for l in lists {
        out.extend_from_slice(l);
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn intersect_basics() {
        assert_eq!(intersect(&[4, 5], &[5]), vec![5]);
        assert_eq!(intersect(&[], &[1, 2]), Vec::<EdgeId>::new());
        assert_eq!(intersect(&[1, 3, 5], &[2, 3, 4, 5]), vec![3, 5]);
    }

    #[test]
    fn union_basics() {
        assert_eq!(union_all(&[&[4, 5], &[5, 6], &[]]), vec![4, 5, 6]);
    }

    proptest! {
        #[test]
        fn intersect_matches_set_semantics(
            a in proptest::collection::btree_set(0u32..50, 0..20),
            b in proptest::collection::btree_set(0u32..50, 0..20),
        ) {
            let av: Vec<EdgeId> = a.iter().copied().collect();
            let bv: Vec<EdgeId> = b.iter().copied().collect();
            let expect: Vec<EdgeId> = a.intersection(&b).copied().collect();
            prop_assert_eq!(intersect(&av, &bv), expect);
        }

        #[test]
        fn union_matches_set_semantics(
            a in proptest::collection::btree_set(0u32..50, 0..20),
            b in proptest::collection::btree_set(0u32..50, 0..20),
        ) {
            let av: Vec<EdgeId> = a.iter().copied().collect();
            let bv: Vec<EdgeId> = b.iter().copied().collect();
            let expect: Vec<EdgeId> = a.union(&b).copied().collect::<BTreeSet<_>>().into_iter().collect();
            prop_assert_eq!(union_all(&[&av, &bv]), expect);
        }
    }
}
