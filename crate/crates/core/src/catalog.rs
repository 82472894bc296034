//! Small posets and algebras, one per isomorphism class.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::duality::poset_to_cbs;
use crate::iso::{are_isomorphic, fingerprint};
use crate::{FinCbs, Poset};

/// Adds `candidate` unless an isomorphic poset is already present.
fn insert_new(buckets: &mut BTreeMap<Vec<(usize, usize, usize)>, Vec<Poset>>, candidate: Poset) -> bool {
    let bucket = buckets.entry(fingerprint(&candidate)).or_default();
    if bucket.iter().any(|q| are_isomorphic(q, &candidate)) {
        return false;
    }
    bucket.push(candidate);
    true
}

/// Every poset with `n` points up to isomorphism whose downset count
/// satisfies `keep`. The predicate must be inherited by subposets
/// obtained by deleting a maximal point.
fn grow(n: usize, keep: impl Fn(&Poset) -> bool) -> Vec<Vec<Poset>> {
    let mut levels: Vec<Vec<Poset>> = vec![vec![Poset::antichain(0)]];
    for _ in 0..n {
        let mut buckets = BTreeMap::new();
        let mut next = Vec::new();
        for p in levels.last().unwrap() {
            for d in p.downset_masks(usize::MAX).expect("small poset") {
                let q = p.with_point(d, crate::PointSet::EMPTY).expect("new maximal point");
                if keep(&q) && insert_new(&mut buckets, q.clone()) {
                    next.push(q);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// All posets with exactly `n` points, one per isomorphism class.
pub fn posets(n: usize) -> Vec<Poset> {
    grow(n, |_| true).pop().unwrap()
}

/// All posets with at most `n` points, by increasing size.
pub fn posets_up_to(n: usize) -> Vec<Poset> {
    grow(n, |_| true).into_iter().flatten().collect()
}

/// All algebras with at most `max_size` elements up to isomorphism, as
/// downset algebras, by increasing size.
pub fn algebras(max_size: usize) -> Vec<FinCbs> {
    let fits = |p: &Poset| p.count_downsets(max_size + 1).is_ok_and(|c| c <= max_size);
    // A chain of k points has k + 1 downsets, the most points possible.
    let mut all: Vec<FinCbs> = grow(max_size.saturating_sub(1), fits)
        .into_iter()
        .flatten()
        .filter(|p| fits(p))
        .map(|p| poset_to_cbs(&p, max_size).expect("within bound").0)
        .collect();
    all.sort_by_key(FinCbs::len);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        // Number of unlabeled posets: 1, 1, 2, 5, 16, 63.
        let counts: Vec<usize> = (0..=5).map(|n| posets(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn small_algebras() {
        let sizes: Vec<usize> = algebras(5).iter().map(FinCbs::len).collect();
        // {0}; 2-chain; 3-chain; 4-chain and diamond; then the 5-chain and
        // the duals of the two three-point posets with one comparable pair
        // on each side of a shared point.
        assert_eq!(sizes, [1, 2, 3, 4, 4, 5, 5, 5]);
        for l in algebras(5) {
            crate::cbs::tests::assert_simple_identities(&l);
        }
    }
}
