//! Poset isomorphism by backtracking over invariant-compatible candidates.

use alloc::vec;
use alloc::vec::Vec;

use crate::Poset;

/// Per-point invariant: sizes of `↓i` and `↑i` and the height of `i`.
fn point_keys(p: &Poset) -> Vec<(usize, usize, usize)> {
    let h = p.heights();
    (0..p.len()).map(|i| (p.down(i).len(), p.up(i).len(), h[i])).collect()
}

/// An isomorphism-invariant fingerprint, useful for bucketing.
pub fn fingerprint(p: &Poset) -> Vec<(usize, usize, usize)> {
    let mut k = point_keys(p);
    k.sort_unstable();
    k
}

/// Finds an order isomorphism `p -> q`, returned as the image of each point.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    find_isomorphism_with(p, q, |_, _| true)
}

/// Like [`find_isomorphism`], restricted to maps sending `i` to `j` only
/// when `allowed(i, j)` holds.
pub fn find_isomorphism_with(
    p: &Poset,
    q: &Poset,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let kp = point_keys(p);
    let kq = point_keys(q);
    let mut sp = kp.clone();
    let mut sq = kq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| kp[i] == kq[j] && allowed(i, j)).collect())
        .collect();
    // Most constrained points first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(p, q, &order, 0, &candidates, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn search(
    p: &Poset,
    q: &Poset,
    order: &[usize],
    k: usize,
    candidates: &[Vec<usize>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&i) = order.get(k) else {
        return true;
    };
    for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        let consistent = order[..k].iter().all(|&a| {
            let b = image[a];
            p.leq(a, i) == q.leq(b, j) && p.leq(i, a) == q.leq(j, b)
        });
        if !consistent {
            continue;
        }
        image[i] = j;
        used[j] = true;
        if search(p, q, order, k + 1, candidates, image, used) {
            return true;
        }
        used[j] = false;
    }
    image[i] = usize::MAX;
    false
}

pub fn are_isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    #[test]
    fn relabelled_posets_are_isomorphic() {
        let p = build_poset(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let q = build_poset(4, &[(3, 1), (0, 1), (1, 2)]).unwrap();
        let f = find_isomorphism(&p, &q).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(p.leq(a, b), q.leq(f[a], f[b]));
            }
        }
    }

    #[test]
    fn same_fingerprint_different_shape() {
        // Two 2-chains vs. an N: the N has a cover the pair of chains lacks.
        let two_chains = build_poset(4, &[(0, 1), (2, 3)]).unwrap();
        let n = build_poset(4, &[(0, 1), (2, 3), (0, 3)]).unwrap();
        assert!(!are_isomorphic(&two_chains, &n));
        assert!(are_isomorphic(&n, &n));
    }

    #[test]
    fn restricted_search() {
        let a = Poset::antichain(2);
        assert_eq!(find_isomorphism_with(&a, &a, |i, j| i != j), Some(vec![1, 0]));
        assert_eq!(find_isomorphism_with(&a, &a, |i, _| i == 5), None);
    }
}
