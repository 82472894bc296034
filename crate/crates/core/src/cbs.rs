//! Finite co-Brouwerian semilattices given by explicit tables.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A law violated by a candidate pair of tables, with the elements that
/// witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Law {
    TableShape,
    ZeroIdentity,
    Idempotence,
    Commutativity,
    Associativity,
    Adjunction,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::TableShape => "table-shape",
            Law::ZeroIdentity => "zero-identity",
            Law::Idempotence => "idempotence",
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Adjunction => "adjunction",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.law.name(), self.witness)
    }
}

/// Outcome of [`validate_cbs`]. Empty means the tables define a CBS.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CbsReport {
    pub violations: Vec<Violation>,
}

impl CbsReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, law: Law, witness: &[usize]) {
        // Enough to diagnose; a broken table can produce n^3 entries.
        if self.violations.iter().filter(|v| v.law == law).count() < 8 {
            self.violations.push(Violation { law, witness: witness.to_vec() });
        }
    }
}

/// Checks row-major `n x n` tables for the CBS laws: `(join, zero)` is a
/// semilattice with least element and `diff(a,b) <= c` iff
/// `a <= join(b,c)`.
pub fn validate_cbs(n: usize, zero: usize, join: &[usize], diff: &[usize]) -> CbsReport {
    let mut r = CbsReport::default();
    if join.len() != n * n || diff.len() != n * n || (n > 0 && zero >= n) || n == 0 {
        r.push(Law::TableShape, &[n]);
        return r;
    }
    if let Some(k) = join.iter().chain(diff).position(|&v| v >= n) {
        r.push(Law::TableShape, &[k % (n * n) / n, k % n]);
        return r;
    }
    let j = |a: usize, b: usize| join[a * n + b];
    let d = |a: usize, b: usize| diff[a * n + b];
    let leq = |a: usize, b: usize| j(a, b) == b;
    for a in 0..n {
        if j(a, zero) != a {
            r.push(Law::ZeroIdentity, &[a]);
        }
        if j(a, a) != a {
            r.push(Law::Idempotence, &[a]);
        }
        for b in 0..n {
            if j(a, b) != j(b, a) {
                r.push(Law::Commutativity, &[a, b]);
            }
            for c in 0..n {
                if j(j(a, b), c) != j(a, j(b, c)) {
                    r.push(Law::Associativity, &[a, b, c]);
                }
                if leq(d(a, b), c) != leq(a, j(b, c)) {
                    r.push(Law::Adjunction, &[a, b, c]);
                }
            }
        }
    }
    r
}

/// A finite co-Brouwerian semilattice. Element `0` is the least element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinCbs {
    n: usize,
    join: Vec<u32>,
    diff: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FinCbs {
    /// Validates row-major tables and relabels `zero` to index `0`.
    pub fn new(n: usize, zero: usize, join: &[usize], diff: &[usize]) -> Result<Self> {
        let report = validate_cbs(n, zero, join, diff);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidAlgebra(format!("{v}")));
        }
        // Swap zero with index 0.
        let relabel = |x: usize| {
            if x == zero {
                0
            } else if x == 0 {
                zero
            } else {
                x
            }
        };
        let mut l = FinCbs::from_fn_unchecked(n, |a, b| relabel(join[relabel(a) * n + relabel(b)]), |a, b| {
            relabel(diff[relabel(a) * n + relabel(b)])
        });
        l.labels = None;
        Ok(l)
    }

    /// Builds tables from closures and validates them.
    pub fn from_fn(
        n: usize,
        join: impl Fn(usize, usize) -> usize,
        diff: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let j: Vec<usize> = (0..n * n).map(|k| join(k / n, k % n)).collect();
        let d: Vec<usize> = (0..n * n).map(|k| diff(k / n, k % n)).collect();
        Self::new(n, 0, &j, &d)
    }

    pub(crate) fn from_fn_unchecked(
        n: usize,
        join: impl Fn(usize, usize) -> usize,
        diff: impl Fn(usize, usize) -> usize,
    ) -> Self {
        FinCbs {
            n,
            join: (0..n * n).map(|k| join(k / n, k % n) as u32).collect(),
            diff: (0..n * n).map(|k| diff(k / n, k % n) as u32).collect(),
            labels: None,
        }
    }

    /// The one-element algebra `{0}`.
    pub fn trivial() -> Self {
        Self::from_fn_unchecked(1, |_, _| 0, |_, _| 0)
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn_unchecked(n, |a, b| a.max(b), |a, b| if a <= b { 0 } else { a })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::IndexOutOfRange { index: labels.len(), len: self.n });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("{a}"),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: every algebra has a zero.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline]
    pub fn diff(&self, a: usize, b: usize) -> usize {
        self.diff[a * self.n + b] as usize
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(0, |acc, x| self.join(acc, x))
    }

    pub fn top(&self) -> usize {
        self.join_all(self.elements())
    }

    /// Greatest lower bound, computed as the join of all lower bounds.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let m = self.join_all(self.elements().filter(|&c| self.leq(c, a) && self.leq(c, b)));
        debug_assert!(self.leq(m, a) && self.leq(m, b));
        m
    }

    /// `a ≪ b`: `a <= b` and `b - a = b`.
    pub fn way_below(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.diff(b, a) == b
    }

    pub fn is_join_irreducible(&self, g: usize) -> bool {
        g != 0 && self.elements().all(|a| matches!(self.diff(g, a), d if d == 0 || d == g))
    }

    /// Join-irreducible elements in ascending index order.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.elements().filter(|&g| self.is_join_irreducible(g)).collect()
    }

    /// Maximal join-irreducibles below `a`.
    pub fn ji_components(&self, a: usize) -> Vec<usize> {
        let below: Vec<usize> = self
            .join_irreducibles()
            .into_iter()
            .filter(|&g| self.leq(g, a))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&g| !below.iter().any(|&h| self.lt(g, h)))
            .collect()
    }

    /// `g⁻`, the join of everything strictly below a join-irreducible `g`.
    pub fn predecessor(&self, g: usize) -> Result<usize> {
        if g >= self.n {
            return Err(Error::IndexOutOfRange { index: g, len: self.n });
        }
        if !self.is_join_irreducible(g) {
            return Err(Error::NotJoinIrreducible(g));
        }
        Ok(self.join_all(self.elements().filter(|&a| self.lt(a, g))))
    }

    /// Least subset containing `seeds` and `0`, closed under join and
    /// difference, in ascending order.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut member = vec![false; self.n];
        let mut elems = Vec::new();
        let mut queue = VecDeque::new();
        for s in core::iter::once(0).chain(seeds) {
            if !member[s] {
                member[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            elems.push(x);
            for &y in &elems {
                for z in [self.join(x, y), self.diff(x, y), self.diff(y, x)] {
                    if !member[z] {
                        member[z] = true;
                        queue.push_back(z);
                    }
                }
            }
        }
        elems.sort_unstable();
        elems
    }

    /// The algebra on a closed subset, with elements numbered in the order
    /// given. `elems[0]` must be `0`.
    pub(crate) fn restrict(&self, elems: &[usize]) -> FinCbs {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &e) in elems.iter().enumerate() {
            pos[e] = k;
        }
        let mut l = FinCbs::from_fn_unchecked(
            elems.len(),
            |a, b| pos[self.join(elems[a], elems[b])],
            |a, b| pos[self.diff(elems[a], elems[b])],
        );
        if let Some(lab) = &self.labels {
            l.labels = Some(elems.iter().map(|&e| lab[e].clone()).collect());
        }
        l
    }

    /// The subalgebra generated by `seeds`, with its inclusion.
    pub fn generated_subalgebra(&self, seeds: impl IntoIterator<Item = usize>) -> (FinCbs, CbsMorphism) {
        let elems = self.closure(seeds);
        let sub = self.restrict(&elems);
        let inc = CbsMorphism { dom: sub.clone(), cod: self.clone(), map: elems };
        (sub, inc)
    }

    /// Hasse covers of the order, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Applies a permutation: element `a` becomes `perm[a]`.
    pub fn permute(&self, perm: &[usize]) -> FinCbs {
        let mut inv = vec![0; self.n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let mut l = FinCbs::from_fn_unchecked(
            self.n,
            |a, b| perm[self.join(inv[a], inv[b])],
            |a, b| perm[self.diff(inv[a], inv[b])],
        );
        if let Some(lab) = &self.labels {
            l.labels = Some((0..self.n).map(|a| lab[inv[a]].clone()).collect());
        }
        l
    }

    pub fn join_table(&self) -> Vec<usize> {
        self.join.iter().map(|&v| v as usize).collect()
    }

    pub fn diff_table(&self) -> Vec<usize> {
        self.diff.iter().map(|&v| v as usize).collect()
    }
}

impl fmt::Debug for FinCbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCbs({}; covers {:?})", self.n, self.covers())
    }
}

/// A map preserving `0`, join and difference.
#[derive(Clone, PartialEq, Eq)]
pub struct CbsMorphism {
    pub dom: FinCbs,
    pub cod: FinCbs,
    pub map: Vec<usize>,
}

impl CbsMorphism {
    pub fn new(dom: FinCbs, cod: FinCbs, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.len() {
            return Err(Error::InvalidCbsMorphism(format!(
                "map has {} entries for {} elements",
                map.len(),
                dom.len()
            )));
        }
        if let Some(&index) = map.iter().find(|&&v| v >= cod.len()) {
            return Err(Error::IndexOutOfRange { index, len: cod.len() });
        }
        let h = CbsMorphism { dom, cod, map };
        h.check()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(dom: FinCbs, cod: FinCbs, map: Vec<usize>) -> Self {
        CbsMorphism { dom, cod, map }
    }

    pub fn identity(l: &FinCbs) -> Self {
        CbsMorphism { dom: l.clone(), cod: l.clone(), map: (0..l.len()).collect() }
    }

    pub fn check(&self) -> Result<()> {
        let (d, c, m) = (&self.dom, &self.cod, &self.map);
        if m[0] != 0 {
            return Err(Error::InvalidCbsMorphism("0 is not preserved".into()));
        }
        for a in d.elements() {
            for b in d.elements() {
                if m[d.join(a, b)] != c.join(m[a], m[b]) {
                    return Err(Error::InvalidCbsMorphism(format!("join not preserved at ({a}, {b})")));
                }
                if m[d.diff(a, b)] != c.diff(m[a], m[b]) {
                    return Err(Error::InvalidCbsMorphism(format!(
                        "difference not preserved at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|&v| !core::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CbsMorphism) -> Result<CbsMorphism> {
        if self.cod != other.dom {
            return Err(Error::CodomainMismatch);
        }
        Ok(CbsMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }
}

impl fmt::Debug for CbsMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CbsMorphism({} -> {}; {:?})", self.dom.len(), self.cod.len(), self.map)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Subsets of `{p, q}` as bitmasks; the downsets of a 2-antichain.
    pub(crate) fn diamond() -> FinCbs {
        FinCbs::from_fn(4, |a, b| a | b, |a, b| a & !b).unwrap()
    }

    fn two() -> FinCbs {
        FinCbs::chain(2)
    }

    /// Every identity we expect of a CBS, checked exhaustively.
    pub(crate) fn assert_simple_identities(l: &FinCbs) {
        let e = || l.elements();
        for a in e() {
            assert_eq!(l.diff(a, 0), a);
            assert_eq!(l.diff(0, a), 0);
            assert_eq!(l.diff(a, a), 0);
            for b in e() {
                assert_eq!(l.join(l.diff(a, b), b), l.join(a, b));
                assert_eq!(l.diff(a, l.diff(a, l.diff(a, b))), l.diff(a, b));
                assert_eq!(l.leq(a, b), l.diff(a, b) == 0);
                assert!(l.leq(l.diff(a, b), a));
                for c in e() {
                    assert_eq!(l.diff(l.diff(a, b), c), l.diff(l.diff(a, c), b));
                    assert_eq!(l.diff(l.join(a, b), c), l.join(l.diff(a, c), l.diff(b, c)));
                    assert_eq!(l.diff(a, l.join(b, c)), l.diff(l.diff(a, b), c));
                    if l.leq(a, b) {
                        assert!(l.leq(l.diff(a, c), l.diff(b, c)));
                        assert!(l.leq(l.diff(c, b), l.diff(c, a)));
                    }
                    for d in e() {
                        let lhs = l.diff(l.join(l.join(a, b), c), d);
                        let rhs = l.join(l.join(l.diff(a, d), l.diff(b, d)), l.diff(c, d));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    /// The five equivalent characterisations of join-irreducibility.
    pub(crate) fn assert_ji_conditions_agree(l: &FinCbs) {
        let e = || l.elements();
        for g in e() {
            let nonzero = g != 0;
            // g = a v b implies g = a or g = b
            let c1 = nonzero && e().all(|a| e().all(|b| l.join(a, b) != g || a == g || b == g));
            // g <= a v b implies g <= a or g <= b
            let c2 = nonzero
                && e().all(|a| e().all(|b| !l.leq(g, l.join(a, b)) || l.leq(g, a) || l.leq(g, b)));
            // g - a = 0 or g - a = g
            let c3 = nonzero && e().all(|a| l.diff(g, a) == 0 || l.diff(g, a) == g);
            // unique predecessor: the join of strictly smaller elements is strictly smaller
            let pred = l.join_all(e().filter(|&a| l.lt(a, g)));
            let c4 = nonzero && pred != g;
            // g - a = g iff not g <= a
            let c5 = nonzero && e().all(|a| (l.diff(g, a) == g) == !l.leq(g, a));
            assert_eq!([c1, c2, c3, c4], [c5; 4], "element {g}");
            assert_eq!(l.is_join_irreducible(g), c5);
        }
    }

    #[test]
    fn validates_diamond_and_catches_perturbations() {
        let d = diamond();
        let (j, df) = (d.join_table(), d.diff_table());
        assert!(validate_cbs(4, 0, &j, &df).is_ok());

        let mut bad_join = j.clone();
        bad_join[1 * 4 + 2] = 1;
        let r = validate_cbs(4, 0, &bad_join, &df);
        assert!(r.violations.iter().any(|v| v.law == Law::Commutativity && v.witness == [1, 2]));

        let mut bad_diff = df.clone();
        bad_diff[3 * 4] = 1;
        let r = validate_cbs(4, 0, &j, &bad_diff);
        assert!(r.violations.iter().any(|v| v.law == Law::Adjunction && v.witness[..2] == [3, 0]));
    }

    #[test]
    fn zero_is_relabelled() {
        // Chain with elements listed top first: 1 is the top, 0 the bottom
        // after relabelling.
        let order = |x: usize| 1 - x;
        let j: Vec<usize> = (0..4).map(|k| if order(k / 2) >= order(k % 2) { k / 2 } else { k % 2 }).collect();
        let d: Vec<usize> = (0..4).map(|k| if order(k / 2) <= order(k % 2) { 1 } else { k / 2 }).collect();
        let l = FinCbs::new(2, 1, &j, &d).unwrap();
        assert!(l.leq(0, 1));
        assert_eq!(l, FinCbs::chain(2));
    }

    #[test]
    fn join_irreducible_examples() {
        assert_eq!(two().join_irreducibles(), vec![1]);
        assert_eq!(diamond().join_irreducibles(), vec![1, 2]);
        assert_eq!(FinCbs::chain(3).join_irreducibles(), vec![1, 2]);
        for l in [two(), diamond(), FinCbs::chain(4), FinCbs::trivial()] {
            assert_ji_conditions_agree(&l);
            assert_simple_identities(&l);
        }
    }

    #[test]
    fn components_and_predecessors() {
        let d = diamond();
        assert_eq!(d.ji_components(3), vec![1, 2]);
        assert_eq!(d.ji_components(1), vec![1]);
        assert!(d.ji_components(0).is_empty());
        let c = FinCbs::chain(3);
        assert_eq!(c.predecessor(2), Ok(1));
        assert_eq!(d.predecessor(1), Ok(0));
        assert_eq!(d.predecessor(3), Err(Error::NotJoinIrreducible(3)));
    }

    #[test]
    fn way_below_examples() {
        let d = diamond();
        for b in 0..4 {
            assert!(d.way_below(0, b));
        }
        assert!(FinCbs::chain(3).way_below(1, 2));
        assert!(!d.way_below(1, 3));
        assert_eq!(d.diff(3, 1), 2);
    }

    #[test]
    fn difference_is_join_of_surviving_components() {
        for l in [diamond(), FinCbs::chain(4)] {
            for a in l.elements() {
                let comps = l.ji_components(a);
                assert_eq!(l.join_all(comps.iter().copied()), a);
                for b in l.elements() {
                    let rhs = l.join_all(comps.iter().copied().filter(|&g| !l.leq(g, b)));
                    assert_eq!(l.diff(a, b), rhs);
                }
            }
            for g in l.join_irreducibles() {
                assert!(l.way_below(l.predecessor(g).unwrap(), g));
            }
        }
    }

    #[test]
    fn subalgebra_examples() {
        let d = diamond();
        let (sub, inc) = d.generated_subalgebra([3]);
        assert_eq!(inc.map, vec![0, 3]);
        assert_eq!(sub, FinCbs::chain(2));
        inc.check().unwrap();
        let (all, inc) = d.generated_subalgebra(0..4);
        assert_eq!(all, d);
        assert_eq!(inc.map, vec![0, 1, 2, 3]);
        let (zero, _) = d.generated_subalgebra([]);
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn meets_are_greatest_lower_bounds() {
        let d = diamond();
        assert_eq!(d.meet(1, 2), 0);
        assert_eq!(d.meet(3, 2), 2);
        assert_eq!(d.top(), 3);
    }

    #[test]
    fn morphism_checks() {
        let d = diamond();
        assert!(CbsMorphism::new(two(), d.clone(), vec![0, 3]).is_ok());
        // 1 -> p would be fine too; 1 -> 0 is not injective but still a morphism.
        assert!(CbsMorphism::new(two(), d.clone(), vec![0, 0]).is_ok());
        assert!(CbsMorphism::new(two(), d.clone(), vec![1, 3]).is_err());
        // Collapsing q breaks difference: 3 - 1 = 2 but images give 3 - 3 = 0 != 2.
        assert!(CbsMorphism::new(d.clone(), d.clone(), vec![0, 3, 2, 3]).is_err());
    }
}
