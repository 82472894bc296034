//! Finite posets and their downsets.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, PointSet, Result};

/// Default bound on the number of downsets an enumeration may produce.
pub const DEFAULT_MAX_DOWNSETS: usize = 1 << 20;

/// A finite partial order on the points `0..n`.
///
/// The order is stored as two families of bitsets, `↓i` and `↑i`, both
/// containing `i` itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    below: Vec<PointSet>,
    above: Vec<PointSet>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds the poset generated by Hasse cover pairs `(i, j)`, meaning
    /// `i` is below `j`.
    pub fn new(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n > PointSet::CAPACITY {
            return Err(Error::TooManyPoints(n));
        }
        let mut below: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for &(i, j) in covers {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            below[j].insert(i);
        }
        // Warshall on bitsets.
        for k in 0..n {
            let bk = below[k];
            for b in below.iter_mut() {
                if b.contains(k) {
                    *b = b.union(bk);
                }
            }
        }
        for i in 0..n {
            for j in below[i].iter() {
                if j != i && below[j].contains(i) {
                    return Err(Error::CycleDetected(j.min(i), j.max(i)));
                }
            }
        }
        Ok(Self::from_below(below))
    }

    /// Builds a poset from a full order relation, checking the order axioms.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n > PointSet::CAPACITY {
            return Err(Error::TooManyPoints(n));
        }
        let below: Vec<PointSet> = (0..n)
            .map(|j| (0..n).filter(|&i| leq(i, j)).collect())
            .collect();
        for i in 0..n {
            if !below[i].contains(i) {
                return Err(Error::NotAPartialOrder(alloc::format!("{i} is not below itself")));
            }
            for j in below[i].iter() {
                if j != i && below[j].contains(i) {
                    return Err(Error::NotAPartialOrder(alloc::format!(
                        "{j} and {i} are below each other"
                    )));
                }
                if !below[j].is_subset(below[i]) {
                    return Err(Error::NotAPartialOrder(alloc::format!(
                        "relation is not transitive through {j} <= {i}"
                    )));
                }
            }
        }
        Ok(Self::from_below(below))
    }

    /// Trusted constructor from principal downsets that are already closed.
    pub(crate) fn from_below(below: Vec<PointSet>) -> Self {
        let n = below.len();
        let mut above = alloc::vec![PointSet::EMPTY; n];
        for (j, b) in below.iter().enumerate() {
            for i in b.iter() {
                above[i].insert(j);
            }
        }
        Poset { below, above, labels: None }
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_below((0..n).map(PointSet::singleton).collect())
    }

    pub fn chain(n: usize) -> Self {
        Self::from_below((0..n).map(|i| PointSet::full(i + 1)).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::IndexOutOfRange { index: labels.len(), len: self.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn all(&self) -> PointSet {
        PointSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// `↓i`, including `i`.
    #[inline]
    pub fn down(&self, i: usize) -> PointSet {
        self.below[i]
    }

    /// `↑i`, including `i`.
    #[inline]
    pub fn up(&self, i: usize) -> PointSet {
        self.above[i]
    }

    pub fn strictly_below(&self, i: usize) -> PointSet {
        let mut s = self.below[i];
        s.remove(i);
        s
    }

    pub fn strictly_above(&self, i: usize) -> PointSet {
        let mut s = self.above[i];
        s.remove(i);
        s
    }

    pub fn down_closure(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, i| acc.union(self.below[i]))
    }

    pub fn up_closure(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, i| acc.union(self.above[i]))
    }

    pub fn is_down_closed(&self, s: PointSet) -> bool {
        s.iter().all(|i| self.below[i].is_subset(s))
    }

    pub fn is_up_closed(&self, s: PointSet) -> bool {
        s.iter().all(|i| self.above[i].is_subset(s))
    }

    pub fn is_antichain(&self, s: PointSet) -> bool {
        s.iter().all(|i| self.below[i].intersection(s) == PointSet::singleton(i))
    }

    pub fn maximal(&self, s: PointSet) -> PointSet {
        s.iter().filter(|&i| self.strictly_above(i).intersection(s).is_empty()).collect()
    }

    pub fn minimal(&self, s: PointSet) -> PointSet {
        s.iter().filter(|&i| self.strictly_below(i).intersection(s).is_empty()).collect()
    }

    /// Hasse cover pairs `(i, j)` with `i` covered by `j`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            let lower = self.strictly_below(j);
            for i in self.maximal(lower).iter() {
                out.push((i, j));
            }
        }
        out.sort_unstable();
        out
    }

    /// Length of the longest chain ending at each point, counted in points.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = alloc::vec![0usize; self.len()];
        for i in self.linear_extension() {
            h[i] = 1 + self.strictly_below(i).iter().map(|j| h[j]).max().unwrap_or(0);
        }
        h
    }

    /// A linear extension: every point comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.below[i].len(), i));
        order
    }

    /// All downsets as bitmasks in ascending numeric order.
    pub fn downset_masks(&self, max: usize) -> Result<Vec<PointSet>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        self.extend_downsets(&order, 0, PointSet::EMPTY, max, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    fn extend_downsets(
        &self,
        order: &[usize],
        k: usize,
        current: PointSet,
        max: usize,
        out: &mut Vec<PointSet>,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() == max {
                return Err(Error::SizeLimitExceeded(max));
            }
            out.push(current);
            return Ok(());
        }
        let i = order[k];
        self.extend_downsets(order, k + 1, current, max, out)?;
        if self.strictly_below(i).is_subset(current) {
            let mut with = current;
            with.insert(i);
            self.extend_downsets(order, k + 1, with, max, out)?;
        }
        Ok(())
    }

    /// Number of downsets, giving up past `max`.
    pub fn count_downsets(&self, max: usize) -> Result<usize> {
        self.downset_masks(max).map(|v| v.len())
    }

    /// `↓(a ∖ b)`, the difference of downsets.
    pub fn difference(&self, a: PointSet, b: PointSet) -> PointSet {
        self.down_closure(self.maximal(a).minus(b))
    }

    /// The subposet induced on `s`, with points renumbered in ascending
    /// order.
    pub fn induced(&self, s: PointSet) -> Poset {
        let pts: Vec<usize> = s.iter().collect();
        let below = pts
            .iter()
            .map(|&j| {
                pts.iter()
                    .enumerate()
                    .filter(|&(_, &i)| self.leq(i, j))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let mut p = Poset::from_below(below);
        if let Some(l) = &self.labels {
            p.labels = Some(pts.iter().map(|&i| l[i].clone()).collect());
        }
        p
    }

    /// Appends a point strictly above `lower` and strictly below `upper`.
    ///
    /// `lower` must be down-closed, `upper` up-closed, and every point of
    /// `lower` must be below every point of `upper`.
    pub fn with_point(&self, lower: PointSet, upper: PointSet) -> Result<Poset> {
        let n = self.len();
        if n + 1 > PointSet::CAPACITY {
            return Err(Error::TooManyPoints(n + 1));
        }
        if !self.is_down_closed(lower) || !self.is_up_closed(upper) {
            return Err(Error::NotAPartialOrder("bounds are not closed".into()));
        }
        for u in upper.iter() {
            if !lower.is_subset(self.below[u]) {
                return Err(Error::NotAPartialOrder(alloc::format!(
                    "new point would force {u} above points not below it"
                )));
            }
        }
        let mut below = self.below.clone();
        let mut own = lower;
        own.insert(n);
        for u in upper.iter() {
            below[u].insert(n);
        }
        below.push(own);
        Ok(Poset::from_below(below))
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => alloc::format!("{i}"),
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; {:?})", self.len(), self.covers())
    }
}

pub fn build_poset(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
    Poset::new(n, covers)
}

/// A downward-closed set of points of a particular poset.
#[derive(Clone, Copy)]
pub struct DownSet<'a> {
    poset: &'a Poset,
    members: PointSet,
}

impl<'a> DownSet<'a> {
    pub fn new(poset: &'a Poset, members: PointSet) -> Result<Self> {
        if !members.is_subset(poset.all()) {
            let index = members.iter().last().unwrap_or(0);
            return Err(Error::IndexOutOfRange { index, len: poset.len() });
        }
        if !poset.is_down_closed(members) {
            return Err(Error::NotDownClosed);
        }
        Ok(DownSet { poset, members })
    }

    pub fn poset(&self) -> &'a Poset {
        self.poset
    }

    pub fn members(&self) -> PointSet {
        self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    fn same_poset(&self, other: &DownSet<'_>) -> Result<()> {
        if core::ptr::eq(self.poset, other.poset) || self.poset == other.poset {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }

    pub fn union(&self, other: &DownSet<'_>) -> Result<DownSet<'a>> {
        self.same_poset(other)?;
        Ok(DownSet { poset: self.poset, members: self.members.union(other.members) })
    }

    pub fn difference(&self, other: &DownSet<'_>) -> Result<DownSet<'a>> {
        downset_difference(self.poset, self, other)
    }

    pub fn is_subset(&self, other: &DownSet<'_>) -> bool {
        self.members.is_subset(other.members)
    }
}

impl PartialEq for DownSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_poset(other).is_ok() && self.members == other.members
    }
}

impl Eq for DownSet<'_> {}

impl fmt::Debug for DownSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.members.fmt(f)
    }
}

/// The least downset containing `s`.
pub fn downset_closure(p: &Poset, s: PointSet) -> Result<DownSet<'_>> {
    if let Some(index) = s.iter().find(|&i| i >= p.len()) {
        return Err(Error::IndexOutOfRange { index, len: p.len() });
    }
    Ok(DownSet { poset: p, members: p.down_closure(s) })
}

/// Every downset of `p`, sorted by bitmask value; the first is empty.
pub fn all_downsets(p: &Poset, max: usize) -> Result<Vec<DownSet<'_>>> {
    Ok(p.downset_masks(max)?
        .into_iter()
        .map(|members| DownSet { poset: p, members })
        .collect())
}

pub fn downset_difference<'a>(
    p: &'a Poset,
    a: &DownSet<'_>,
    b: &DownSet<'_>,
) -> Result<DownSet<'a>> {
    let owner = DownSet { poset: p, members: PointSet::EMPTY };
    owner.same_poset(a)?;
    owner.same_poset(b)?;
    Ok(DownSet { poset: p, members: p.difference(a.members, b.members) })
}
