//! Partial P-morphisms between finite posets.
//!
//! A partial map `f: P -> Q` is a P-morphism when it is strictly
//! order-preserving on its domain and has the lifting property: if `p` is
//! in the domain and `f(p) < q`, some `r > p` in the domain has `f(r) = q`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, PointSet, Poset, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PMorphism {
    pub dom: Poset,
    pub cod: Poset,
    pub map: Vec<Option<usize>>,
}

/// A failed P-morphism condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PViolation {
    /// The map has the wrong length or an image out of range.
    Shape { point: usize },
    /// `p < q`, both defined, but `f(p) < f(q)` fails.
    OrderPreservation { p: usize, q: usize },
    /// `f(p) < target` but no `r > p` in the domain maps to `target`.
    Lifting { p: usize, target: usize },
}

impl fmt::Display for PViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PViolation::Shape { point } => write!(f, "bad image at point {point}"),
            PViolation::OrderPreservation { p, q } => {
                write!(f, "condition (i) fails: {p} < {q} but images are not strictly ordered")
            }
            PViolation::Lifting { p, target } => {
                write!(f, "condition (ii) fails: f({p}) < {target} has no lift above {p}")
            }
        }
    }
}

/// Checks both P-morphism conditions and lists every violation.
pub fn validate_pmorphism(dom: &Poset, cod: &Poset, map: &[Option<usize>]) -> Vec<PViolation> {
    let mut out = Vec::new();
    if map.len() != dom.len() {
        out.push(PViolation::Shape { point: map.len().min(dom.len()) });
        return out;
    }
    for (p, &fp) in map.iter().enumerate() {
        if matches!(fp, Some(q) if q >= cod.len()) {
            out.push(PViolation::Shape { point: p });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for p in 0..dom.len() {
        let Some(fp) = map[p] else { continue };
        for q in dom.strictly_above(p).iter() {
            if let Some(fq) = map[q] {
                if !cod.lt(fp, fq) {
                    out.push(PViolation::OrderPreservation { p, q });
                }
            }
        }
        for target in cod.strictly_above(fp).iter() {
            let lifted = dom.strictly_above(p).iter().any(|r| map[r] == Some(target));
            if !lifted {
                out.push(PViolation::Lifting { p, target });
            }
        }
    }
    out
}

/// Flags describing a valid P-morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub total: bool,
    pub surjective: bool,
    pub injective: bool,
    pub iso: bool,
    pub minimal: bool,
    pub kind: Option<Kind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// Exactly one point outside the domain.
    First,
    /// Total with exactly one two-point fiber.
    Second,
}

impl PMorphism {
    pub fn new(dom: Poset, cod: Poset, map: Vec<Option<usize>>) -> Result<Self> {
        let v = validate_pmorphism(&dom, &cod, &map);
        if let Some(first) = v.first() {
            return Err(Error::InvalidMorphism(format!("{first}")));
        }
        Ok(PMorphism { dom, cod, map })
    }

    pub(crate) fn new_unchecked(dom: Poset, cod: Poset, map: Vec<Option<usize>>) -> Self {
        PMorphism { dom, cod, map }
    }

    pub fn identity(p: &Poset) -> Self {
        PMorphism { dom: p.clone(), cod: p.clone(), map: (0..p.len()).map(Some).collect() }
    }

    pub fn validate(&self) -> Vec<PViolation> {
        validate_pmorphism(&self.dom, &self.cod, &self.map)
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.map[p]
    }

    pub fn domain(&self) -> PointSet {
        (0..self.map.len()).filter(|&p| self.map[p].is_some()).collect()
    }

    pub fn image(&self) -> PointSet {
        self.map.iter().flatten().copied().collect()
    }

    pub fn preimage(&self, s: PointSet) -> PointSet {
        (0..self.map.len()).filter(|&p| matches!(self.map[p], Some(q) if s.contains(q))).collect()
    }

    pub fn fiber(&self, q: usize) -> PointSet {
        self.preimage(PointSet::singleton(q))
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.cod.all()
    }

    pub fn is_injective(&self) -> bool {
        let defined: Vec<usize> = self.map.iter().flatten().copied().collect();
        defined.len() == defined.iter().copied().collect::<PointSet>().len()
    }

    /// `other ∘ self`, defined where both steps are defined.
    pub fn then(&self, other: &PMorphism) -> Result<PMorphism> {
        if self.cod != other.dom {
            return Err(Error::CodomainMismatch);
        }
        Ok(PMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map: self.map.iter().map(|&q| q.and_then(|q| other.map[q])).collect(),
        })
    }

    pub fn fibers(&self) -> FiberPartition {
        FiberPartition {
            blocks: (0..self.cod.len()).map(|q| self.fiber(q)).filter(|b| !b.is_empty()).collect(),
        }
    }
}

impl fmt::Debug for PMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PMorphism({:?} -> {:?}; {:?})", self.dom, self.cod, self.map)
    }
}

pub fn classify(f: &PMorphism) -> Result<Classification> {
    if let Some(v) = f.validate().first() {
        return Err(Error::InvalidMorphism(format!("{v}")));
    }
    let total = f.is_total();
    let surjective = f.is_surjective();
    let injective = f.is_injective();
    let minimal = surjective && f.dom.len() == f.cod.len() + 1;
    let kind = if !minimal {
        None
    } else if total {
        Some(Kind::Second)
    } else {
        Some(Kind::First)
    };
    Ok(Classification {
        total,
        surjective,
        injective,
        iso: total && surjective && injective,
        minimal,
        kind,
    })
}

/// Disjoint nonempty blocks covering part of a poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberPartition {
    pub blocks: Vec<PointSet>,
}

fn block_leq(p: &Poset, a: PointSet, b: PointSet) -> bool {
    !p.down_closure(b).intersection(a).is_empty()
}

impl FiberPartition {
    /// Checks disjointness and conditions 1 to 3.
    pub fn check(&self, p: &Poset) -> Result<()> {
        let invalid = |condition: u8, witness: String| Err(Error::PartitionInvalid { condition, witness });
        let mut seen = PointSet::EMPTY;
        for (k, &b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return invalid(0, format!("block {k} is empty"));
            }
            if !b.is_subset(p.all()) {
                return invalid(0, format!("block {k} leaves the poset"));
            }
            if !b.intersection(seen).is_empty() {
                return invalid(0, format!("block {k} overlaps an earlier block"));
            }
            seen = seen.union(b);
        }
        for (i, &a) in self.blocks.iter().enumerate() {
            for (j, &b) in self.blocks.iter().enumerate() {
                if i != j && block_leq(p, a, b) && block_leq(p, b, a) {
                    return invalid(1, format!("blocks {a:?} and {b:?} are below each other"));
                }
            }
        }
        for &a in &self.blocks {
            for &b in &self.blocks {
                if !block_leq(p, a, b) {
                    continue;
                }
                let reach = p.down_closure(b);
                if let Some(x) = a.iter().find(|&x| !reach.contains(x)) {
                    return invalid(2, format!("{a:?} <= {b:?} but {x} is below nothing in {b:?}"));
                }
            }
        }
        for &a in &self.blocks {
            if !p.is_antichain(a) {
                return invalid(3, format!("block {a:?} has comparable elements"));
            }
        }
        Ok(())
    }

    pub fn support(&self) -> PointSet {
        self.blocks.iter().fold(PointSet::EMPTY, |acc, &b| acc.union(b))
    }
}

/// The quotient `Q` of `P` by `F`, ordered by `A <= B` iff some `a in A`
/// lies below some `b in B`, and the projection `P -> Q`. Quotient points
/// follow the order of the blocks.
pub fn partition_to_pmorphism(p: &Poset, f: &FiberPartition) -> Result<(Poset, PMorphism)> {
    f.check(p)?;
    let blocks = &f.blocks;
    let q = Poset::from_relation(blocks.len(), |i, j| block_leq(p, blocks[i], blocks[j]))
        .map_err(|e| Error::PartitionInvalid { condition: 1, witness: format!("{e}") })?;
    let mut map = vec![None; p.len()];
    for (k, b) in blocks.iter().enumerate() {
        for x in b.iter() {
            map[x] = Some(k);
        }
    }
    let proj = PMorphism::new(p.clone(), q.clone(), map)?;
    Ok((q, proj))
}

/// Every valid fiber partition of `p`, over every subset of points.
pub fn valid_partitions(p: &Poset) -> Vec<FiberPartition> {
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    partitions_rec(p, 0, &mut blocks, &mut out);
    out
}

fn partitions_rec(p: &Poset, i: usize, blocks: &mut Vec<PointSet>, out: &mut Vec<FiberPartition>) {
    if i == p.len() {
        let f = FiberPartition { blocks: blocks.clone() };
        if f.check(p).is_ok() {
            out.push(f);
        }
        return;
    }
    // Outside the domain.
    partitions_rec(p, i + 1, blocks, out);
    for k in 0..blocks.len() {
        // Blocks are antichains, so prune early.
        if p.down(i).union(p.up(i)).intersection(blocks[k]).is_empty() {
            blocks[k].insert(i);
            partitions_rec(p, i + 1, blocks, out);
            blocks[k].remove(i);
        }
    }
    blocks.push(PointSet::singleton(i));
    partitions_rec(p, i + 1, blocks, out);
    blocks.pop();
}

/// Every P-morphism `p -> q`, by backtracking over images.
pub fn all_pmorphisms(p: &Poset, q: &Poset) -> Vec<PMorphism> {
    let mut out = Vec::new();
    let mut map = vec![None; p.len()];
    pm_rec(p, q, 0, &mut map, &mut out);
    out
}

fn pm_rec(p: &Poset, q: &Poset, i: usize, map: &mut Vec<Option<usize>>, out: &mut Vec<PMorphism>) {
    if i == p.len() {
        if validate_pmorphism(p, q, map).is_empty() {
            out.push(PMorphism::new_unchecked(p.clone(), q.clone(), map.clone()));
        }
        return;
    }
    for choice in core::iter::once(None).chain((0..q.len()).map(Some)) {
        // Strict order preservation against points already assigned.
        let ok = choice.is_none_or(|c| {
            (0..i).all(|j| match map[j] {
                Some(d) if p.lt(j, i) => q.lt(d, c),
                Some(d) if p.lt(i, j) => q.lt(c, d),
                _ => true,
            })
        });
        if ok {
            map[i] = choice;
            pm_rec(p, q, i + 1, map, out);
        }
    }
    map[i] = None;
}

/// Factors a surjective P-morphism into `#P - #Q` minimal surjective ones,
/// returned in order of application.
///
/// Points outside the domain are peeled off first, lowest index first. The
/// total remainder is split one fiber at a time: with `x` the lowest-index
/// minimal point among those in non-singleton fibers, its fiber `G` is
/// refined into `{x}` and `G \ {x}`.
pub fn decompose_minimal_chain(f: &PMorphism) -> Result<Vec<PMorphism>> {
    if let Some(v) = f.validate().first() {
        return Err(Error::InvalidMorphism(format!("{v}")));
    }
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let p = &f.dom;
    let outside: Vec<usize> = p.all().minus(f.domain()).iter().collect();

    let mut factors = Vec::new();
    let mut current = p.all();
    for &x in &outside {
        let mut next = current;
        next.remove(x);
        let from = p.induced(current);
        let to = p.induced(next);
        let map = current
            .iter()
            .map(|a| if a == x { None } else { Some(next.iter().position(|b| b == a).unwrap()) })
            .collect();
        factors.push(PMorphism::new_unchecked(from, to, map));
        current = next;
    }

    let r = p.induced(current);
    let total = PMorphism::new_unchecked(r, f.cod.clone(), current.iter().map(|a| f.map[a]).collect());
    let mut tail = Vec::new();
    decompose_total(total.clone(), &mut tail);
    if tail.is_empty() {
        // Restriction to the domain is an isomorphism; fold it into the
        // last peeling step.
        if let Some(last) = factors.pop() {
            factors.push(last.then(&total)?);
        }
    }
    factors.extend(tail);
    Ok(factors)
}

fn decompose_total(g: PMorphism, out: &mut Vec<PMorphism>) {
    let excess = g.dom.len() - g.cod.len();
    if excess == 0 {
        return;
    }
    if excess == 1 {
        out.push(g);
        return;
    }
    let r = &g.dom;
    let fibers: Vec<PointSet> = (0..g.cod.len()).map(|q| g.fiber(q)).collect();
    let crowded: PointSet = fibers.iter().filter(|b| b.len() > 1).fold(PointSet::EMPTY, |a, &b| a.union(b));
    let x = r.minimal(crowded).iter().next().expect("a non-singleton fiber exists");
    let mut blocks: Vec<PointSet> = Vec::new();
    for b in fibers {
        if b.contains(x) {
            blocks.push(PointSet::singleton(x));
            let mut rest = b;
            rest.remove(x);
            blocks.push(rest);
        } else {
            blocks.push(b);
        }
    }
    blocks.sort_by_key(|b| b.iter().next());
    let part = FiberPartition { blocks };
    let (q, pi) = partition_to_pmorphism(r, &part).expect("refinement at a minimal point is valid");
    let induced = part
        .blocks
        .iter()
        .map(|b| g.map[b.iter().next().unwrap()])
        .collect();
    let last = PMorphism::new_unchecked(q, g.cod.clone(), induced);
    debug_assert!(last.validate().is_empty());
    decompose_total(pi, out);
    out.push(last);
}

/// Composes a chain of factors given in order of application.
pub fn compose_chain(factors: &[PMorphism]) -> Result<Option<PMorphism>> {
    let mut it = factors.iter();
    let Some(first) = it.next() else { return Ok(None) };
    let mut acc = first.clone();
    for f in it {
        acc = acc.then(f)?;
    }
    Ok(Some(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn chain2() -> Poset {
        Poset::chain(2)
    }

    fn point() -> Poset {
        Poset::antichain(1)
    }

    /// Direct restatement of the two conditions over all pairs.
    fn oracle_valid(p: &Poset, q: &Poset, m: &[Option<usize>]) -> bool {
        let n = p.len();
        for a in 0..n {
            for b in 0..n {
                if let (Some(x), Some(y)) = (m[a], m[b]) {
                    if a != b && p.leq(a, b) && !(x != y && q.leq(x, y)) {
                        return false;
                    }
                }
            }
            if let Some(x) = m[a] {
                for t in 0..q.len() {
                    if t != x && q.leq(x, t) && !(0..n).any(|r| r != a && p.leq(a, r) && m[r] == Some(t)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn validation_examples() {
        let c = chain2();
        assert!(PMorphism::identity(&c).validate().is_empty());
        let anti = Poset::antichain(2);
        let m = vec![Some(0), Some(0)];
        assert!(oracle_valid(&anti, &point(), &m));
        assert!(validate_pmorphism(&anti, &point(), &m).is_empty());
        let swap = vec![Some(1), Some(0)];
        assert!(!oracle_valid(&c, &c, &swap));
        let v = validate_pmorphism(&c, &c, &swap);
        assert!(v.contains(&PViolation::OrderPreservation { p: 0, q: 1 }));
    }

    #[test]
    fn validation_agrees_with_oracle_exhaustively() {
        let shapes = [
            Poset::antichain(2),
            Poset::chain(2),
            build_poset(3, &[(0, 2), (1, 2)]).unwrap(),
            build_poset(3, &[(0, 1), (0, 2)]).unwrap(),
            Poset::chain(3),
        ];
        for p in &shapes {
            for q in &shapes {
                let mut count = 0;
                let total = (q.len() + 1).pow(p.len() as u32);
                for code in 0..total {
                    let mut c = code;
                    let m: Vec<Option<usize>> = (0..p.len())
                        .map(|_| {
                            let d = c % (q.len() + 1);
                            c /= q.len() + 1;
                            d.checked_sub(1)
                        })
                        .collect();
                    let ok = oracle_valid(p, q, &m);
                    assert_eq!(validate_pmorphism(p, q, &m).is_empty(), ok);
                    count += ok as usize;
                }
                assert_eq!(all_pmorphisms(p, q).len(), count);
            }
        }
    }

    #[test]
    fn partition_examples() {
        let anti = Poset::antichain(2);
        let (q, f) = partition_to_pmorphism(&anti, &FiberPartition { blocks: vec![PointSet(3)] }).unwrap();
        assert_eq!(q.len(), 1);
        assert!(f.is_total() && f.is_surjective());

        let c = chain2();
        let (q, f) = partition_to_pmorphism(
            &c,
            &FiberPartition { blocks: vec![PointSet(1), PointSet(2)] },
        )
        .unwrap();
        assert_eq!(q, c);
        assert!(classify(&f).unwrap().iso);

        let err = partition_to_pmorphism(&c, &FiberPartition { blocks: vec![PointSet(3)] });
        assert!(matches!(err, Err(Error::PartitionInvalid { condition: 3, .. })));
    }

    #[test]
    fn partition_condition_two() {
        // N poset: 0 < 2, 1 < 2, 1 < 3. {0,1} <= {3} through 1, but 0 is
        // below nothing in {3}.
        let n = build_poset(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let f = FiberPartition { blocks: vec![PointSet(0b0011), PointSet(0b0100), PointSet(0b1000)] };
        assert!(matches!(f.check(&n), Err(Error::PartitionInvalid { condition: 2, .. })));
    }

    #[test]
    fn fibers_round_trip() {
        let shapes = [
            Poset::antichain(3),
            build_poset(3, &[(0, 2), (1, 2)]).unwrap(),
            build_poset(4, &[(0, 2), (1, 2), (1, 3)]).unwrap(),
        ];
        for p in &shapes {
            for part in valid_partitions(p) {
                let (_, f) = partition_to_pmorphism(p, &part).unwrap();
                assert!(f.validate().is_empty());
                assert!(f.is_surjective());
                let mut got = f.fibers().blocks;
                let mut want = part.blocks.clone();
                got.sort();
                want.sort();
                assert_eq!(got, want);
            }
            // Conversely every surjection is a quotient up to iso of Q.
            for q in [Poset::antichain(1), Poset::antichain(2), Poset::chain(2)] {
                for f in all_pmorphisms(p, &q).into_iter().filter(|f| f.is_surjective()) {
                    let (q2, pi) = partition_to_pmorphism(p, &f.fibers()).unwrap();
                    let iso = crate::iso::find_isomorphism(&q2, &q).unwrap();
                    for a in 0..p.len() {
                        assert_eq!(pi.map[a].map(|b| iso[b]), f.map[a]);
                    }
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = chain2();
        let id = classify(&PMorphism::identity(&c)).unwrap();
        assert!(id.total && id.surjective && id.iso && !id.minimal);

        let anti = Poset::antichain(2);
        let f = PMorphism::new(anti, point(), vec![Some(0), Some(0)]).unwrap();
        let k = classify(&f).unwrap();
        assert!(k.minimal && k.kind == Some(Kind::Second) && !k.injective);

        let g = PMorphism::new(c, point(), vec![Some(0), None]).unwrap();
        let k = classify(&g).unwrap();
        assert!(k.minimal && k.kind == Some(Kind::First) && !k.total);
    }

    #[test]
    fn composition_is_partial() {
        let c = chain2();
        let f = PMorphism::new(c.clone(), c.clone(), vec![Some(0), Some(1)]).unwrap();
        let g = PMorphism::new(c.clone(), point(), vec![Some(0), None]).unwrap();
        let h = f.then(&g).unwrap();
        assert_eq!(h.map, vec![Some(0), None]);
        assert!(h.validate().is_empty());
    }

    fn check_decomposition(f: &PMorphism) {
        let factors = decompose_minimal_chain(f).unwrap();
        assert_eq!(factors.len(), f.dom.len() - f.cod.len());
        for h in &factors {
            assert!(classify(h).unwrap().minimal, "{h:?}");
        }
        if let Some(c) = compose_chain(&factors).unwrap() {
            assert_eq!(c.map, f.map);
            assert_eq!(c.cod, f.cod);
        }
    }

    #[test]
    fn decomposition_examples() {
        let anti = Poset::antichain(2);
        let f = PMorphism::new(anti, point(), vec![Some(0), Some(0)]).unwrap();
        assert_eq!(decompose_minimal_chain(&f).unwrap(), vec![f.clone()]);

        let three = Poset::antichain(3);
        let f = PMorphism::new(three, point(), vec![Some(0); 3]).unwrap();
        let fs = decompose_minimal_chain(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|h| classify(h).unwrap().kind == Some(Kind::Second)));
        check_decomposition(&f);

        let g = PMorphism::new(chain2(), point(), vec![Some(0), None]).unwrap();
        let gs = decompose_minimal_chain(&g).unwrap();
        assert_eq!(gs.len(), 1);
        check_decomposition(&g);

        let not_onto = PMorphism::new(point(), Poset::antichain(2), vec![Some(0)]).unwrap();
        assert_eq!(decompose_minimal_chain(&not_onto), Err(Error::NotSurjective));
    }

    #[test]
    fn decomposition_absorbs_isomorphisms() {
        // 3-antichain onto a relabelled 2-antichain with one point dropped.
        let f = PMorphism::new(Poset::antichain(3), Poset::antichain(2), vec![Some(1), None, Some(0)]).unwrap();
        check_decomposition(&f);
        let mixed = build_poset(4, &[(0, 2), (1, 3)]).unwrap();
        for q in [Poset::antichain(1), Poset::chain(2), Poset::antichain(2)] {
            for f in all_pmorphisms(&mixed, &q).into_iter().filter(|f| f.is_surjective()) {
                check_decomposition(&f);
            }
        }
    }
}
