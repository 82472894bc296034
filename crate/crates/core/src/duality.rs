//! The duality between finite posets with P-morphisms and finite CBSes.
//!
//! A poset `P` goes to its algebra of downsets `D(P)`; an algebra `L` goes
//! to the poset `J(L)` of its join-irreducibles. A P-morphism `f: P -> Q`
//! goes to `D ↦ ↓f⁻¹(D)`, a CBS morphism `D(Q) -> D(P)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cbs::CbsMorphism;
use crate::{Error, FinCbs, PMorphism, PointSet, Poset, Result};

/// The algebra on a family of downsets closed under union and difference.
///
/// Elements are numbered in the order given; `masks[0]` must be empty.
pub fn cbs_from_downsets(p: &Poset, masks: &[PointSet]) -> Result<FinCbs> {
    let index: BTreeMap<PointSet, usize> = masks.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    if masks.first() != Some(&PointSet::EMPTY) || index.len() != masks.len() {
        return Err(Error::InvalidAlgebra("downset family must start with the empty set and have no repeats".into()));
    }
    let lookup = |m: PointSet| {
        index
            .get(&m)
            .copied()
            .ok_or_else(|| Error::InvalidAlgebra("downset family is not closed".into()))
    };
    let n = masks.len();
    let mut join = Vec::with_capacity(n * n);
    let mut diff = Vec::with_capacity(n * n);
    for &a in masks {
        for &b in masks {
            join.push(lookup(a.union(b))?);
            diff.push(lookup(p.difference(a, b))?);
        }
    }
    Ok(FinCbs::from_fn_unchecked(n, |a, b| join[a * n + b], |a, b| diff[a * n + b]))
}

/// `D(P)` with its elements in canonical order, and the downset behind each
/// element.
pub fn poset_to_cbs(p: &Poset, max_downsets: usize) -> Result<(FinCbs, Vec<PointSet>)> {
    let masks = p.downset_masks(max_downsets)?;
    let l = cbs_from_downsets(p, &masks)?;
    Ok((l, masks))
}

/// `J(L)` and the element of `L` behind each point.
pub fn cbs_to_poset(l: &FinCbs) -> (Poset, Vec<usize>) {
    let ji = l.join_irreducibles();
    let below = ji
        .iter()
        .map(|&b| {
            ji.iter()
                .enumerate()
                .filter(|&(_, &a)| l.leq(a, b))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let mut p = Poset::from_below(below);
    if let Some(labels) = l.labels() {
        p = p
            .with_labels(ji.iter().map(|&g| labels[g].clone()).collect())
            .expect("one label per point");
    }
    (p, ji)
}

/// For each element `a` of `L`, the downset `{g in J(L) : g <= a}`.
pub fn element_downsets(l: &FinCbs, ji: &[usize]) -> Vec<PointSet> {
    l.elements()
        .map(|a| ji.iter().enumerate().filter(|&(_, &g)| l.leq(g, a)).map(|(k, _)| k).collect())
        .collect()
}

/// The canonical isomorphism `L -> D(J(L))`, with `D(J(L))` in canonical
/// order.
pub fn canonical_iso(l: &FinCbs) -> Result<(Poset, FinCbs, Vec<usize>)> {
    let (j, ji) = cbs_to_poset(l);
    let (d, masks) = poset_to_cbs(&j, usize::MAX)?;
    let map = element_downsets(l, &ji)
        .into_iter()
        .map(|m| masks.binary_search(&m).map_err(|_| Error::RoundTripFailure))
        .collect::<Result<Vec<_>>>()?;
    Ok((j, d, map))
}

/// The dual of `f: P -> Q`, mapping `D(Q)` to `D(P)` by `D ↦ ↓f⁻¹(D)`.
pub fn pmorphism_dual(f: &PMorphism) -> Result<CbsMorphism> {
    if let Some(v) = f.validate().first() {
        return Err(Error::InvalidMorphism(alloc::format!("{v}")));
    }
    let (dq, mq) = poset_to_cbs(&f.cod, usize::MAX)?;
    let (dp, mp) = poset_to_cbs(&f.dom, usize::MAX)?;
    let map = mq
        .iter()
        .map(|&d| {
            let m = f.dom.down_closure(f.preimage(d));
            mp.binary_search(&m).expect("downset of the domain")
        })
        .collect();
    Ok(CbsMorphism::new_unchecked(dq, dp, map))
}

/// The dual of `h: L -> M`, a P-morphism `J(M) -> J(L)`.
///
/// A point `q` of `J(M)` is in the domain iff it is a join-irreducible
/// component of some `h(a)`; it then maps to the least `a` with
/// `q <= h(a)`, which is join-irreducible. The result is checked to
/// dualize back to `h`.
pub fn cbs_morphism_dual(h: &CbsMorphism) -> Result<PMorphism> {
    h.check()?;
    let (l, m) = (&h.dom, &h.cod);
    let (jl, jil) = cbs_to_poset(l);
    let (jm, jim) = cbs_to_poset(m);
    let mut in_domain = alloc::vec![false; jim.len()];
    for a in l.elements() {
        for c in m.ji_components(h.apply(a)) {
            in_domain[jim.binary_search(&c).expect("component is join-irreducible")] = true;
        }
    }
    let mut map = Vec::with_capacity(jim.len());
    for (k, &q) in jim.iter().enumerate() {
        if !in_domain[k] {
            map.push(None);
            continue;
        }
        let over: Vec<usize> = l.elements().filter(|&a| m.leq(q, h.apply(a))).collect();
        let least: Vec<usize> = over
            .iter()
            .copied()
            .filter(|&a| over.iter().all(|&b| l.leq(a, b)))
            .collect();
        let [a] = least[..] else { return Err(Error::RoundTripFailure) };
        let Ok(idx) = jil.binary_search(&a) else { return Err(Error::RoundTripFailure) };
        map.push(Some(idx));
    }
    let g = PMorphism::new(jm, jl, map).map_err(|_| Error::RoundTripFailure)?;

    // D(J(L)) -> D(J(M)) must agree with h under the canonical isomorphisms.
    let back = pmorphism_dual(&g)?;
    let (_, _, iso_l) = canonical_iso(l)?;
    let (_, _, iso_m) = canonical_iso(m)?;
    for a in l.elements() {
        if back.apply(iso_l[a]) != iso_m[h.apply(a)] {
            return Err(Error::RoundTripFailure);
        }
    }
    Ok(g)
}

/// Whether two algebras are isomorphic, decided on their dual posets.
pub fn cbs_isomorphic(a: &FinCbs, b: &FinCbs) -> bool {
    a.len() == b.len() && crate::iso::are_isomorphic(&cbs_to_poset(a).0, &cbs_to_poset(b).0)
}
