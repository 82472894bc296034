//! Coamalgamation of surjective P-morphisms and, dually, pushouts of
//! embeddings of finite CBSes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cbs::CbsMorphism;
use crate::duality::{canonical_iso, cbs_morphism_dual, pmorphism_dual, poset_to_cbs};
use crate::{Error, FinCbs, PMorphism, PointSet, Poset, Result};

/// A commuting square `f ∘ g' = g ∘ f'` over the common codomain.
#[derive(Debug, Clone)]
pub struct Coamalgamation {
    pub s: Poset,
    /// The pair `(A1, A2)`, `A1 ⊆ P` and `A2 ⊆ R`, behind each point of `S`.
    pub pairs: Vec<(PointSet, PointSet)>,
    /// `S -> R`, defined on the pairs coming from points of `R`.
    pub f_prime: PMorphism,
    /// `S -> P`, defined on the pairs coming from points of `P`.
    pub g_prime: PMorphism,
}

/// Minimal elements of `{h(a) : a in dom h, a >= x}`.
fn minimal_images(h: &PMorphism, x: usize) -> Vec<usize> {
    let images: PointSet = h.dom.up(x).iter().filter_map(|a| h.map[a]).collect();
    h.cod.minimal(images).iter().collect()
}

/// Every set `{r_1, .., r_n}` with `r_i` in the `h`-fiber of `qs[i]`.
fn choices(h: &PMorphism, qs: &[usize]) -> Vec<PointSet> {
    let mut out = vec![PointSet::EMPTY];
    for &q in qs {
        let fiber = h.fiber(q);
        out = out
            .into_iter()
            .flat_map(|acc| fiber.iter().map(move |r| acc.union(PointSet::singleton(r))))
            .collect();
    }
    out
}

fn covers_from_above(a: PointSet, b: PointSet, p: &Poset) -> bool {
    // Every y in B has some x in A below it.
    b.iter().all(|y| !p.down(y).intersection(a).is_empty())
}

/// Coamalgamates surjective `f: P -> Q` and `g: R -> Q`.
pub fn coamalgamate(f: &PMorphism, g: &PMorphism) -> Result<Coamalgamation> {
    for h in [f, g] {
        if let Some(v) = h.validate().first() {
            return Err(Error::InvalidMorphism(alloc::format!("{v}")));
        }
    }
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch);
    }
    if !f.is_surjective() || !g.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let (p, r) = (&f.dom, &g.dom);
    // pair -> (from P, from R)
    let mut found: BTreeMap<(PointSet, PointSet), (Option<usize>, Option<usize>)> = BTreeMap::new();
    for x in 0..p.len() {
        for a2 in choices(g, &minimal_images(f, x)) {
            found.entry((PointSet::singleton(x), a2)).or_default().0 = Some(x);
        }
    }
    for y in 0..r.len() {
        for a1 in choices(f, &minimal_images(g, y)) {
            found.entry((a1, PointSet::singleton(y))).or_default().1 = Some(y);
        }
    }
    let pairs: Vec<(PointSet, PointSet)> = found.keys().copied().collect();
    let s = Poset::from_relation(pairs.len(), |i, j| {
        let ((a1, a2), (b1, b2)) = (pairs[i], pairs[j]);
        covers_from_above(a1, b1, p) && covers_from_above(a2, b2, r)
    })?;
    let g_prime = PMorphism::new_unchecked(s.clone(), p.clone(), found.values().map(|v| v.0).collect());
    let f_prime = PMorphism::new_unchecked(s.clone(), r.clone(), found.values().map(|v| v.1).collect());
    Ok(Coamalgamation { s, pairs, f_prime, g_prime })
}

/// The pushout `L1 -> D <- L2` of embeddings `m: L0 -> L1`, `n: L0 -> L2`,
/// computed on the dual side.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub d: FinCbs,
    pub j1: CbsMorphism,
    pub j2: CbsMorphism,
}

pub fn pushout_monos(m: &CbsMorphism, n: &CbsMorphism) -> Result<Pushout> {
    if m.dom != n.dom {
        return Err(Error::CodomainMismatch);
    }
    if !m.is_injective() || !n.is_injective() {
        return Err(Error::NotInjective);
    }
    let f = cbs_morphism_dual(m)?;
    let g = cbs_morphism_dual(n)?;
    let c = coamalgamate(&f, &g)?;
    let (d, _) = poset_to_cbs(&c.s, usize::MAX)?;
    // L1 ≅ D(J(L1)) -> D(S), dual to g'; likewise for L2 through f'.
    let leg = |l: &FinCbs, h: &PMorphism| -> Result<CbsMorphism> {
        let (_, _, iso) = canonical_iso(l)?;
        let dual = pmorphism_dual(h)?;
        Ok(CbsMorphism::new_unchecked(l.clone(), d.clone(), iso.iter().map(|&a| dual.apply(a)).collect()))
    };
    let j1 = leg(&m.cod, &c.g_prime)?;
    let j2 = leg(&n.cod, &c.f_prime)?;
    Ok(Pushout { d, j1, j2 })
}
