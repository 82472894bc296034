//! Minimal finite extensions and their signatures.
//!
//! A proper extension `L0 ⊆ L` of finite CBSes is minimal when nothing sits
//! strictly between them. Dually it is a minimal surjective P-morphism
//! `J(L) -> J(L0)`: either one new point outside the domain (first kind) or
//! one point of `J(L0)` split in two (second kind).
//!
//! Such extensions are classified up to isomorphism over `L0` by their
//! signatures: `(h, G)` for the first kind and `(h1, h2, g)` for the
//! second.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cbs::CbsMorphism;
use crate::duality::{cbs_from_downsets, cbs_morphism_dual, cbs_to_poset, element_downsets};
use crate::pmorph::Kind;
use crate::{Error, FinCbs, PMorphism, PointSet, Poset, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    /// `h` and a set `G` of pairwise incomparable join-irreducibles, each
    /// strictly above `h`. `G` is kept sorted and may be empty.
    First { h: usize, g: Vec<usize> },
    /// A join-irreducible `g` with `h1 v h2 = g⁻`.
    Second { h1: usize, h2: usize, g: usize },
}

impl Signature {
    pub fn first(h: usize, mut g: Vec<usize>) -> Self {
        g.sort_unstable();
        Signature::First { h, g }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Signature::First { .. } => Kind::First,
            Signature::Second { .. } => Kind::Second,
        }
    }

    /// Checks the signature conditions in `l0`.
    pub fn check(&self, l0: &FinCbs) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSignature(msg));
        let n = l0.len();
        match self {
            Signature::First { h, g } => {
                if let Some(&x) = core::iter::once(h).chain(g).find(|&&x| x >= n) {
                    return bad(format!("element {x} out of range"));
                }
                for (i, &a) in g.iter().enumerate() {
                    if !l0.is_join_irreducible(a) {
                        return bad(format!("{a} is not join-irreducible"));
                    }
                    if !l0.lt(*h, a) {
                        return bad(format!("{h} is not strictly below {a}"));
                    }
                    if g[..i].contains(&a) {
                        return bad(format!("{a} is repeated"));
                    }
                    if let Some(&b) = g.iter().find(|&&b| b != a && l0.leq(a, b)) {
                        return bad(format!("{a} and {b} are comparable"));
                    }
                }
                Ok(())
            }
            &Signature::Second { h1, h2, g } => {
                if let Some(x) = [h1, h2, g].into_iter().find(|&x| x >= n) {
                    return bad(format!("element {x} out of range"));
                }
                let Ok(pred) = l0.predecessor(g) else {
                    return bad(format!("{g} is not join-irreducible"));
                };
                if l0.join(h1, h2) != pred {
                    return bad(format!("{h1} v {h2} is not the predecessor {pred} of {g}"));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signature::First { h, g } => {
                write!(f, "first h={h} G={{")?;
                for (i, x) in g.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            Signature::Second { h1, h2, g } => write!(f, "second h1={h1} h2={h2} g={g}"),
        }
    }
}

/// An embedding of finite CBSes, `base ⊆ ext`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub embed: CbsMorphism,
}

impl Extension {
    pub fn base(&self) -> &FinCbs {
        &self.embed.dom
    }

    pub fn ext(&self) -> &FinCbs {
        &self.embed.cod
    }

    /// Base elements as a membership table over `ext`.
    pub fn base_members(&self) -> Vec<Option<usize>> {
        let mut back = vec![None; self.ext().len()];
        for (a, &e) in self.embed.map.iter().enumerate() {
            back[e] = Some(a);
        }
        back
    }
}

/// The elements generating a minimal extension over its base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generators {
    First(usize),
    Second(usize, usize),
}

impl Generators {
    pub fn elements(&self) -> Vec<usize> {
        match *self {
            Generators::First(x) => vec![x],
            Generators::Second(x1, x2) => vec![x1, x2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalExtension {
    pub extension: Extension,
    pub kind: Kind,
    pub generators: Generators,
}

/// The extension of `base` dual to a surjective P-morphism `f: P -> J(base)`
/// (points of `J(base)` numbered as in [`cbs_to_poset`]).
///
/// Elements of the result are the downsets of `P`: first the images of the
/// base elements in base order, so the embedding is the identity on
/// `0..base.len()`, then the remaining downsets by ascending bitmask.
pub fn dual_extension(base: &FinCbs, f: &PMorphism) -> Result<(Extension, Vec<PointSet>)> {
    if !f.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let (_, ji) = cbs_to_poset(base);
    let p = &f.dom;
    let mut masks: Vec<PointSet> = element_downsets(base, &ji)
        .into_iter()
        .map(|d| p.down_closure(f.preimage(d)))
        .collect();
    let mut seen: Vec<PointSet> = masks.clone();
    seen.sort_unstable();
    for d in p.downset_masks(usize::MAX)? {
        if seen.binary_search(&d).is_err() {
            masks.push(d);
        }
    }
    let ext = cbs_from_downsets(p, &masks)?;
    let embed = CbsMorphism::new_unchecked(base.clone(), ext, (0..base.len()).collect());
    Ok((Extension { embed }, masks))
}

/// All signatures of `l0`: first kind before second, each sorted
/// lexicographically. Second-kind triples are listed with `h1 <= h2`
/// since swapping `h1` and `h2` gives an isomorphic extension.
pub fn enumerate_signatures(l0: &FinCbs) -> Vec<Signature> {
    let ji = l0.join_irreducibles();
    let mut out = Vec::new();
    for h in l0.elements() {
        let above: Vec<usize> = ji.iter().copied().filter(|&g| l0.lt(h, g)).collect();
        let mut antichains = Vec::new();
        antichains_rec(l0, &above, 0, &mut Vec::new(), &mut antichains);
        antichains.sort();
        out.extend(antichains.into_iter().map(|g| Signature::First { h, g }));
    }
    let mut second = Vec::new();
    for &g in &ji {
        let pred = l0.predecessor(g).expect("join-irreducible");
        for h1 in l0.elements() {
            for h2 in h1..l0.len() {
                if l0.join(h1, h2) == pred {
                    second.push(Signature::Second { h1, h2, g });
                }
            }
        }
    }
    second.sort();
    out.extend(second);
    out
}

fn antichains_rec(l: &FinCbs, pool: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == pool.len() {
        out.push(cur.clone());
        return;
    }
    antichains_rec(l, pool, k + 1, cur, out);
    let x = pool[k];
    if cur.iter().all(|&y| !l.leq(x, y) && !l.leq(y, x)) {
        cur.push(x);
        antichains_rec(l, pool, k + 1, cur, out);
        cur.pop();
    }
}

/// The minimal surjective P-morphism onto `J(l0)` described by `s`.
///
/// First kind: the new point is appended last. Second kind: the points of
/// `J(l0)` other than `g` keep their order, followed by `x1` and `x2`.
pub fn signature_pmorphism(l0: &FinCbs, s: &Signature) -> Result<PMorphism> {
    s.check(l0)?;
    let (q, ji) = cbs_to_poset(l0);
    let downs = element_downsets(l0, &ji);
    let point = |g: usize| ji.binary_search(&g).expect("join-irreducible");
    match s {
        Signature::First { h, g } => {
            let up = q.up_closure(g.iter().map(|&x| point(x)).collect());
            let p = q.with_point(downs[*h], up)?;
            let map = (0..q.len()).map(Some).chain([None]).collect();
            Ok(PMorphism::new_unchecked(p, q, map))
        }
        &Signature::Second { h1, h2, g } => {
            let gp = point(g);
            let rest: Vec<usize> = (0..q.len()).filter(|&i| i != gp).collect();
            let m = rest.len();
            let (d1, d2) = (downs[h1], downs[h2]);
            // Index k < m is rest[k]; m is x1 and m + 1 is x2.
            let leq = |a: usize, b: usize| -> bool {
                match (a >= m, b >= m) {
                    (false, false) => q.leq(rest[a], rest[b]),
                    (false, true) => {
                        let d = if b == m { d1 } else { d2 };
                        d.contains(rest[a])
                    }
                    (true, false) => q.lt(gp, rest[b]),
                    (true, true) => a == b,
                }
            };
            let p = Poset::from_relation(m + 2, leq)?;
            let map = rest.iter().map(|&i| Some(i)).chain([Some(gp), Some(gp)]).collect();
            Ok(PMorphism::new_unchecked(p, q, map))
        }
    }
}

/// The minimal extension of `l0` with signature `s`.
pub fn build_extension(l0: &FinCbs, s: &Signature) -> Result<MinimalExtension> {
    let f = signature_pmorphism(l0, s)?;
    debug_assert!(f.validate().is_empty());
    let (extension, masks) = dual_extension(l0, &f)?;
    let n = f.dom.len();
    let element = |pt: usize| masks.iter().position(|&m| m == f.dom.down(pt)).expect("principal downset");
    let generators = match s {
        Signature::First { .. } => Generators::First(element(n - 1)),
        Signature::Second { .. } => Generators::Second(element(n - 2), element(n - 1)),
    };
    Ok(MinimalExtension { extension, kind: s.kind(), generators })
}

fn not_primitive(reason: &str, witness: String) -> Error {
    Error::NotPrimitive { reason: reason.to_string(), witness }
}

/// Checks that `candidate` is a primitive element or couple of `l` over the
/// image of `embed`, and returns the signature it induces.
pub fn primitive_check(embed: &CbsMorphism, candidate: Generators) -> Result<Signature> {
    let l = &embed.cod;
    let l0 = &embed.dom;
    let e = |a: usize| embed.apply(a);
    let mut in_base = vec![false; l.len()];
    for &y in &embed.map {
        in_base[y] = true;
    }
    let ji0 = l0.join_irreducibles();
    if let Some(&x) = candidate.elements().iter().find(|&&x| x >= l.len()) {
        return Err(Error::IndexOutOfRange { index: x, len: l.len() });
    }
    // The join of the base join-irreducibles strictly below `x`.
    let lower = |x: usize| l0.join_all(ji0.iter().copied().filter(|&a| l.lt(e(a), x)));
    match candidate {
        Generators::First(x) => {
            if in_base[x] {
                return Err(not_primitive("condition 1: element lies in the base", format!("{x}")));
            }
            for &a in &ji0 {
                let d = l.diff(e(a), x);
                if !in_base[d] {
                    return Err(not_primitive("condition 2: a - x leaves the base", format!("a={a}")));
                }
                let r = l.diff(x, e(a));
                if r != 0 && r != x {
                    return Err(not_primitive("condition 3: x - a is neither 0 nor x", format!("a={a}")));
                }
            }
            let above: Vec<usize> = ji0.iter().copied().filter(|&a| l.lt(x, e(a))).collect();
            let g = above
                .iter()
                .copied()
                .filter(|&a| !above.iter().any(|&b| l0.lt(b, a)))
                .collect();
            Ok(Signature::first(lower(x), g))
        }
        Generators::Second(x1, x2) => {
            if in_base[x1] || in_base[x2] || x1 == x2 {
                return Err(not_primitive(
                    "condition 1: elements must be distinct and outside the base",
                    format!("({x1}, {x2})"),
                ));
            }
            let gl = l.join(x1, x2);
            let g = match embed.map.iter().position(|&y| y == gl) {
                Some(g) if l0.is_join_irreducible(g) => g,
                _ => {
                    return Err(not_primitive(
                        "condition 2: x1 v x2 is not a join-irreducible of the base",
                        format!("{gl}"),
                    ))
                }
            };
            if l.diff(gl, x1) != x2 || l.diff(gl, x2) != x1 {
                return Err(not_primitive("condition 2: g - x1 = x2 and g - x2 = x1 fail", format!("g={g}")));
            }
            for &a in ji0.iter().filter(|&&a| l0.lt(a, g)) {
                for x in [x1, x2] {
                    if !in_base[l.diff(e(a), x)] {
                        return Err(not_primitive("condition 3: a - x leaves the base", format!("a={a}, x={x}")));
                    }
                }
            }
            Ok(Signature::Second { h1: lower(x1), h2: lower(x2), g })
        }
    }
}

/// The generators of a minimal extension: the join-irreducible outside the
/// domain of the dual map, or the two points of its doubleton fiber.
pub fn find_primitive_generators(e: &Extension) -> Result<Generators> {
    let dual = cbs_morphism_dual(&e.embed)?;
    let kind = crate::pmorph::classify(&dual)?.kind.ok_or(Error::NotMinimal)?;
    let (_, ji) = cbs_to_poset(e.ext());
    Ok(match kind {
        Kind::First => {
            let x = (0..dual.map.len()).find(|&i| dual.map[i].is_none()).ok_or(Error::NotMinimal)?;
            Generators::First(ji[x])
        }
        Kind::Second => {
            let q = (0..dual.cod.len()).find(|&q| dual.fiber(q).len() == 2).ok_or(Error::NotMinimal)?;
            let mut pair = dual.fiber(q).iter().map(|i| ji[i]);
            let (a, b) = (pair.next().unwrap(), pair.next().unwrap());
            Generators::Second(a.min(b), a.max(b))
        }
    })
}
