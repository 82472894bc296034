//! The Splitting and Density axioms.
//!
//! In CBS form, over elements of an algebra `L`:
//!
//! * Splitting: if `b1 v b2 ≪ a ≠ 0` there are nonzero `a1`, `a2` with
//!   `a - a1 = a2 >= b2`, `a - a2 = a1 >= b1`, `b2 - a1 = b2 - b1` and
//!   `b1 - a2 = b1 - b2`.
//! * Density 1: for every `c` there is `b ≠ 0` with `c ≪ b`.
//! * Density 2: if `a1, a2 ≠ 0`, `c ≪ a1`, `c ≪ a2`, `a1 - d = a1` and
//!   `a2 - d = a2`, there is `b ≠ 0` with `c ≪ b`, `b ≪ a1`, `b ≪ a2` and
//!   `b - d = b`.
//!
//! [`evaluate_axioms`] looks for witnesses inside a finite algebra; the
//! `*_witness` functions build a finite extension holding one. Composing the
//! witness steps realizes every signature ([`realize_signature_via_axioms`]).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cbs::CbsMorphism;
use crate::duality::{cbs_to_poset, element_downsets};
use crate::minext::{build_extension, dual_extension};
use crate::{Error, Extension, FinCbs, Generators, PMorphism, PointSet, Poset, Result, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Splitting,
    Density1,
    Density2,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Splitting => "splitting",
            Axiom::Density1 => "density1",
            Axiom::Density2 => "density2",
        }
    }

    /// Names of the universally quantified variables, in instance order.
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            Axiom::Splitting => &["a", "b1", "b2"],
            Axiom::Density1 => &["c"],
            Axiom::Density2 => &["c", "a1", "a2", "d"],
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Satisfied,
    Failed,
}

/// The instances of one axiom that have no witness in the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub status: Status,
    pub failures: Vec<Vec<usize>>,
}

impl AxiomReport {
    fn new(axiom: Axiom, failures: Vec<Vec<usize>>) -> Self {
        let status = if failures.is_empty() { Status::Satisfied } else { Status::Failed };
        AxiomReport { axiom, status, failures }
    }
}

/// Nonzero `(a1, a2)` in `l` meeting the Splitting conclusion, lowest `a1`
/// first.
pub fn find_split(l: &FinCbs, a: usize, b1: usize, b2: usize) -> Option<(usize, usize)> {
    (1..l.len()).find_map(|a1| {
        let a2 = l.diff(a, a1);
        let ok = a2 != 0
            && l.diff(a, a2) == a1
            && l.leq(b1, a1)
            && l.leq(b2, a2)
            && l.diff(b2, a1) == l.diff(b2, b1)
            && l.diff(b1, a2) == l.diff(b1, b2);
        ok.then_some((a1, a2))
    })
}

pub fn find_density1(l: &FinCbs, c: usize) -> Option<usize> {
    (1..l.len()).find(|&b| l.way_below(c, b))
}

pub fn find_density2(l: &FinCbs, c: usize, a1: usize, a2: usize, d: usize) -> Option<usize> {
    (1..l.len()).find(|&b| l.way_below(c, b) && l.way_below(b, a1) && l.way_below(b, a2) && l.diff(b, d) == b)
}

fn splitting_applies(l: &FinCbs, a: usize, b1: usize, b2: usize) -> bool {
    a != 0 && l.way_below(l.join(b1, b2), a)
}

fn density2_applies(l: &FinCbs, c: usize, a1: usize, a2: usize, d: usize) -> bool {
    a1 != 0
        && a2 != 0
        && l.way_below(c, a1)
        && l.way_below(c, a2)
        && l.diff(a1, d) == a1
        && l.diff(a2, d) == a2
}

/// Instantiates each axiom over every tuple of `l` and searches `l` for a
/// witness.
pub fn evaluate_axioms(l: &FinCbs) -> [AxiomReport; 3] {
    let n = l.len();
    let mut split = Vec::new();
    for a in 0..n {
        for b1 in 0..n {
            for b2 in 0..n {
                if splitting_applies(l, a, b1, b2) && find_split(l, a, b1, b2).is_none() {
                    split.push(vec![a, b1, b2]);
                }
            }
        }
    }
    let dense1 = (0..n).filter(|&c| find_density1(l, c).is_none()).map(|c| vec![c]).collect();
    let mut dense2 = Vec::new();
    for c in 0..n {
        for a1 in 0..n {
            for a2 in 0..n {
                for d in 0..n {
                    if density2_applies(l, c, a1, a2, d) && find_density2(l, c, a1, a2, d).is_none() {
                        dense2.push(vec![c, a1, a2, d]);
                    }
                }
            }
        }
    }
    [
        AxiomReport::new(Axiom::Splitting, split),
        AxiomReport::new(Axiom::Density1, dense1),
        AxiomReport::new(Axiom::Density2, dense2),
    ]
}

fn in_range(l: &FinCbs, xs: &[usize]) -> Result<()> {
    match xs.iter().find(|&&x| x >= l.len()) {
        Some(&index) => Err(Error::IndexOutOfRange { index, len: l.len() }),
        None => Ok(()),
    }
}

fn element_of(masks: &[PointSet], d: PointSet) -> usize {
    masks.iter().position(|&m| m == d).expect("downset of the extension")
}

/// The extension of `l0` dual to `p -> J(l0)`, where `p` extends `J(l0)` by
/// new points outside the domain.
fn extend_by_points(l0: &FinCbs, q: &Poset, p: Poset) -> Result<(Extension, Vec<PointSet>)> {
    let map = (0..p.len()).map(|i| (i < q.len()).then_some(i)).collect();
    let f = PMorphism::new(p, q.clone(), map)?;
    dual_extension(l0, &f)
}

/// A Splitting witness for `(a, b1, b2)`: `J(l0)` with the points of
/// `B1 ∩ B2` kept once and every other point doubled, one copy over `B1`
/// and one over `B2`.
pub fn splitting_witness(l0: &FinCbs, a: usize, b1: usize, b2: usize) -> Result<(Extension, usize, usize)> {
    split_points(l0, a, b1, b2, false)
}

/// Like [`splitting_witness`], but only points under `A` are doubled; the
/// rest of `J(l0)` is kept once. Used by the realization tower, where
/// doubling everything grows the algebra exponentially.
pub fn local_splitting_witness(l0: &FinCbs, a: usize, b1: usize, b2: usize) -> Result<(Extension, usize, usize)> {
    split_points(l0, a, b1, b2, true)
}

fn split_points(l0: &FinCbs, a: usize, b1: usize, b2: usize, local: bool) -> Result<(Extension, usize, usize)> {
    in_range(l0, &[a, b1, b2])?;
    if !splitting_applies(l0, a, b1, b2) {
        return Err(Error::PreconditionFailed(format!("need b1 v b2 << a != 0 (a={a}, b1={b1}, b2={b2})")));
    }
    let (q, ji) = cbs_to_poset(l0);
    let downs = element_downsets(l0, &ji);
    let (da, d1, d2) = (downs[a], downs[b1], downs[b2]);
    // (x, 0) for x in B1 ∩ B2, (x, 1) for x not in B2, (x, 2) for x not in B1.
    let mut sym: Vec<(usize, u8)> = Vec::new();
    for x in 0..q.len() {
        if (d1.contains(x) && d2.contains(x)) || (local && !da.contains(x)) {
            sym.push((x, 0));
            continue;
        }
        if !d2.contains(x) {
            sym.push((x, 1));
        }
        if !d1.contains(x) {
            sym.push((x, 2));
        }
    }
    let p = Poset::from_relation(sym.len(), |s, t| {
        let ((y, j), (x, i)) = (sym[s], sym[t]);
        q.leq(y, x) && !matches!((i, j), (1, 2) | (2, 1))
    })?;
    let f = PMorphism::new(p, q.clone(), sym.iter().map(|&(x, _)| Some(x)).collect())?;
    let (ext, masks) = dual_extension(l0, &f)?;
    let tops = q.maximal(da);
    let side = |k: u8| {
        let s: PointSet = (0..sym.len()).filter(|&s| sym[s].1 == k && tops.contains(sym[s].0)).collect();
        f.dom.down_closure(s)
    };
    let (a1, a2) = (element_of(&masks, side(1)), element_of(&masks, side(2)));
    Ok((ext, a1, a2))
}

/// A Density 1 witness: `J(l0)` with a new top point `m`, and `b = ↓m`.
pub fn density1_witness(l0: &FinCbs, c: usize) -> Result<(Extension, usize)> {
    in_range(l0, &[c])?;
    let (q, _) = cbs_to_poset(l0);
    let p = q.with_point(q.all(), PointSet::EMPTY)?;
    let all = p.all();
    let (ext, masks) = extend_by_points(l0, &q, p)?;
    Ok((ext, element_of(&masks, all)))
}

/// A Density 2 witness: a new point `β_i` over each maximal `γ_i` of `C`
/// (or a single minimal `β` when `C` is empty), just below the first
/// maximal points of `A1` and `A2` above it. `b` is the union of the `↓β_i`.
pub fn density2_witness(l0: &FinCbs, c: usize, a1: usize, a2: usize, d: usize) -> Result<(Extension, usize)> {
    in_range(l0, &[c, a1, a2, d])?;
    if !density2_applies(l0, c, a1, a2, d) {
        return Err(Error::PreconditionFailed(format!(
            "need a1, a2 != 0, c << a1, c << a2, a1 - d = a1, a2 - d = a2 (c={c}, a1={a1}, a2={a2}, d={d})"
        )));
    }
    let (q, ji) = cbs_to_poset(l0);
    let downs = element_downsets(l0, &ji);
    let (max1, max2) = (q.maximal(downs[a1]), q.maximal(downs[a2]));
    let above = |tops: PointSet, g: Option<usize>| {
        tops.iter().find(|&m| g.is_none_or(|g| q.leq(g, m))).expect("c << a puts every point of C under a maximal point of A")
    };
    let gammas: Vec<Option<usize>> = match q.maximal(downs[c]) {
        cs if cs.is_empty() => vec![None],
        cs => cs.iter().map(Some).collect(),
    };
    let mut p = q.clone();
    let mut b = PointSet::EMPTY;
    for g in gammas {
        let lower = g.map_or(PointSet::EMPTY, |g| q.down(g));
        let alphas: PointSet = [above(max1, g), above(max2, g)].into_iter().collect();
        p = p.with_point(lower, p.up_closure(alphas))?;
        b = b.union(p.down(p.len() - 1));
    }
    let (ext, masks) = extend_by_points(l0, &q, p)?;
    Ok((ext, element_of(&masks, b)))
}

/// One equation or relation of a witness certificate, evaluated in the
/// extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub statement: String,
    pub holds: bool,
}

fn check(statement: &str, holds: bool) -> Check {
    Check { statement: statement.into(), holds }
}

/// The Splitting conclusion for base elements `a, b1, b2` and extension
/// elements `a1, a2`.
pub fn splitting_checks(e: &Extension, a: usize, b1: usize, b2: usize, a1: usize, a2: usize) -> Vec<Check> {
    let l = e.ext();
    let (a, b1, b2) = (e.embed.apply(a), e.embed.apply(b1), e.embed.apply(b2));
    vec![
        check("a1 != 0", a1 != 0),
        check("a2 != 0", a2 != 0),
        check("a - a1 = a2", l.diff(a, a1) == a2),
        check("a - a2 = a1", l.diff(a, a2) == a1),
        check("a2 >= b2", l.leq(b2, a2)),
        check("a1 >= b1", l.leq(b1, a1)),
        check("b2 - a1 = b2 - b1", l.diff(b2, a1) == l.diff(b2, b1)),
        check("b1 - a2 = b1 - b2", l.diff(b1, a2) == l.diff(b1, b2)),
    ]
}

pub fn density1_checks(e: &Extension, c: usize, b: usize) -> Vec<Check> {
    let l = e.ext();
    let c = e.embed.apply(c);
    vec![check("b != 0", b != 0), check("c << b", l.way_below(c, b))]
}

pub fn density2_checks(e: &Extension, c: usize, a1: usize, a2: usize, d: usize, b: usize) -> Vec<Check> {
    let l = e.ext();
    let [c, a1, a2, d] = [c, a1, a2, d].map(|x| e.embed.apply(x));
    vec![
        check("b != 0", b != 0),
        check("c << b", l.way_below(c, b)),
        check("b << a1", l.way_below(b, a1)),
        check("b << a2", l.way_below(b, a2)),
        check("b - d = b", l.diff(b, d) == b),
    ]
}

/// The outcome of [`realize_signature_via_axioms`].
#[derive(Debug, Clone)]
pub struct Realization {
    /// Witness steps in order. Each step extends the part of the previous
    /// result still in use: the subalgebra generated by the base and the
    /// elements produced so far.
    pub tower: Vec<Extension>,
    /// The base inside the final algebra.
    pub embed: CbsMorphism,
    /// Primitive generators in the final algebra.
    pub generators: Generators,
    /// Deepest nesting of the induction that produced the generators.
    pub depth: usize,
    /// `n1 + n2` for the second kind, `#G` for the first.
    pub bound: usize,
}

/// Index into `Tower::live`. Element indices move when the ambient is
/// compacted; handles do not.
type Handle = usize;

/// The ambient algebra built so far and the elements the construction holds.
struct Tower {
    alg: FinCbs,
    live: Vec<usize>,
    steps: Vec<Extension>,
}

impl Tower {
    fn new(l0: &FinCbs) -> Self {
        Tower { alg: l0.clone(), live: (0..l0.len()).collect(), steps: Vec::new() }
    }

    fn el(&self, h: Handle) -> usize {
        self.live[h]
    }

    fn track(&mut self, x: usize) -> Handle {
        match self.live.iter().position(|&y| y == x) {
            Some(h) => h,
            None => {
                self.live.push(x);
                self.live.len() - 1
            }
        }
    }

    fn join(&mut self, a: Handle, b: Handle) -> Handle {
        let x = self.alg.join(self.el(a), self.el(b));
        self.track(x)
    }

    /// Elements of the subalgebra generated by `gens`, ascending.
    fn span(&self, gens: &[Handle]) -> Vec<usize> {
        self.alg.closure(gens.iter().map(|&h| self.el(h)))
    }

    /// Drops everything outside the subalgebra generated by live elements.
    fn compact(&mut self) {
        let keep = self.alg.closure(self.live.iter().copied());
        if keep.len() == self.alg.len() {
            return;
        }
        for x in &mut self.live {
            *x = keep.binary_search(x).expect("live element is kept");
        }
        self.alg = self.alg.restrict(&keep);
    }

    /// Witness extensions keep old elements at their indices.
    fn grow(&mut self, e: Extension) {
        debug_assert!(e.embed.map.iter().enumerate().all(|(i, &x)| i == x));
        self.alg = e.ext().clone();
        self.steps.push(e);
    }

    fn split(&mut self, a: Handle, b1: Handle, b2: Handle) -> Result<(Handle, Handle)> {
        let (x, y) = match find_split(&self.alg, self.el(a), self.el(b1), self.el(b2)) {
            Some(found) => found,
            None => {
                self.compact();
                let (e, x, y) = local_splitting_witness(&self.alg, self.el(a), self.el(b1), self.el(b2))?;
                self.grow(e);
                (x, y)
            }
        };
        Ok((self.track(x), self.track(y)))
    }

    fn density1(&mut self, c: Handle) -> Result<Handle> {
        let b = match find_density1(&self.alg, self.el(c)) {
            Some(b) => b,
            None => {
                self.compact();
                let (e, b) = density1_witness(&self.alg, self.el(c))?;
                self.grow(e);
                b
            }
        };
        Ok(self.track(b))
    }

    fn density2(&mut self, c: Handle, a1: Handle, a2: Handle, d: Handle) -> Result<Handle> {
        let args = |t: &Self| [c, a1, a2, d].map(|h| t.el(h));
        let [ec, e1, e2, ed] = args(self);
        let b = match find_density2(&self.alg, ec, e1, e2, ed) {
            Some(b) => b,
            None => {
                self.compact();
                let [ec, e1, e2, ed] = args(self);
                let (e, b) = density2_witness(&self.alg, ec, e1, e2, ed)?;
                self.grow(e);
                b
            }
        };
        Ok(self.track(b))
    }

    fn join_irreducibles_in(&self, span: &[usize]) -> Vec<usize> {
        let l = &self.alg;
        span.iter()
            .copied()
            .filter(|&g| g != 0 && span.iter().all(|&a| matches!(l.diff(g, a), d if d == 0 || d == g)))
            .collect()
    }

    fn meet_in(&self, span: &[usize], a: usize, b: usize) -> usize {
        let l = &self.alg;
        l.join_all(span.iter().copied().filter(|&c| l.leq(c, a) && l.leq(c, b)))
    }

    /// Longest chain of join-irreducibles of `span` below `top` and not below
    /// `floor`.
    fn chain_length(&self, span: &[usize], top: usize, floor: usize) -> usize {
        let l = &self.alg;
        let ks: Vec<usize> = self
            .join_irreducibles_in(span)
            .into_iter()
            .filter(|&k| l.leq(k, top) && !l.leq(k, floor))
            .collect();
        // Bottom-up: sorted by number of chain members below.
        let rank: Vec<usize> = ks.iter().map(|&k| ks.iter().filter(|&&j| l.leq(j, k)).count()).collect();
        let mut order: Vec<usize> = (0..ks.len()).collect();
        order.sort_by_key(|&i| rank[i]);
        let ks: Vec<usize> = order.into_iter().map(|i| ks[i]).collect();
        let mut height = vec![0; ks.len()];
        for i in 0..ks.len() {
            height[i] = 1 + (0..i).filter(|&j| l.lt(ks[j], ks[i])).map(|j| height[j]).max().unwrap_or(0);
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// `n1 + n2` for the signature `(h1, h2, g)` of the subalgebra `span`.
    fn measure(&self, span: &[usize], h1: usize, h2: usize) -> usize {
        let m = self.meet_in(span, h1, h2);
        self.chain_length(span, h1, m) + self.chain_length(span, h2, m)
    }

    /// A primitive couple over the subalgebra generated by `base` inducing
    /// `(h1, h2, g)`, by induction on `n1 + n2`. Returns the couple and the
    /// deepest level reached.
    fn second(&mut self, base: &[Handle], h1: Handle, h2: Handle, g: Handle, level: usize) -> Result<(Handle, Handle, usize)> {
        let span = self.span(base);
        let n = self.measure(&span, self.el(h1), self.el(h2));
        if n == 0 {
            let (x1, x2) = self.split(g, h1, h1)?;
            return Ok((x1, x2, level));
        }
        let (y1, y2) = self.split(g, h1, h2)?;
        let mut wider = base.to_vec();
        wider.extend([y1, y2]);
        let span = self.span(&wider);
        let (e1, e2) = (self.el(h1), self.el(h2));
        let m1 = self.meet_in(&span, e2, self.el(y1));
        let m2 = self.meet_in(&span, e1, self.el(y2));
        let (m1, m2) = (self.track(m1), self.track(m2));
        let recurse = |t: &mut Self, a: Handle, b: Handle, top: Handle| -> Result<(Handle, Handle, usize)> {
            let inner = t.measure(&span, t.el(a), t.el(b));
            assert!(inner < n, "the induction measure must drop ({inner} >= {n})");
            t.second(&wider, a, b, top, level + 1)
        };
        let le = |a, b| self.alg.leq(a, b);
        match (le(e1, e2), le(e2, e1)) {
            (false, false) => {
                let (y11, y12, d1) = recurse(self, h1, m1, y1)?;
                let (y21, y22, d2) = recurse(self, m2, h2, y2)?;
                Ok((self.join(y11, y21), self.join(y12, y22), d1.max(d2)))
            }
            (true, false) => {
                let (y11, y12, d) = recurse(self, h1, m1, y1)?;
                Ok((y11, self.join(y12, y2), d))
            }
            (false, true) => {
                let (y21, y22, d) = recurse(self, m2, h2, y2)?;
                Ok((self.join(y21, y1), y22, d))
            }
            (true, true) => unreachable!("h1 = h2 gives n = 0"),
        }
    }

    /// Runs [`Tower::second`] from the top and checks the depth bound.
    fn second_bounded(&mut self, base: &[Handle], h1: Handle, h2: Handle, g: Handle) -> Result<(Handle, Handle, usize, usize)> {
        let span = self.span(base);
        let n = self.measure(&span, self.el(h1), self.el(h2));
        let (x1, x2, depth) = self.second(base, h1, h2, g, 0)?;
        assert!(depth <= n, "recursion depth {depth} exceeds n = {n}");
        Ok((x1, x2, depth, n))
    }

    /// A primitive element over the subalgebra generated by `base` inducing
    /// `(h, gs)`, by induction on `#gs`.
    fn first(&mut self, base: &[Handle], h: Handle, gs: &[Handle]) -> Result<Handle> {
        let Some((&gk, rest)) = gs.split_last() else {
            let top = *self.span(base).last().expect("0 is always present");
            let top = self.track(top);
            let m = self.density1(top)?;
            let mut with_m = base.to_vec();
            with_m.push(m);
            let (x1, _, _, _) = self.second_bounded(&with_m, h, top, m)?;
            return Ok(x1);
        };
        let y = self.first(base, h, rest)?;
        let mut with_y = base.to_vec();
        with_y.push(y);
        let span = self.span(&with_y);
        let egk = self.el(gk);
        let pred = self.alg.join_all(span.iter().copied().filter(|&c| self.alg.lt(c, egk)));
        let pred = self.track(pred);
        let (gk1, _, _, _) = self.second_bounded(&with_y, h, pred, gk)?;
        let ji0 = self.join_irreducibles_in(&self.span(base));
        let tops: Vec<usize> = gs.iter().map(|&g| self.el(g)).collect();
        let d = self.alg.join_all(ji0.into_iter().filter(|&b| tops.iter().all(|&g| !self.alg.leq(g, b))));
        let d = self.track(d);
        self.density2(h, y, gk1, d)
    }
}

/// Realizes `s` over `l0` using only Splitting and Density witnesses.
///
/// Each axiom instance the construction needs is first looked up in the
/// current algebra; only when it has no witness is the algebra extended by
/// the matching `*_witness` step.
pub fn realize_signature_via_axioms(l0: &FinCbs, s: &Signature) -> Result<Realization> {
    s.check(l0)?;
    let mut t = Tower::new(l0);
    let base: Vec<Handle> = (0..l0.len()).collect();
    let (generators, depth, bound) = match s {
        Signature::First { h, g } => {
            let x = t.first(&base, *h, g)?;
            (vec![x], g.len(), g.len())
        }
        &Signature::Second { h1, h2, g } => {
            let (x1, x2, depth, n) = t.second_bounded(&base, h1, h2, g)?;
            (vec![x1, x2], depth, n)
        }
    };
    t.compact();
    let embed = CbsMorphism::new(l0.clone(), t.alg.clone(), t.live[..l0.len()].to_vec())?;
    let generators = match generators[..] {
        [x] => Generators::First(t.el(x)),
        [x1, x2] => Generators::Second(t.el(x1), t.el(x2)),
        _ => unreachable!(),
    };
    Ok(Realization { tower: t.steps, embed, generators, depth, bound })
}

/// Finite witnesses against properties that no existentially closed CBS has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemoRequest {
    /// Split a join-irreducible `g` into two smaller nonzero parts.
    KillJoinIrreducible { g: usize },
    /// Show that a common lower bound `c` of incomparable `a`, `b` is not
    /// their meet.
    DefeatMeet { a: usize, b: usize, c: usize },
    /// Put an element strictly above the top.
    ExceedTop,
}

#[derive(Debug, Clone)]
pub struct Demo {
    pub extension: Extension,
    /// The new elements: `g1, g2`, or `x`, or the element above the top.
    pub witnesses: Vec<usize>,
    pub certificate: Vec<Check>,
}

pub fn ec_demo_witnesses(l0: &FinCbs, request: DemoRequest) -> Result<Demo> {
    match request {
        DemoRequest::KillJoinIrreducible { g } => {
            in_range(l0, &[g])?;
            if !l0.is_join_irreducible(g) {
                return Err(Error::BadRequest(format!("{g} is not join-irreducible")));
            }
            let (extension, g1, g2) = splitting_witness(l0, g, 0, 0)?;
            let l = extension.ext();
            let eg = extension.embed.apply(g);
            let certificate = vec![
                check("g = g1 v g2", l.join(g1, g2) == eg),
                check("g1 != 0", g1 != 0),
                check("g2 != 0", g2 != 0),
                check("g1 != g", g1 != eg),
                check("g2 != g", g2 != eg),
            ];
            Ok(Demo { extension, witnesses: vec![g1, g2], certificate })
        }
        DemoRequest::DefeatMeet { a, b, c } => {
            in_range(l0, &[a, b, c])?;
            if l0.leq(a, b) || l0.leq(b, a) {
                return Err(Error::BadRequest(format!("{a} and {b} are comparable")));
            }
            if !l0.leq(c, a) || !l0.leq(c, b) {
                return Err(Error::BadRequest(format!("{c} is not below both {a} and {b}")));
            }
            let pick = |x: usize, y: usize| l0.ji_components(x).into_iter().find(|&g| !l0.leq(g, y));
            let (g1, g2) = (pick(a, b).expect("a is not below b"), pick(b, a).expect("b is not below a"));
            let m = build_extension(l0, &Signature::first(0, vec![g1, g2]))?;
            let Generators::First(x) = m.generators else { unreachable!() };
            let extension = m.extension;
            let l = extension.ext();
            let [a, b, c] = [a, b, c].map(|v| extension.embed.apply(v));
            let cx = l.join(c, x);
            let certificate = vec![
                check("x is new", !extension.embed.map.contains(&x)),
                check("c < c v x", l.lt(c, cx)),
                check("c v x <= a", l.leq(cx, a)),
                check("c v x <= b", l.leq(cx, b)),
            ];
            Ok(Demo { extension, witnesses: vec![x], certificate })
        }
        DemoRequest::ExceedTop => {
            let (extension, b) = density1_witness(l0, l0.top())?;
            let top = extension.embed.apply(l0.top());
            let certificate = vec![check("top < b", extension.ext().lt(top, b))];
            Ok(Demo { extension, witnesses: vec![b], certificate })
        }
    }
}
