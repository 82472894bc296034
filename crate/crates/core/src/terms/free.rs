//! Free algebras on at most two generators.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::prove::term_equal_cached;
use super::{eval_term, normalize_term, Term};
use crate::catalog::algebras;
use crate::{Error, FinCbs, Result};

/// Closure rounds allowed before giving up. Two generators need 4.
pub const FREE_ITERATION_CAP: usize = 32;

#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    pub algebra: FinCbs,
    /// The element of each generator `x0, x1, ..`.
    pub generators: Vec<usize>,
    /// A smallest term for each element.
    pub representatives: Vec<Term>,
}

/// Values of a term under every assignment into the algebras with at most
/// 3 elements. Equal terms have equal fingerprints; the converse holds for
/// two generators but is confirmed by the prover anyway.
struct Fingerprints {
    battery: Vec<FinCbs>,
    arity: usize,
}

impl Fingerprints {
    fn of(&self, t: &Term) -> Vec<u8> {
        let mut out = Vec::new();
        for l in &self.battery {
            let n = l.len();
            for code in 0..n.pow(self.arity as u32) {
                let env: Vec<usize> = (0..self.arity).map(|k| code / n.pow(k as u32) % n).collect();
                out.push(eval_term(l, t, &env).expect("variables are bound") as u8);
            }
        }
        out
    }
}

struct Classes {
    prints: Fingerprints,
    reps: Vec<Term>,
    keys: Vec<Vec<u8>>,
    cache: super::prove::ProofCache,
}

impl Classes {
    fn find(&mut self, t: &Term, key: &[u8]) -> Option<usize> {
        (0..self.reps.len()).find(|&i| self.keys[i] == key && term_equal_cached(&mut self.cache, &self.reps[i], t))
    }

    /// Adds `t` as a new class unless it already has one; keeps the
    /// smallest representative.
    fn insert(&mut self, t: Term) -> bool {
        let key = self.prints.of(&t);
        match self.find(&t, &key) {
            Some(i) => {
                if rank(&t) < rank(&self.reps[i]) {
                    self.reps[i] = t;
                }
                false
            }
            None => {
                self.reps.push(t);
                self.keys.push(key);
                true
            }
        }
    }

    fn class_of(&mut self, t: &Term) -> usize {
        let key = self.prints.of(t);
        self.find(t, &key).expect("the classes are closed under the operations")
    }
}

/// Smaller terms first, then by normal form, then by spelling.
fn rank(t: &Term) -> (usize, String, String) {
    (t.size(), normalize_term(t).to_string(), t.to_string())
}

/// The free CBS on `n <= 2` generators, built by closing `{0, x0, ..}`
/// under join and difference up to provable equality.
pub fn free_cbs(n: usize) -> Result<FreeAlgebra> {
    free_cbs_with_cap(n, FREE_ITERATION_CAP)
}

pub fn free_cbs_with_cap(n: usize, cap: usize) -> Result<FreeAlgebra> {
    if n > 2 {
        return Err(Error::ArityTooLarge(n));
    }
    let mut classes = Classes {
        prints: Fingerprints { battery: algebras(3), arity: n },
        reps: Vec::new(),
        keys: Vec::new(),
        cache: Default::default(),
    };
    classes.insert(Term::Zero);
    for k in 0..n {
        classes.insert(Term::Var(k));
    }
    let mut fresh = 0;
    let mut rounds = 0;
    loop {
        let len = classes.reps.len();
        let mut candidates = Vec::new();
        for i in 0..len {
            for j in 0..len {
                if i >= fresh || j >= fresh {
                    let (a, b) = (classes.reps[i].clone(), classes.reps[j].clone());
                    candidates.push(Term::join(a.clone(), b.clone()));
                    candidates.push(Term::diff(a, b));
                }
            }
        }
        candidates.sort_by_cached_key(rank);
        let mut grew = false;
        for t in candidates {
            grew |= classes.insert(t);
        }
        if !grew {
            break;
        }
        rounds += 1;
        if rounds >= cap {
            return Err(Error::IterationCap(cap));
        }
        fresh = len;
    }
    let size = classes.reps.len();
    let reps = classes.reps.clone();
    let mut join = Vec::with_capacity(size * size);
    let mut diff = Vec::with_capacity(size * size);
    for a in &reps {
        for b in &reps {
            join.push(classes.class_of(&Term::join(a.clone(), b.clone())));
            diff.push(classes.class_of(&Term::diff(a.clone(), b.clone())));
        }
    }
    let algebra = FinCbs::new(size, 0, &join, &diff)?;
    let generators = (0..n).map(|k| classes.class_of(&Term::Var(k))).collect();
    Ok(FreeAlgebra { algebra, generators, representatives: reps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{cbs_to_poset, poset_to_cbs};
    use crate::iso::are_isomorphic;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = (0..=2).map(|n| free_cbs(n).unwrap().algebra.len()).collect();
        assert_eq!(sizes, [1, 2, 18]);
        assert_eq!(free_cbs(3).unwrap_err(), Error::ArityTooLarge(3));
        assert_eq!(free_cbs_with_cap(2, 1).unwrap_err(), Error::IterationCap(1));
    }

    #[test]
    fn universal_property() {
        let f = free_cbs(2).unwrap();
        let l = &f.algebra;
        // Every assignment of the generators extends to a morphism: the
        // representatives evaluate consistently with the tables.
        for target in algebras(6) {
            let m = target.len();
            for code in 0..m * m {
                let env = [code % m, code / m];
                let map: Vec<usize> = f.representatives.iter().map(|t| eval_term(&target, t, &env).unwrap()).collect();
                let h = crate::cbs::CbsMorphism::new(l.clone(), target.clone(), map).unwrap();
                assert_eq!(h.apply(f.generators[0]), env[0]);
                assert_eq!(h.apply(f.generators[1]), env[1]);
            }
        }
        let (p, _) = cbs_to_poset(l);
        let (back, _) = poset_to_cbs(&p, 100).unwrap();
        assert!(are_isomorphic(&cbs_to_poset(&back).0, &p));
        let again = free_cbs(2).unwrap();
        assert_eq!(again.algebra, f.algebra);
        assert_eq!(again.representatives, f.representatives);
    }
}
