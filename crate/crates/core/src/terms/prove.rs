//! Deciding equations between terms.
//!
//! An equation holds in every CBS iff its order dual holds in every
//! Brouwerian semilattice, and those are the algebras of the `{->, ^, T}`
//! fragment of intuitionistic logic. So `s = t` is decided by translating
//! (`0` to `T`, `v` to `^`, `a - b` to `b -> a`) and proving both
//! implications in a contraction-free sequent calculus, which terminates
//! without loop checks.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{eval_term, Term};
use crate::catalog::algebras;
use crate::FinCbs;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Atom(usize),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// The Brouwerian reading of a term.
    pub fn from_term(t: &Term) -> Formula {
        match t {
            Term::Zero => Formula::Top,
            Term::Var(k) => Formula::Atom(*k),
            Term::Join(a, b) => Formula::and(Self::from_term(a), Self::from_term(b)),
            Term::Diff(a, b) => Formula::imp(Self::from_term(b), Self::from_term(a)),
        }
    }
}

/// Sequent `gamma => goal` with memoized results.
#[derive(Default)]
struct Prover {
    memo: BTreeMap<(Vec<Formula>, Formula), bool>,
}

impl Prover {
    fn prove(&mut self, gamma: Vec<Formula>, goal: Formula) -> bool {
        match goal {
            Formula::Top => true,
            Formula::And(a, b) => self.prove(gamma.clone(), *a) && self.prove(gamma, *b),
            Formula::Imp(a, b) => {
                let mut gamma = gamma;
                gamma.push(*a);
                self.prove(gamma, *b)
            }
            Formula::Atom(p) => {
                let gamma = saturate(gamma);
                let key = (gamma, Formula::Atom(p));
                if let Some(&known) = self.memo.get(&key) {
                    return known;
                }
                let result = self.prove_atom(&key.0, p);
                self.memo.insert(key, result);
                result
            }
        }
    }

    /// Left rules on a saturated context; the only remaining choice is
    /// which `(a -> b) -> d` to decompose.
    fn prove_atom(&mut self, gamma: &[Formula], p: usize) -> bool {
        if gamma.contains(&Formula::Atom(p)) {
            return true;
        }
        for (i, f) in gamma.iter().enumerate() {
            let Formula::Imp(ab, d) = f else { continue };
            let Formula::Imp(a, b) = &**ab else { continue };
            let mut rest: Vec<Formula> = gamma.to_vec();
            rest.remove(i);
            let mut left = rest.clone();
            left.push(Formula::imp((**b).clone(), (**d).clone()));
            if !self.prove(left, Formula::imp((**a).clone(), (**b).clone())) {
                continue;
            }
            let mut right = rest;
            right.push((**d).clone());
            if self.prove(right, Formula::Atom(p)) {
                return true;
            }
        }
        false
    }
}

/// Applies the invertible left rules until none fires; the result is
/// sorted and without duplicates.
fn saturate(mut gamma: Vec<Formula>) -> Vec<Formula> {
    loop {
        gamma.sort();
        gamma.dedup();
        let atoms: Vec<usize> = gamma
            .iter()
            .filter_map(|f| match f {
                Formula::Atom(p) => Some(*p),
                _ => None,
            })
            .collect();
        let pos = gamma.iter().position(|f| match f {
            Formula::Top | Formula::And(..) => true,
            Formula::Imp(a, _) => match &**a {
                Formula::Top | Formula::And(..) => true,
                Formula::Atom(p) => atoms.contains(p),
                Formula::Imp(..) => false,
            },
            Formula::Atom(_) => false,
        });
        let Some(i) = pos else { return gamma };
        match gamma.swap_remove(i) {
            Formula::Top => {}
            Formula::And(a, b) => gamma.extend([*a, *b]),
            Formula::Imp(a, d) => match *a {
                Formula::Top | Formula::Atom(_) => gamma.push(*d),
                Formula::And(a, b) => gamma.push(Formula::imp(*a, Formula::imp(*b, *d))),
                Formula::Imp(..) => unreachable!(),
            },
            Formula::Atom(_) => unreachable!(),
        }
    }
}

/// Whether `s <= t` holds in every CBS.
fn below(prover: &mut Prover, s: &Term, t: &Term) -> bool {
    // s <= t in the CBS order is t' <= s' in the Brouwerian one.
    prover.prove(alloc::vec![Formula::from_term(t)], Formula::from_term(s))
}

/// An assignment under which two terms differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub algebra: FinCbs,
    pub assignment: Vec<usize>,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub equal: bool,
    /// Only searched for when `equal` is false, in the catalog algebras
    /// with at most 8 elements.
    pub countermodel: Option<Countermodel>,
}

/// Decides whether `s = t` holds in every CBS. Variables must be below
/// `arity`.
pub fn terms_equal(s: &Term, t: &Term, arity: usize) -> Equality {
    let mut prover = Prover::default();
    let equal = below(&mut prover, s, t) && below(&mut prover, t, s);
    let countermodel = if equal { None } else { find_countermodel(s, t, arity, 8) };
    Equality { equal, countermodel }
}

/// First assignment in the catalog algebras up to `max_size` elements
/// that separates `s` and `t`.
pub fn find_countermodel(s: &Term, t: &Term, arity: usize, max_size: usize) -> Option<Countermodel> {
    let arity = arity.max(s.arity()).max(t.arity());
    for algebra in algebras(max_size) {
        let n = algebra.len();
        let Some(total) = n.checked_pow(arity as u32) else { continue };
        for code in 0..total {
            let assignment: Vec<usize> = (0..arity).map(|k| code / n.pow(k as u32) % n).collect();
            let left = eval_term(&algebra, s, &assignment).expect("variables are bound");
            let right = eval_term(&algebra, t, &assignment).expect("variables are bound");
            if left != right {
                return Some(Countermodel { algebra, assignment, left, right });
            }
        }
    }
    None
}

/// Proof memo shared across many equality checks.
#[derive(Default)]
pub(crate) struct ProofCache(Prover);

pub(crate) fn term_equal_cached(cache: &mut ProofCache, s: &Term, t: &Term) -> bool {
    below(&mut cache.0, s, t) && below(&mut cache.0, t, s)
}

/// Whether `s <= t` holds in every CBS, i.e. `s - t = 0`.
pub fn term_below(s: &Term, t: &Term) -> bool {
    below(&mut Prover::default(), s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;
    use crate::terms::tests::arb_term;
    use proptest::prelude::*;

    fn eq(a: &str, b: &str) -> Equality {
        terms_equal(&parse_term(a).unwrap(), &parse_term(b).unwrap(), 3)
    }

    #[test]
    fn examples() {
        assert!(eq("x0 - (x1 v x2)", "(x0 - x1) - x2").equal);
        assert!(eq("(x0 - x1) - x2", "(x0 - x2) - x1").equal);
        let r = eq("x0", "x0 - x1");
        assert!(!r.equal);
        let c = r.countermodel.unwrap();
        assert_eq!(c.algebra, FinCbs::chain(2));
        assert_eq!(&c.assignment[..2], &[1, 1]);
        assert_eq!((c.left, c.right), (1, 0));
    }

    #[test]
    fn simple_facts() {
        for (a, b) in [
            ("0 - x0", "0"),
            ("x0 - 0", "x0"),
            ("(x0 - x1) v x1", "x0 v x1"),
            ("(x0 - x1) v x0", "x0"),
            ("(x0 - x1) v (x0 - (x0 - x1))", "x0"),
            ("x0 - (x0 - (x0 - x1))", "x0 - x1"),
            ("(x0 v x1 v x2) - x0", "(x0 - x0) v (x1 - x0) v (x2 - x0)"),
        ] {
            assert!(eq(a, b).equal, "{a} = {b}");
        }
        assert!(!eq("x0 - (x0 - x1)", "x1").equal);
        // Relative meets are not symmetric, unlike in Boolean algebras.
        let r = eq("x0 - (x0 - x1)", "x1 - (x1 - x0)");
        assert!(!r.equal);
        assert_eq!(r.countermodel.unwrap().algebra.len(), 3);
    }

    #[test]
    fn order() {
        let t = |s| parse_term(s).unwrap();
        assert!(term_below(&t("x0 - x1"), &t("x0")));
        assert!(!term_below(&t("x0"), &t("x0 - x1")));
        assert!(term_below(&t("0"), &t("x1")));
    }

    proptest! {
        #[test]
        fn agrees_with_tables(s in arb_term(2), t in arb_term(2)) {
            let r = terms_equal(&s, &t, 2);
            prop_assert!(terms_equal(&s, &s, 2).equal);
            prop_assert_eq!(terms_equal(&t, &s, 2).equal, r.equal);
            match (r.equal, r.countermodel) {
                (true, _) => {
                    // Two-generated algebras embed in products of algebras
                    // with at most 3 elements.
                    prop_assert!(find_countermodel(&s, &t, 2, 5).is_none());
                }
                (false, Some(c)) => {
                    prop_assert_eq!(eval_term(&c.algebra, &s, &c.assignment).unwrap(), c.left);
                    prop_assert_eq!(eval_term(&c.algebra, &t, &c.assignment).unwrap(), c.right);
                    prop_assert_ne!(c.left, c.right);
                }
                (false, None) => prop_assert!(false, "two-variable inequations have small countermodels"),
            }
        }
    }
}
