//! Terms over `{0, v, -}`.
//!
//! Concrete syntax: `0`, variables `x0`, `x1`, .., joins `s v t` and
//! differences `s - t`. Join binds tighter than difference and both
//! associate to the left, so `x0 - x1 v x2 - x3` is `(x0 - (x1 v x2)) - x3`.

mod free;
mod parse;
mod prove;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, FinCbs, Result};

pub use free::{free_cbs, free_cbs_with_cap, FreeAlgebra, FREE_ITERATION_CAP};
pub use parse::{parse_brouwerian_term, parse_term};
pub use prove::{find_countermodel, term_below, terms_equal, Countermodel, Equality, Formula};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    Var(usize),
    Join(Box<Term>, Box<Term>),
    Diff(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(k: usize) -> Term {
        Term::Var(k)
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn diff(a: Term, b: Term) -> Term {
        Term::Diff(Box::new(a), Box::new(b))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 1,
            Term::Join(a, b) | Term::Diff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// One more than the largest variable index, or 0 without variables.
    pub fn arity(&self) -> usize {
        match self {
            Term::Zero => 0,
            Term::Var(k) => k + 1,
            Term::Join(a, b) | Term::Diff(a, b) => a.arity().max(b.arity()),
        }
    }

    /// Prints in the dual Brouwerian syntax: `1`, `^` and `->`, with
    /// `s - t` written `t -> s`.
    pub fn to_brouwerian(&self) -> BrouwerianDisplay<'_> {
        BrouwerianDisplay(self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => f.write_str("0"),
            Term::Var(k) => write!(f, "x{k}"),
            Term::Join(a, b) => {
                // Differences bind looser than joins; a right-nested join
                // needs parentheses to keep its shape.
                let wrap_a = matches!(**a, Term::Diff(..));
                let wrap_b = matches!(**b, Term::Diff(..) | Term::Join(..));
                write_wrapped(f, a, wrap_a)?;
                f.write_str(" v ")?;
                write_wrapped(f, b, wrap_b)
            }
            Term::Diff(a, b) => {
                write!(f, "{a} - ")?;
                write_wrapped(f, b, matches!(**b, Term::Diff(..)))
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, t: &Term, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

pub struct BrouwerianDisplay<'a>(&'a Term);

impl fmt::Display for BrouwerianDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Term, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
            if wrap {
                f.write_str("(")?;
                go(t, f, false)?;
                return f.write_str(")");
            }
            match t {
                Term::Zero => f.write_str("1"),
                Term::Var(k) => write!(f, "x{k}"),
                Term::Join(a, b) => {
                    go(a, f, matches!(**a, Term::Diff(..)))?;
                    f.write_str(" ^ ")?;
                    go(b, f, matches!(**b, Term::Diff(..) | Term::Join(..)))
                }
                Term::Diff(a, b) => {
                    // `->` associates to the right.
                    go(b, f, matches!(**b, Term::Diff(..)))?;
                    f.write_str(" -> ")?;
                    go(a, f, false)
                }
            }
        }
        go(self.0, f, false)
    }
}

/// Identities valid in every CBS, as `(lhs, rhs)` in term syntax. The
/// monotonicity laws `b <= c => b - a <= c - a, a - c <= a - b` appear with
/// `c` instantiated as `b v c`, and `s <= t` as `s - t = 0`.
pub const SIMPLE_IDENTITIES: &[(&str, &str)] = &[
    ("0 - x0", "0"),
    ("x0 - 0", "x0"),
    ("(x0 - x1) v x1", "x0 v x1"),
    ("(x0 - x1) v x0", "x0"),
    ("(x0 - x1) v (x0 - (x0 - x1))", "x0"),
    ("x0 - (x0 - (x0 - x1))", "x0 - x1"),
    ("(x0 v x1) - x2", "(x0 - x2) v (x1 - x2)"),
    ("(x0 v x1 v x2) - x3", "(x0 - x3) v (x1 - x3) v (x2 - x3)"),
    ("x0 - (x1 v x2)", "x0 - x1 - x2"),
    ("x0 - (x1 v x2 v x3)", "x0 - x1 - x2 - x3"),
    ("x0 - x1 - x2", "x0 - x2 - x1"),
    ("(x1 - x0) - ((x1 v x2) - x0)", "0"),
    ("(x0 - (x1 v x2)) - (x0 - x1)", "0"),
];

/// Evaluates `t` in `l` with `xk` bound to `env[k]`.
pub fn eval_term(l: &FinCbs, t: &Term, env: &[usize]) -> Result<usize> {
    Ok(match t {
        Term::Zero => 0,
        Term::Var(k) => {
            let &v = env.get(*k).ok_or(Error::UnboundVariable(*k))?;
            if v >= l.len() {
                return Err(Error::IndexOutOfRange { index: v, len: l.len() });
            }
            v
        }
        Term::Join(a, b) => l.join(eval_term(l, a, env)?, eval_term(l, b, env)?),
        Term::Diff(a, b) => l.diff(eval_term(l, a, env)?, eval_term(l, b, env)?),
    })
}

/// Rewrites `t` into a join of difference-only terms using
/// `(a v b) - c = (a - c) v (b - c)`, `c - (a v b) = (c - a) - b`,
/// `c - 0 = c` and `0 - c = 0`. The result is `0` or has no `0` at all.
pub fn normalize_term(t: &Term) -> Term {
    disjuncts(t)
        .into_iter()
        .reduce(Term::join)
        .unwrap_or(Term::Zero)
}

fn disjuncts(t: &Term) -> Vec<Term> {
    match t {
        Term::Zero => Vec::new(),
        Term::Var(k) => alloc::vec![Term::Var(*k)],
        Term::Join(a, b) => {
            let mut out = disjuncts(a);
            out.extend(disjuncts(b));
            out
        }
        Term::Diff(a, b) => {
            let subtract = disjuncts(b);
            disjuncts(a)
                .into_iter()
                .map(|d| subtract.iter().cloned().fold(d, Term::diff))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::algebras;
    use crate::cbs::tests::diamond;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn evaluation() {
        let d = diamond();
        assert_eq!(eval_term(&d, &t("x0 v x1"), &[1, 2]).unwrap(), 3);
        assert_eq!(eval_term(&d, &t("(x0 v x1) - x0"), &[1, 2]).unwrap(), 2);
        for a in d.elements() {
            assert_eq!(eval_term(&d, &t("x0 - x0"), &[a]).unwrap(), 0);
        }
        assert_eq!(eval_term(&d, &t("x1"), &[0]), Err(Error::UnboundVariable(1)));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(normalize_term(&t("(x0 v x1) - x2")), t("(x0 - x2) v (x1 - x2)"));
        assert_eq!(normalize_term(&t("x0 - 0")), t("x0"));
        assert_eq!(normalize_term(&t("x0 - (x1 v x2)")), t("x0 - x1 - x2"));
        assert_eq!(normalize_term(&t("0 - x0")), Term::Zero);
    }

    pub(crate) fn arb_term(arity: usize) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![Just(Term::Zero), (0..arity).prop_map(Term::Var)];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Term::diff(a, b)),
            ]
        })
    }

    fn only_diffs(t: &Term) -> bool {
        match t {
            Term::Var(_) => true,
            Term::Diff(a, b) => only_diffs(a) && !matches!(**b, Term::Zero) && no_zero(b),
            _ => false,
        }
    }

    fn no_zero(t: &Term) -> bool {
        match t {
            Term::Zero => false,
            Term::Var(_) => true,
            Term::Join(a, b) | Term::Diff(a, b) => no_zero(a) && no_zero(b),
        }
    }

    fn join_of_diffs(t: &Term) -> bool {
        match t {
            Term::Join(a, b) => join_of_diffs(a) && join_of_diffs(b),
            t => only_diffs(t),
        }
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(term in arb_term(3)) {
            prop_assert_eq!(parse_term(&term.to_string()).unwrap(), term.clone());
            prop_assert_eq!(parse_brouwerian_term(&term.to_brouwerian().to_string()).unwrap(), term);
        }

        #[test]
        fn normalize_preserves_values(term in arb_term(3)) {
            let n = normalize_term(&term);
            prop_assert!(n == Term::Zero || join_of_diffs(&n), "{}", n);
            for l in algebras(5) {
                for k in 0..l.len().pow(3) {
                    let env = [k % l.len(), k / l.len() % l.len(), k / l.len() / l.len()];
                    prop_assert_eq!(eval_term(&l, &term, &env).unwrap(), eval_term(&l, &n, &env).unwrap());
                }
            }
        }
    }

    #[test]
    fn printing() {
        assert_eq!(t("x0 v (x1 - x0)").to_string(), "x0 v (x1 - x0)");
        assert_eq!(t("x0 - (x1 - x2)").to_string(), "x0 - (x1 - x2)");
        assert_eq!(t("x0 - x1 v x2").to_string(), "x0 - x1 v x2");
        assert_eq!(t("x0 - x1").to_brouwerian().to_string(), "x1 -> x0");
        assert_eq!(Term::Zero.to_brouwerian().to_string(), "1");
    }
}
