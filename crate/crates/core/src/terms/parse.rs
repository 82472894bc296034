use alloc::string::ToString;

use super::Term;
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error<T>(&mut self, expected: &str) -> Result<T> {
        self.skip_ws();
        Err(Error::ParseError { position: self.pos, expected: expected.to_string() })
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(&alloc::format!("'{token}'"))
        }
    }

    fn finish(&mut self, t: Term) -> Result<Term> {
        match self.peek() {
            None => Ok(t),
            Some(_) => self.error("end of input"),
        }
    }

    /// `x<digits>`, with the `x` already consumed.
    fn var_index(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match digits.parse() {
            Ok(k) => Ok(k),
            Err(_) => {
                self.pos = start;
                self.error("variable index")
            }
        }
    }

    fn primary(&mut self, zero: &str, inner: fn(&mut Self) -> Result<Term>) -> Result<Term> {
        if self.eat(zero) {
            Ok(Term::Zero)
        } else if self.eat("x") {
            Ok(Term::Var(self.var_index()?))
        } else if self.eat("(") {
            let t = inner(self)?;
            self.expect(")")?;
            Ok(t)
        } else {
            self.error(&alloc::format!("'{zero}', a variable or '('"))
        }
    }

    // term := atom ('-' atom)*
    fn cbs_term(&mut self) -> Result<Term> {
        let mut t = self.cbs_atom()?;
        while self.peek() == Some(b'-') {
            self.pos += 1;
            t = Term::diff(t, self.cbs_atom()?);
        }
        Ok(t)
    }

    // atom := primary ('v' primary)*
    fn cbs_atom(&mut self) -> Result<Term> {
        let mut t = self.primary("0", Self::cbs_term)?;
        while self.eat("v") {
            t = Term::join(t, self.primary("0", Self::cbs_term)?);
        }
        Ok(t)
    }

    // term := conj ('->' term)?
    fn bs_term(&mut self) -> Result<Term> {
        let lhs = self.bs_conj()?;
        if self.eat("->") {
            let rhs = self.bs_term()?;
            Ok(Term::diff(rhs, lhs))
        } else {
            Ok(lhs)
        }
    }

    // conj := primary ('^' primary)*
    fn bs_conj(&mut self) -> Result<Term> {
        let mut t = self.primary("1", Self::bs_term)?;
        while self.eat("^") {
            t = Term::join(t, self.primary("1", Self::bs_term)?);
        }
        Ok(t)
    }
}

/// Parses the CBS syntax: `0`, `x<k>`, `v` and `-`.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text);
    let t = p.cbs_term()?;
    p.finish(t)
}

/// Parses the Brouwerian syntax (`1`, `x<k>`, `^`, right-associative
/// `->`) into the order-dual term: `1` is `0`, `^` is `v` and `a -> b` is
/// `b - a`.
pub fn parse_brouwerian_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text);
    let t = p.bs_term()?;
    p.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_term("x0 v (x1 - x0)").unwrap(),
            Term::join(Term::Var(0), Term::diff(Term::Var(1), Term::Var(0)))
        );
        assert_eq!(
            parse_term("x0 - x1 - x2").unwrap(),
            Term::diff(Term::diff(Term::Var(0), Term::Var(1)), Term::Var(2))
        );
        assert_eq!(parse_term("  x12-0 ").unwrap(), Term::diff(Term::Var(12), Term::Zero));
        assert!(matches!(parse_term("x0 v"), Err(Error::ParseError { position: 4, .. })));
        assert!(matches!(parse_term("x0 x1"), Err(Error::ParseError { position: 3, .. })));
        assert!(matches!(parse_term("(x0"), Err(Error::ParseError { .. })));
        assert!(matches!(parse_term("x"), Err(Error::ParseError { position: 1, .. })));
    }

    #[test]
    fn brouwerian() {
        assert_eq!(parse_brouwerian_term("x0 -> x1").unwrap(), parse_term("x1 - x0").unwrap());
        assert_eq!(parse_brouwerian_term("x0 -> x1 -> x2").unwrap(), parse_term("x2 - x1 - x0").unwrap());
        assert_eq!(parse_brouwerian_term("x0 ^ 1").unwrap(), parse_term("x0 v 0").unwrap());
        assert!(parse_brouwerian_term("x0 ^").is_err());
    }
}
