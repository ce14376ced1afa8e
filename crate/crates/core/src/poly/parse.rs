//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' positive-integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Implicit multiplication (`2x`, `x y`) is rejected. Division is only allowed by
//! nonzero constants, which is what the canonical printer needs for rational
//! coefficients such as `1/2*x`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{Polynomial, Ring};
use super::{PolyError, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(PolyError::Syntax {
                position: i,
                message: format!("unexpected character '{}'", c),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(PolyError::Syntax {
                        position: at,
                        message: "division is only allowed by nonzero constants".into(),
                    });
                }
                let c = d.terms()[0].1.recip();
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) if n.is_positive() => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) => e,
                        Err(_) => return self.syntax("exponent too large"),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.syntax("expected a positive integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.ring.constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.ring.index_of(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(PolyError::UnknownVariable { name, position: at }),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.syntax("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => self.syntax(format!("unexpected '{}'", c)),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses `text` in the ring with the given variables (grevlex order).
pub fn parse_polynomial<S: AsRef<str>>(text: &str, varnames: &[S]) -> Result<Polynomial, PolyError> {
    parse_in_ring(text, &Ring::new(varnames))
}

pub fn parse_in_ring(text: &str, ring: &Ring) -> Result<Polynomial, PolyError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ring,
    };
    let p = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let msg = match parser.peek() {
            Some(Tok::Sym(')')) => "unbalanced ')'".to_string(),
            Some(Tok::Sym(c)) => format!("unexpected '{}'", c),
            _ => "implicit multiplication is not allowed; use '*'".to_string(),
        };
        return parser.syntax(msg);
    }
    Ok(p)
}

/// Distinct identifiers occurring in `text`, in order of first appearance.
pub fn identifiers(text: &str) -> Result<Vec<String>, PolyError> {
    let mut out: Vec<String> = Vec::new();
    for (_, t) in tokenize(text)? {
        if let Tok::Ident(s) = t {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, vars: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: grevlex-sorted terms, signs folded into the separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let canon = self.with_order(MonomialOrder::GrevLex);
        let vars = self.ring().vars();
        for (k, (m, c)) in canon.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str("*")?;
                }
                write_monomial(f, m, vars)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn parses_basic_expressions() {
        let p = parse_polynomial("x*y", &XY).unwrap();
        assert_eq!(p.to_string(), "x*y");
        let p = parse_polynomial("x^2 - y^3", &XY).unwrap();
        assert_eq!(p.to_string(), "-y^3 + x^2");
        let p = parse_polynomial("-(x + 2)^2 / 4", &XY).unwrap();
        assert_eq!(p.to_string(), "-1/4*x^2 - x - 1");
    }

    #[test]
    fn rejects_dangling_operator() {
        let err = parse_polynomial("x + ", &XY).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { position: 4, .. }), "{err:?}");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let err = parse_polynomial("2x", &XY).unwrap_err();
        assert!(matches!(err, PolyError::Syntax { position: 1, .. }), "{err:?}");
        assert!(parse_polynomial("x y", &XY).is_err());
        assert!(parse_polynomial("(x)(y)", &XY).is_err());
    }

    #[test]
    fn rejects_bad_exponents_and_division() {
        assert!(parse_polynomial("x^0", &XY).is_err());
        assert!(parse_polynomial("x^-1", &XY).is_err());
        assert!(parse_polynomial("x^y", &XY).is_err());
        assert!(parse_polynomial("1/x", &XY).is_err());
        assert!(parse_polynomial("x/0", &XY).is_err());
    }

    #[test]
    fn unknown_variable_reports_position() {
        let err = parse_polynomial("x + z", &XY).unwrap_err();
        assert_eq!(
            err,
            PolyError::UnknownVariable {
                name: "z".into(),
                position: 4
            }
        );
    }

    #[test]
    fn identifiers_in_order() {
        assert_eq!(identifiers("y*x + y^2 + T1").unwrap(), vec!["y", "x", "T1"]);
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(parse_polynomial("x - x", &XY).unwrap().to_string(), "0");
        assert_eq!(parse_polynomial("-7/14", &XY).unwrap().to_string(), "-1/2");
    }
}
