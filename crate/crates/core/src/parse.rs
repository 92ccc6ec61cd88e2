//! Expression parser for polynomials and rational functions.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are ring variables or the field generator. Juxtaposition
//! (`2x`, `x y`) is rejected. Polynomials may only be divided by nonzero
//! constants.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Polynomial, Ring};
use crate::ratfun::RationalFunction;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
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
            if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                return Err(Error::parse(i, "implicit multiplication is not allowed; use `*`"));
            }
            let n: BigInt = text[start..i].parse().unwrap();
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Ring<F>,
}

type Rf<F> = RationalFunction<F>;

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Rf<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Rf<F>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?)?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::parse(at, "division by zero"));
                }
                acc = acc.div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Rf<F>> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Rf<F>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e: u32 = u32::try_from(&n)
                    .ok()
                    .filter(|e| *e <= crate::monomial::MAX_EXPONENT)
                    .ok_or(Error::ExponentOverflow)?;
                if self.peek() == Some(&Tok::Op('^')) {
                    return Err(Error::parse(self.offset(), "chained `^` is ambiguous; add parentheses"));
                }
                Ok(base.pow(e))
            }
            _ => Err(Error::parse(at, "exponent must be a nonnegative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<Rf<F>> {
        let at = self.offset();
        let tok = self.toks.get(self.pos).map(|(_, t)| t.clone());
        let field = self.ring.field();
        let out = match tok {
            None => return Err(Error::parse(at, "unexpected end of input")),
            Some(Tok::Int(n)) => Polynomial::constant(self.ring, field.from_bigint(&n)),
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Polynomial::var(self.ring, i)
                } else if let Some((_, v)) = field.generator().filter(|(g, _)| *g == name) {
                    Polynomial::constant(self.ring, v)
                } else {
                    return Err(Error::UnknownVariable(name));
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.offset(), "expected `)`"));
                }
                return self.check_juxtaposition(inner);
            }
            Some(Tok::Op(c)) => return Err(Error::parse(at, format!("unexpected `{c}`"))),
        };
        self.pos += 1;
        self.check_juxtaposition(RationalFunction::from_polynomial(out))
    }

    fn check_juxtaposition(&self, v: Rf<F>) -> Result<Rf<F>> {
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                Err(Error::parse(self.offset(), "implicit multiplication is not allowed; use `*`"))
            }
            _ => Ok(v),
        }
    }
}

pub fn parse_rational_function<F: Field>(text: &str, ring: &Ring<F>) -> Result<RationalFunction<F>> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "unexpected trailing input"));
    }
    Ok(v)
}

/// Parses a polynomial; division is allowed only by nonzero constants.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>> {
    parse_rational_function(text, ring)?
        .into_polynomial()
        .ok_or_else(|| Error::parse(0, format!("`{text}` is not a polynomial")))
}
