//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: sums and differences of products, `^` with a non-negative integer
//! exponent, optional `*`, parentheses, integer literals and division by
//! nonzero constants (so `1/3` is a rational literal). Identifiers are ring
//! variables or field parameters such as `t` and `eps`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{PolyRing, Polynomial, RingHandle};
use crate::error::{Error, Result};
use crate::scalars::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str, line0: usize) -> Result<Lexer> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (line0, 1);
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let j = chars[i..].iter().position(|ch| !ch.is_ascii_digit()).map_or(chars.len(), |p| i + p);
            let s: String = chars[i..j].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), start.0, start.1));
            col += j - i;
            i = j;
        } else if c.is_ascii_alphabetic() {
            let j = chars[i..]
                .iter()
                .position(|ch| !(ch.is_ascii_alphanumeric() || *ch == '_'))
                .map_or(chars.len(), |p| i + p);
            toks.push((Tok::Ident(chars[i..j].iter().collect()), start.0, start.1));
            col += j - i;
            i = j;
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Sym(c), start.0, start.1));
            i += 1;
            col += 1;
        } else {
            return Err(Error::Syntax { line, col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(Lexer { toks })
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
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

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Syntax {
                            line: at.0,
                            col: at.1,
                            msg: "division by a non-constant or zero".into(),
                        });
                    }
                    let inv = self.ring.field().inv(&d.constant_term()).map_err(|e| Error::Syntax {
                        line: at.0,
                        col: at.1,
                        msg: e.to_string(),
                    })?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e = n.to_u32().filter(|e| *e <= 10_000);
                    match e {
                        Some(e) => {
                            self.pos += 1;
                            Ok(base.pow(e))
                        }
                        None => self.err("exponent too large"),
                    }
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Ok(i) = self.ring.index_of(&name) {
                    Ok(self.ring.var(i))
                } else if let Some(c) = self.ring.field().parameter(&name) {
                    Ok(self.ring.constant(c))
                } else {
                    Err(Error::UnknownVariable(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses text at a given starting line (used for error positions in files).
pub(crate) fn parse_at<F: Field>(ring: &Arc<PolyRing<F>>, text: &str, line: usize) -> Result<Polynomial<F>> {
    let lexer = lex(text, line)?;
    let last_line = line + text.matches('\n').count();
    let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    let mut p = Parser { ring, toks: lexer.toks, pos: 0, end: (last_line, last_col) };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Polynomial<F>> {
    parse_at(ring, text, 1)
}

/// Parses one polynomial per non-empty line; `#` starts a comment.
pub fn parse_polynomials<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Vec<Polynomial<F>>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_at(ring, l, i + 1))
        .collect()
}
