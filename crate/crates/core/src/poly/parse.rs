//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: `expr := ['+'|'-'] term (('+'|'-') term)*`,
//! `term := factor (['*'] factor)*`, `factor := atom ['^' int]`,
//! `atom := int | name | '(' expr ')'`. The field generator symbol may appear
//! anywhere a coefficient is expected, e.g. `(g+1)*x1^2`.

use std::sync::Arc;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::ff::Fe;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Int(s), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Name(s), pos));
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            Some(Tok::Plus) => self.at += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.at += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let pos = self.pos();
            match self.toks.get(self.at) {
                Some((Tok::Int(s), _)) => {
                    let k: u32 = s.parse().map_err(|_| Error::Syntax {
                        pos,
                        msg: format!("exponent `{s}` too large"),
                    })?;
                    self.at += 1;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Syntax {
                    pos,
                    msg: "expected a non-negative integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        let field = self.ring.field().clone();
        match self.toks.get(self.at).cloned() {
            Some((Tok::Int(s), _)) => {
                self.at += 1;
                let p = field.p() as u64;
                let v = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, field.from_int(v as i64)))
            }
            Some((Tok::Name(name), _)) => {
                self.at += 1;
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if name == field.generator_name() {
                    match field.generator() {
                        Some(g) => Ok(Polynomial::constant(self.ring, g)),
                        None => Err(Error::CoefficientNotInField(name)),
                    }
                } else {
                    Err(Error::UnknownVariable { name, pos })
                }
            }
            Some((Tok::LParen, _)) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: "expected `)`".into(),
                    });
                }
                self.at += 1;
                Ok(inner)
            }
            Some((t, _)) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses a polynomial in the given ring.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        ring,
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(out)
}

/// Parses a field element written in the generator symbol, e.g. `2*g+1`.
pub fn parse_field_element(text: &str, field: &Arc<crate::ff::FieldCtx>) -> Result<Fe> {
    let ring = Ring::new(field.clone(), Vec::new(), super::MonomialOrder::grevlex(0))?;
    let p = parse_polynomial(text, &ring)?;
    Ok(p.terms().first().map(|&(_, c)| c).unwrap_or(Fe::ZERO))
}
