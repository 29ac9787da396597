//! Formula grammar (whitespace is ignored between tokens):
//!
//! ```text
//! formula := seq
//! seq     := unary { op unary }          all ops in one seq must agree; `->` is binary
//! op      := "&" | "|" | "->"
//! unary   := "~" unary | atom
//! atom    := "x" digits | "T" | "F" | "(" group ")"
//! group   := ("&" | "|") [unary]          zero- or one-child form
//!          | seq
//! ```
//!
//! `a -> b` is sugar for `(~a|b)`. A parenthesised single operand is plain
//! grouping. The canonical rendering is the whitespace-free subset of this
//! grammar produced by [`Formula::render`](super::Formula::render).

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.msg)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let f = p.seq()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    And,
    Or,
    Imp,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn op(&mut self) -> Option<Op> {
        match self.peek()? {
            b'&' => {
                self.pos += 1;
                Some(Op::And)
            }
            b'|' => {
                self.pos += 1;
                Some(Op::Or)
            }
            b'-' if self.s.get(self.pos + 1) == Some(&b'>') => {
                self.pos += 2;
                Some(Op::Imp)
            }
            _ => None,
        }
    }

    fn seq(&mut self) -> Result<Formula, ParseError> {
        let first = self.unary()?;
        let mut items = vec![first];
        let mut op: Option<Op> = None;
        loop {
            self.ws();
            let at = self.pos;
            let Some(o) = self.op() else { break };
            match op {
                None => op = Some(o),
                Some(prev) if prev != o || o == Op::Imp => {
                    self.pos = at;
                    return Err(self.err("mixed or chained operators need parentheses"));
                }
                _ => {}
            }
            items.push(self.unary()?);
        }
        Ok(match op {
            None => items.pop().unwrap(),
            Some(Op::And) => Formula::And(items),
            Some(Op::Or) => Formula::Or(items),
            Some(Op::Imp) => {
                let b = items.pop().unwrap();
                let a = items.pop().unwrap();
                Formula::Or(vec![Formula::not(a), b])
            }
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                if self.s.get(self.pos) == Some(&b'-') {
                    return Err(self.err("variable index must be positive"));
                }
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.err("expected variable index after 'x'"));
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                match digits.parse::<u32>() {
                    Ok(0) => Err(ParseError { pos: start, msg: "variable index must be positive".into() }),
                    Ok(i) if digits.starts_with('0') => {
                        let _ = i;
                        Err(ParseError { pos: start, msg: "leading zero in variable index".into() })
                    }
                    Ok(i) => Ok(Formula::Var(i)),
                    Err(_) => Err(ParseError { pos: start, msg: "variable index too large".into() }),
                }
            }
            Some(b'T') => {
                self.pos += 1;
                Ok(Formula::Const(true))
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(Formula::Const(false))
            }
            Some(b'(') => {
                self.pos += 1;
                let f = match self.peek() {
                    Some(c @ (b'&' | b'|')) => {
                        self.pos += 1;
                        let mut cs = Vec::new();
                        if self.peek() != Some(b')') {
                            cs.push(self.unary()?);
                        }
                        if c == b'&' {
                            Formula::And(cs)
                        } else {
                            Formula::Or(cs)
                        }
                    }
                    _ => self.seq()?,
                };
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
