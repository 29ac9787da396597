//! Assembly text for the toy machine.
//!
//! ```text
//! program := { instr [";"] }
//! instr   := "halt" | "cpy" | "tst"
//!          | "out" ("0" | "1")
//!          | "lit" data | "rest" data        data: a 0/1 string, "-" for empty, or "quoted ascii"
//!          | "rep" count "{" program "}"
//!          | "cmp" "{" program "}"           everything after the block is the second stage
//!          | "sys" ("php_er" | "php_taut") n
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write;

use thiserror::Error;

use super::*;
use crate::bits::{push_gamma, read_gamma};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsmError {
    #[error("unknown mnemonic {0:?}")]
    UnknownMnemonic(String),
    #[error("operand out of range: {0}")]
    OperandOutOfRange(String),
    #[error("syntax: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Text(String),
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, AsmError> {
    let mut toks = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_whitespace() || c == ';' => {
                chars.next();
            }
            '{' => {
                chars.next();
                toks.push(Tok::Open);
            }
            '}' => {
                chars.next();
                toks.push(Tok::Close);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(c) if c.is_ascii() => s.push(c),
                        Some(c) => return Err(AsmError::Syntax(format!("non-ASCII character {c:?} in text"))),
                        None => return Err(AsmError::Syntax("unterminated string".into())),
                    }
                }
                toks.push(Tok::Text(s));
            }
            _ => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "{};#\"".contains(c) {
                        break;
                    }
                    w.push(c);
                    chars.next();
                }
                toks.push(Tok::Word(w));
            }
        }
    }
    Ok(toks)
}

struct Asm {
    toks: Vec<Tok>,
    pos: usize,
}

impl Asm {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn word(&mut self, what: &str) -> Result<String, AsmError> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            _ => Err(AsmError::Syntax(format!("expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64, AsmError> {
        let w = self.word(what)?;
        w.parse::<u64>().map_err(|_| AsmError::OperandOutOfRange(format!("{what} {w:?}")))
    }

    fn data(&mut self) -> Result<Vec<bool>, AsmError> {
        match self.next() {
            Some(Tok::Text(s)) => Ok(BitString::from_bytes(s.as_bytes()).into_bits()),
            Some(Tok::Word(w)) if w == "-" => Ok(Vec::new()),
            Some(Tok::Word(w)) => BitString::parse01(&w)
                .map(BitString::into_bits)
                .ok_or_else(|| AsmError::OperandOutOfRange(format!("bit data {w:?}"))),
            _ => Err(AsmError::Syntax("expected bit data".into())),
        }
    }

    fn block(&mut self, out: &mut Vec<bool>, nested: bool) -> Result<(), AsmError> {
        loop {
            let tok = match self.next() {
                None if !nested => return Ok(()),
                None => return Err(AsmError::Syntax("missing '}'".into())),
                Some(Tok::Close) if nested => return Ok(()),
                Some(Tok::Word(w)) => w,
                Some(t) => return Err(AsmError::Syntax(format!("unexpected {t:?}"))),
            };
            match tok.as_str() {
                "halt" => {
                    push_opcode(out, OP_SYS);
                    push_gamma(out, SYS_HALT);
                }
                "out" => {
                    push_opcode(out, OP_OUT);
                    match self.word("bit")?.as_str() {
                        "0" => out.push(false),
                        "1" => out.push(true),
                        w => return Err(AsmError::OperandOutOfRange(format!("out {w}"))),
                    }
                }
                "cpy" => push_opcode(out, OP_CPY),
                "tst" => push_opcode(out, OP_TST),
                "lit" => {
                    let d = self.data()?;
                    push_opcode(out, OP_LIT);
                    push_gamma(out, d.len() as u64 + 1);
                    out.extend(d);
                }
                "rest" => {
                    let d = self.data()?;
                    push_opcode(out, OP_REST);
                    out.extend(d);
                }
                "rep" => {
                    let c = self.number("repeat count")?;
                    if c >= 1 << 62 {
                        return Err(AsmError::OperandOutOfRange(format!("rep {c}")));
                    }
                    if self.next() != Some(Tok::Open) {
                        return Err(AsmError::Syntax("expected '{' after rep count".into()));
                    }
                    let mut body = Vec::new();
                    self.block(&mut body, true)?;
                    push_opcode(out, OP_REP);
                    push_gamma(out, c + 1);
                    push_gamma(out, body.len() as u64 + 1);
                    out.extend(body);
                }
                "cmp" => {
                    if self.next() != Some(Tok::Open) {
                        return Err(AsmError::Syntax("expected '{' after cmp".into()));
                    }
                    let mut first = Vec::new();
                    self.block(&mut first, true)?;
                    push_opcode(out, OP_CMP);
                    push_gamma(out, first.len() as u64 + 1);
                    out.extend(first);
                }
                "sys" => {
                    let routine = match self.word("routine")?.as_str() {
                        "php_er" => SYS_PHP_ER,
                        "php_taut" => SYS_PHP_TAUT,
                        w => return Err(AsmError::UnknownMnemonic(format!("sys {w}"))),
                    };
                    let n = self.number("routine argument")?;
                    if n == 0 || n >= 1 << 62 {
                        return Err(AsmError::OperandOutOfRange(format!("sys argument {n}")));
                    }
                    push_opcode(out, OP_SYS);
                    push_gamma(out, routine);
                    push_gamma(out, n);
                }
                other => return Err(AsmError::UnknownMnemonic(other.to_string())),
            }
        }
    }
}

pub fn assemble(source: &str) -> Result<Program, AsmError> {
    let mut a = Asm { toks: tokenize(source)?, pos: 0 };
    let mut out = Vec::new();
    a.block(&mut out, false)?;
    Ok(Program(BitString::from_bits(out)))
}

/// Best-effort listing of a program; undecodable tails are shown as `halt*`.
pub fn disassemble(p: &Program) -> String {
    let mut s = String::new();
    listing(p.bits(), 0, &mut s);
    s.trim_end().to_string()
}

fn bits01(b: &[bool]) -> String {
    if b.is_empty() {
        "-".into()
    } else {
        b.iter().map(|&x| if x { '1' } else { '0' }).collect()
    }
}

fn listing(code: &[bool], indent: usize, s: &mut String) {
    let pad = "  ".repeat(indent);
    let mut pos = 0;
    while pos < code.len() {
        if pos + 3 > code.len() {
            writeln!(s, "{pad}halt*  # tail {}", bits01(&code[pos..])).unwrap();
            return;
        }
        let op = (code[pos] as u8) << 2 | (code[pos + 1] as u8) << 1 | code[pos + 2] as u8;
        let mut p = pos + 3;
        let bad = |s: &mut String| writeln!(s, "{pad}halt*  # truncated").unwrap();
        match op {
            OP_SYS => match read_gamma(code, &mut p) {
                Some(SYS_HALT) => writeln!(s, "{pad}halt").unwrap(),
                Some(k @ (SYS_PHP_ER | SYS_PHP_TAUT)) => match read_gamma(code, &mut p) {
                    Some(n) => {
                        let name = if k == SYS_PHP_ER { "php_er" } else { "php_taut" };
                        writeln!(s, "{pad}sys {name} {n}").unwrap()
                    }
                    None => return bad(s),
                },
                Some(k) => {
                    writeln!(s, "{pad}halt*  # sys {k}").unwrap();
                    return;
                }
                None => return bad(s),
            },
            OP_OUT => match code.get(p) {
                Some(&b) => {
                    writeln!(s, "{pad}out {}", b as u8).unwrap();
                    p += 1;
                }
                None => return bad(s),
            },
            OP_CPY => writeln!(s, "{pad}cpy").unwrap(),
            OP_TST => writeln!(s, "{pad}tst").unwrap(),
            OP_REST => {
                writeln!(s, "{pad}rest {}", bits01(&code[p..])).unwrap();
                return;
            }
            OP_LIT => match read_gamma(code, &mut p) {
                Some(n) if code.len() - p >= (n - 1) as usize => {
                    let n = (n - 1) as usize;
                    writeln!(s, "{pad}lit {}", bits01(&code[p..p + n])).unwrap();
                    p += n;
                }
                _ => return bad(s),
            },
            OP_REP => {
                let c = read_gamma(code, &mut p);
                let l = read_gamma(code, &mut p);
                match (c, l) {
                    (Some(c), Some(l)) if code.len() - p >= (l - 1) as usize => {
                        let l = (l - 1) as usize;
                        writeln!(s, "{pad}rep {} {{", c - 1).unwrap();
                        listing(&code[p..p + l], indent + 1, s);
                        writeln!(s, "{pad}}}").unwrap();
                        p += l;
                    }
                    _ => return bad(s),
                }
            }
            _ => match read_gamma(code, &mut p) {
                Some(l) if code.len() - p >= (l - 1) as usize => {
                    let l = (l - 1) as usize;
                    writeln!(s, "{pad}cmp {{").unwrap();
                    listing(&code[p..p + l], indent + 1, s);
                    writeln!(s, "{pad}}}").unwrap();
                    p += l;
                }
                _ => return bad(s),
            },
        }
        pos = p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        BitString::parse01(s).unwrap()
    }

    #[test]
    fn print_matches_printer() {
        let a = assemble("rest 101").unwrap();
        assert_eq!(a, print_program_for(&b("101")));
        let lit = assemble("lit 101").unwrap();
        assert_eq!(run(&lit, &BitString::new(), 10).output, b("101"));
    }

    #[test]
    fn copy_input_is_exhaustively_correct() {
        let p = assemble("cpy").unwrap();
        assert_eq!(p, copy_program());
        for len in 0..=8 {
            for idx in 0..(1u64 << len) {
                let u = BitString::from_index(idx, len);
                let out = run(&p, &u, 100);
                assert!(out.halted());
                assert_eq!(out.output, u);
            }
        }
    }

    #[test]
    fn empty_source() {
        let p = assemble("  # nothing\n").unwrap();
        assert!(p.is_empty());
        let out = run(&p, &b("1"), 1);
        assert!(out.halted() && out.output.is_empty());
    }

    #[test]
    fn errors() {
        assert_eq!(assemble("jmp"), Err(AsmError::UnknownMnemonic("jmp".into())));
        assert!(matches!(assemble("out 2"), Err(AsmError::OperandOutOfRange(_))));
        assert!(matches!(assemble("sys php_er 0"), Err(AsmError::OperandOutOfRange(_))));
        assert!(matches!(assemble("rep 3 { out 1"), Err(AsmError::Syntax(_))));
    }

    #[test]
    fn listing_round_trips() {
        let src = "cmp {\n  lit \"ab\"\n}\nrep 2 {\n  out 1\n  tst\n}\nrest 0110";
        let p = assemble(src).unwrap();
        assert_eq!(assemble(&disassemble(&p)).unwrap(), p);
    }
}
