use crate::bits::{read_gamma, BitString};

use super::*;

enum Instr {
    Halt,
    Sys { routine: u64, n: u64 },
    Out(bool),
    Cpy,
    Lit { start: usize, len: usize },
    Rep { count: u64, start: usize, len: usize },
    Cmp { start: usize, split: usize },
    Rest,
    Tst,
}

/// Decodes the instruction at `pos`; `None` means "halt" (bad or truncated).
/// Returns the instruction and the position after it.
fn decode(code: &[bool], pos: usize) -> Option<(Instr, usize)> {
    if pos + 3 > code.len() {
        return None;
    }
    let op = (code[pos] as u8) << 2 | (code[pos + 1] as u8) << 1 | code[pos + 2] as u8;
    let mut p = pos + 3;
    let instr = match op {
        OP_SYS => {
            let k = read_gamma(code, &mut p)?;
            if k == SYS_HALT {
                Instr::Halt
            } else if k == SYS_PHP_ER || k == SYS_PHP_TAUT {
                let n = read_gamma(code, &mut p)?;
                Instr::Sys { routine: k, n }
            } else {
                Instr::Halt
            }
        }
        OP_OUT => {
            let b = *code.get(p)?;
            p += 1;
            Instr::Out(b)
        }
        OP_CPY => Instr::Cpy,
        OP_LIT => {
            let n = read_gamma(code, &mut p)? - 1;
            let start = p;
            if ((code.len() - p) as u64) < n {
                return None;
            }
            p += n as usize;
            Instr::Lit { start, len: n as usize }
        }
        OP_REP => {
            let count = read_gamma(code, &mut p)? - 1;
            let len = read_gamma(code, &mut p)? - 1;
            if ((code.len() - p) as u64) < len {
                return None;
            }
            let start = p;
            p += len as usize;
            Instr::Rep { count, start, len: len as usize }
        }
        OP_CMP => {
            let len = read_gamma(code, &mut p)? - 1;
            if ((code.len() - p) as u64) < len {
                return None;
            }
            let start = p;
            p += len as usize;
            Instr::Cmp { start, split: p }
        }
        OP_REST => Instr::Rest,
        _ => Instr::Tst,
    };
    Some((instr, p))
}

enum Flow {
    End,
    Halt,
}

struct Timeout;

struct Exec<'a> {
    input: &'a [bool],
    head: usize,
    out: Vec<bool>,
    steps: u64,
    limit: u64,
}

impl<'a> Exec<'a> {
    fn charge(&mut self, n: u64) -> Result<(), Timeout> {
        if n > self.limit - self.steps {
            self.steps = self.limit;
            Err(Timeout)
        } else {
            self.steps += n;
            Ok(())
        }
    }

    fn emit(&mut self, bits: &[bool]) -> Result<(), Timeout> {
        self.charge(bits.len().max(1) as u64)?;
        self.out.extend_from_slice(bits);
        Ok(())
    }

    fn region(&mut self, code: &[bool]) -> Result<Flow, Timeout> {
        let mut pos = 0;
        loop {
            if pos == code.len() {
                return Ok(Flow::End);
            }
            let Some((instr, next)) = decode(code, pos) else {
                return Ok(Flow::Halt);
            };
            pos = next;
            match instr {
                Instr::Halt => {
                    self.charge(1)?;
                    return Ok(Flow::Halt);
                }
                Instr::Sys { routine, n } => {
                    let bits = super::routines::output(routine, n);
                    match bits {
                        Some(b) => self.emit(b.bits())?,
                        None => {
                            self.charge(1)?;
                            return Ok(Flow::Halt);
                        }
                    }
                }
                Instr::Out(b) => self.emit(&[b])?,
                Instr::Cpy => {
                    let rest = &self.input[self.head..];
                    self.head = self.input.len();
                    self.emit(rest)?;
                }
                Instr::Lit { start, len } => self.emit(&code[start..start + len])?,
                Instr::Rep { count, start, len } => {
                    if count == 0 {
                        self.charge(1)?;
                    }
                    let body = &code[start..start + len];
                    for _ in 0..count {
                        self.charge(1)?;
                        if let Flow::Halt = self.region(body)? {
                            return Ok(Flow::Halt);
                        }
                    }
                }
                Instr::Cmp { start, split } => {
                    let e1 = &code[start..split];
                    let e2 = &code[split..];
                    let mut first = Exec {
                        input: &self.input[self.head..],
                        head: 0,
                        out: Vec::new(),
                        steps: self.steps,
                        limit: self.limit,
                    };
                    let r = first.region(e1);
                    self.steps = first.steps;
                    r?;
                    let v = first.out;
                    let mut second = Exec { input: &v, head: 0, out: Vec::new(), steps: self.steps, limit: self.limit };
                    let r = second.region(e2);
                    self.steps = second.steps;
                    self.out.extend_from_slice(&second.out);
                    r?;
                    return Ok(Flow::Halt);
                }
                Instr::Rest => {
                    self.emit(&code[pos..])?;
                    return Ok(Flow::Halt);
                }
                Instr::Tst => {
                    self.charge(1)?;
                    let bit = self.input.get(self.head).copied();
                    if bit.is_some() {
                        self.head += 1;
                    }
                    if bit != Some(true) {
                        match decode(code, pos) {
                            Some((_, after)) => pos = after,
                            None => return Ok(Flow::Halt),
                        }
                    }
                }
            }
        }
    }
}

/// Runs `code` on `input` for at most `t ≥ 1` steps.
pub fn run_bits(code: &[bool], input: &[bool], t: u64) -> ExecOutcome {
    assert!(t >= 1, "time bound must be positive");
    let mut ex = Exec { input, head: 0, out: Vec::new(), steps: 0, limit: t };
    let status = match ex.region(code) {
        Ok(_) => Status::Halted,
        Err(Timeout) => Status::TimedOut,
    };
    ExecOutcome { status, output: BitString::from_bits(ex.out), steps: ex.steps }
}

/// `U(e, u, 1^t)`.
pub fn run(e: &Program, u: &BitString, t: u64) -> ExecOutcome {
    run_bits(e.bits(), u.bits(), t)
}
