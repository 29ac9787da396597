//! The toy universal machine `U(e, u, 1^t)`.
//!
//! Every bit string is a program. Instructions start with a 3-bit opcode;
//! integer operands use the Elias-gamma code `γ(x)`, `x ≥ 1`. An undecodable
//! opcode tail or truncated operand halts the machine. Reaching the end of
//! the program halts it too.
//!
//! | opcode | mnemonic | operands | effect | steps |
//! |--------|----------|----------|--------|-------|
//! | `000` | `sys` | `γ(k)` [`γ(n)`] | `k=1` halt; `k=2` emit the ER refutation of PHP_n; `k=3` emit the PHP_n tautology rendering; other `k` halt | 1, or bits emitted |
//! | `001` | `out` | 1 bit | emit the bit | 1 |
//! | `010` | `cpy` | | emit the unread input, move the head to its end | max(1, bits) |
//! | `011` | `lit` | `γ(n+1)`, n bits | emit the n literal bits | max(1, n) |
//! | `100` | `rep` | `γ(c+1)`, `γ(L+1)`, L-bit body | run the body c times | 1 per iteration (1 if c=0) |
//! | `101` | `cmp` | `γ(L+1)`, L-bit `e1`, rest is `e2` | run `e1` on the unread input giving `v`, then `e2` on `v`; halt | 0 |
//! | `110` | `rest` | rest of region | emit the remaining bits of the current region and halt | max(1, bits) |
//! | `111` | `tst` | | read one input bit; on 0 or end of input skip the next instruction | 1 |
//!
//! A *region* is the whole program, a `rep` body, or a `cmp` stage. Halting
//! inside a `cmp` stage ends that stage only. Every emitted bit costs a step,
//! so `steps ≥ |output|` for every halting run.

mod asm;
mod enumerate;
mod exec;
mod routines;

pub use routines::{PHP_ER_MAX, PHP_TAUT_MAX};

pub use asm::{assemble, disassemble, AsmError};
pub use enumerate::{enumerate_programs, nth_program, program_count_up_to, ProgramEnumerator};
pub use exec::{run, run_bits};

use serde::{Deserialize, Serialize};

use crate::bits::{gamma_len, push_gamma, BitString};

/// Version tag of the instruction set above. Persisted Kt results embed it.
pub const MACHINE_VERSION: &str = "toyvm-1";

pub(crate) const OP_SYS: u8 = 0b000;
pub(crate) const OP_OUT: u8 = 0b001;
pub(crate) const OP_CPY: u8 = 0b010;
pub(crate) const OP_LIT: u8 = 0b011;
pub(crate) const OP_REP: u8 = 0b100;
pub(crate) const OP_CMP: u8 = 0b101;
pub(crate) const OP_REST: u8 = 0b110;
pub(crate) const OP_TST: u8 = 0b111;

pub(crate) const SYS_HALT: u64 = 1;
pub(crate) const SYS_PHP_ER: u64 = 2;
pub(crate) const SYS_PHP_TAUT: u64 = 3;

/// A machine code `e`. `|e|` is its exact bit length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Program(pub BitString);

impl Program {
    pub fn empty() -> Program {
        Program(BitString::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        self.0.bits()
    }
}

impl std::fmt::Display for Program {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Halted,
    TimedOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExecOutcome {
    pub status: Status,
    /// Output on halting; the bits emitted before the budget ran out otherwise.
    pub output: BitString,
    /// Exact step count when halted, `t` when timed out.
    pub steps: u64,
}

impl ExecOutcome {
    pub fn halted(&self) -> bool {
        self.status == Status::Halted
    }
}

pub(crate) fn push_opcode(out: &mut Vec<bool>, op: u8) {
    for k in (0..3).rev() {
        out.push((op >> k) & 1 == 1);
    }
}

/// A program that ignores its input and prints `w`: `rest w`.
pub fn print_program_for(w: &BitString) -> Program {
    let mut v = Vec::with_capacity(w.len() + 3);
    push_opcode(&mut v, OP_REST);
    v.extend_from_slice(w.bits());
    Program(BitString::from_bits(v))
}

/// `cmp γ(|e1|+1) e1 e2`: runs `e1` on the input, then `e2` on its output.
pub fn compose_programs(e1: &Program, e2: &Program) -> Program {
    let mut v = Vec::with_capacity(e1.len() + e2.len() + 3 + gamma_len(e1.len() as u64 + 1));
    push_opcode(&mut v, OP_CMP);
    push_gamma(&mut v, e1.len() as u64 + 1);
    v.extend_from_slice(e1.bits());
    v.extend_from_slice(e2.bits());
    Program(BitString::from_bits(v))
}

/// `cpy`: outputs its input.
pub fn copy_program() -> Program {
    let mut v = Vec::new();
    push_opcode(&mut v, OP_CPY);
    Program(BitString::from_bits(v))
}

/// Concrete constants of the machine, in bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineSpec {
    pub version_tag: String,
    /// `|print_program_for(ε)|`.
    pub c_print: u64,
    /// `max Kt(w|u) − Kt(w)`: zero because input-ignoring programs behave identically on every input.
    pub c_ignore: u64,
    /// Additive constant of the composition bound: `|compose(ε,ε)|` plus one bit for merging two time budgets.
    pub c_comp: u64,
    /// Bits of the self-delimiting length header of an empty first component.
    pub c_pair: u64,
}

impl MachineSpec {
    /// The constants, measured from the constructions themselves.
    pub fn measure() -> MachineSpec {
        let eps = Program::empty();
        let c_print = print_program_for(&BitString::new()).len() as u64;
        let composed = compose_programs(&eps, &eps);
        let c_pair = (composed.len() - 3) as u64;
        MachineSpec {
            version_tag: MACHINE_VERSION.to_string(),
            c_print,
            c_ignore: 0,
            c_comp: composed.len() as u64 + 1,
            c_pair,
        }
    }

    pub fn current() -> MachineSpec {
        MachineSpec::measure()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_stable() {
        let m = MachineSpec::measure();
        assert_eq!(m, MachineSpec::measure());
        assert_eq!(m.c_print, 3);
        assert_eq!(m.c_comp, 5);
        assert_eq!(m.c_pair, 1);
        assert_eq!(m.version_tag, MACHINE_VERSION);
        assert!(m.to_json().contains("\"version_tag\":\"toyvm-1\""));
    }

    #[test]
    fn print_program_length_bound() {
        let m = MachineSpec::current();
        let w = BitString::from_bits(vec![false; 64]);
        let p = print_program_for(&w);
        assert!(p.len() as u64 <= 64 + 2 * 7 + m.c_print);
        assert_eq!(print_program_for(&BitString::new()).len() as u64, m.c_print);
    }
}
