use crate::bits::BitString;

use super::Program;

/// Number of programs of length at most `max_len`: `2^(max_len+1) − 1`.
pub fn program_count_up_to(max_len: u32) -> u64 {
    (1u64 << (max_len + 1)) - 1
}

/// All bit strings of length `0..=max_len` in length-then-lexicographic order.
pub struct ProgramEnumerator {
    len: usize,
    index: u64,
    max_len: usize,
}

impl Iterator for ProgramEnumerator {
    type Item = Program;

    fn next(&mut self) -> Option<Program> {
        if self.len > self.max_len {
            return None;
        }
        let p = Program(BitString::from_index(self.index, self.len));
        self.index += 1;
        if self.index == 1u64 << self.len {
            self.index = 0;
            self.len += 1;
        }
        Some(p)
    }
}

pub fn enumerate_programs(max_len: u32) -> ProgramEnumerator {
    assert!(max_len < 63, "enumeration limited to lengths below 63");
    ProgramEnumerator { len: 0, index: 0, max_len: max_len as usize }
}

/// The `k`-th program (0-based) in length-lexicographic order.
pub fn nth_program(k: u64) -> Program {
    let len = 63 - (k + 1).leading_zeros();
    Program(BitString::from_index(k + 1 - (1u64 << len), len as usize))
}
