//! Time-bounded Kolmogorov complexity `Kt(w|u) = min{|e| + ⌈log₂ t⌉ : U(e,u,1^t) = w}`
//! over the toy machine, with re-checkable certificates.
//!
//! The unconditional complexity `Kt(w)` uses the empty condition `u = ε`.

mod cache;

pub use cache::KtCache;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{ceil_log2, BitString};
use crate::machine::{compose_programs, print_program_for, run, run_bits, Program, MACHINE_VERSION};

/// A witness `(e, t)` for an upper bound on `Kt(target | condition)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KtCertificate {
    pub target: BitString,
    pub condition: BitString,
    pub program: Program,
    pub time: u64,
    pub level: u64,
    /// No witness of smaller level exists (established by exhaustive search).
    pub exact: bool,
    pub machine_version: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectReason {
    Version,
    NotHalted,
    WrongOutput,
    LevelMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KtError {
    #[error("first stage outputs {produced} but the second stage is conditioned on {expected}")]
    StageMismatch { produced: BitString, expected: BitString },
}

/// `|e| + ⌈log₂ t⌉`.
pub fn level_of(program_len: usize, time: u64) -> u64 {
    program_len as u64 + ceil_log2(time) as u64
}

impl KtCertificate {
    /// Builds a certificate by running `program`; `None` if it does not output `target` within `time`.
    pub fn from_run(target: &BitString, condition: &BitString, program: Program, time: u64) -> Option<Self> {
        let out = run(&program, condition, time);
        if !out.halted() || &out.output != target {
            return None;
        }
        let time = out.steps.max(1);
        Some(KtCertificate {
            target: target.clone(),
            condition: condition.clone(),
            level: level_of(program.len(), time),
            program,
            time,
            exact: false,
            machine_version: MACHINE_VERSION.to_string(),
        })
    }

    pub fn verify(&self) -> Result<(), RejectReason> {
        verify_certificate(self)
    }
}

pub fn verify_certificate(c: &KtCertificate) -> Result<(), RejectReason> {
    if c.machine_version != MACHINE_VERSION {
        return Err(RejectReason::Version);
    }
    if c.time == 0 || c.level != level_of(c.program.len(), c.time) {
        return Err(RejectReason::LevelMismatch);
    }
    let out = run(&c.program, &c.condition, c.time);
    if !out.halted() {
        return Err(RejectReason::NotHalted);
    }
    if out.output != c.target {
        return Err(RejectReason::WrongOutput);
    }
    Ok(())
}

/// Work done by a Kt search: programs run and machine steps simulated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCost {
    pub runs: u64,
    pub steps: u64,
}

/// Exhaustive level search. For level `i = 0, 1, …, budget`, runs every `e` with
/// `|e| ≤ i` for the single representative time `t = 2^(i−|e|)`; a run that halts
/// sooner is subsumed because only `⌈log₂ t⌉` enters the level. Within a level,
/// programs are tried shortest first, then lexicographically.
///
/// Returns the first witness and whether it was found (`exact`).
pub fn kt_search(w: &BitString, u: &BitString, budget: u64, cost: &mut SearchCost) -> Option<KtCertificate> {
    let mut buf = Vec::new();
    for level in 0..=budget {
        for len in 0..=level.min(62) {
            let t_exp = level - len;
            if t_exp >= 63 {
                continue;
            }
            let t = 1u64 << t_exp;
            // A run of t steps emits at most t bits.
            if (t as usize) < w.len() {
                continue;
            }
            for idx in 0..(1u64 << len) {
                buf.clear();
                buf.extend((0..len).rev().map(|k| (idx >> k) & 1 == 1));
                let out = run_bits(&buf, u.bits(), t);
                cost.runs += 1;
                cost.steps += out.steps;
                if out.halted() && out.output == *w {
                    let time = out.steps.max(1);
                    debug_assert_eq!(level_of(len as usize, time), level);
                    return Some(KtCertificate {
                        target: w.clone(),
                        condition: u.clone(),
                        program: Program(BitString::from_bits(buf)),
                        time,
                        level,
                        exact: true,
                        machine_version: MACHINE_VERSION.to_string(),
                    });
                }
            }
        }
    }
    None
}

/// The print-program upper bound: `|w| + 3 + ⌈log₂ max(1,|w|)⌉`.
pub fn print_certificate(w: &BitString, u: &BitString) -> KtCertificate {
    let p = print_program_for(w);
    KtCertificate::from_run(w, u, p, w.len().max(1) as u64).expect("print programs halt with their payload")
}

/// `Kt(w|u)`: exact if some witness has level `≤ budget`, otherwise the best of the
/// print-program bound and the caller's `witnesses`, marked non-exact.
pub fn kt_with_witnesses(
    w: &BitString,
    u: &BitString,
    budget: u64,
    witnesses: &[(Program, u64)],
) -> KtCertificate {
    let mut cost = SearchCost::default();
    if let Some(c) = kt_search(w, u, budget, &mut cost) {
        return c;
    }
    let mut best = print_certificate(w, u);
    for (p, t) in witnesses {
        if let Some(c) = KtCertificate::from_run(w, u, p.clone(), *t) {
            if (c.level, c.program.len(), &c.program, c.time) < (best.level, best.program.len(), &best.program, best.time) {
                best = c;
            }
        }
    }
    best
}

pub fn kt(w: &BitString, u: &BitString, budget: u64) -> KtCertificate {
    kt_with_witnesses(w, u, budget, &[])
}

/// Chains `cu: Kt(v | x)` and `cwu: Kt(w | v)` into a certificate for `Kt(w | x)`
/// through the composed program. The result is re-executed and never exact.
pub fn compose_certificates(cu: &KtCertificate, cwu: &KtCertificate) -> Result<KtCertificate, KtError> {
    if cu.target != cwu.condition {
        return Err(KtError::StageMismatch { produced: cu.target.clone(), expected: cwu.condition.clone() });
    }
    let program = compose_programs(&cu.program, &cwu.program);
    let budget = cu.time.saturating_add(cwu.time);
    let c = KtCertificate::from_run(&cwu.target, &cu.condition, program, budget)
        .ok_or_else(|| KtError::StageMismatch { produced: cu.target.clone(), expected: cwu.condition.clone() })?;
    Ok(c)
}

/// `It(u : w) = Kt(w) − Kt(w|u)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItValue {
    pub value: i64,
    pub kt_w: u64,
    pub kt_w_given_u: u64,
    /// Both components exact.
    pub exact: bool,
}

pub fn it_info(u: &BitString, w: &BitString, budget: u64) -> ItValue {
    let plain = kt(w, &BitString::new(), budget);
    let cond = if u.is_empty() { plain.clone() } else { kt(w, u, budget) };
    ItValue {
        value: plain.level as i64 - cond.level as i64,
        kt_w: plain.level,
        kt_w_given_u: cond.level,
        exact: plain.exact && cond.exact,
    }
}
