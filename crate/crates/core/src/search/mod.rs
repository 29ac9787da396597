//! Universal proof search and the information efficiency `i_P(τ)`.
//!
//! Both universal searchers run machine codes on the canonical rendering of
//! `τ` and keep an output only if the verifier accepts it as a proof of
//! exactly `τ`, so they never return a non-proof.
//!
//! * [`levin_search_ap`]: in round `i = 1, 2, …` run the first `i` programs
//!   (length-lexicographic, after any planted ones) for `i` steps each.
//! * [`info_search_bp`]: for level `i = 0, 1, …` try every pair `(e, t)` with
//!   `|e| + ⌈log₂ t⌉ = i` in the Kt search order. The first level with a proof
//!   is `i_P(τ)`; exhausting the cap certifies `i_P(τ) > cap`.

mod report;
mod searchers;

pub use report::{fit_power_law, PowerFit, SearchReport, SEARCH_REPORT_SCHEMA};
pub use searchers::{
    decider_from_search, system_from_decider, totalize, BuiltinSearcher, DecideOutcome, DeciderFromSearch, ProgramSearcher, RecordSearcher,
    SearchRun, Searcher, TotalOutcome, Totalized,
};

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::formula::Formula;
use crate::kt::{level_of, KtCertificate};
use crate::machine::{nth_program, run_bits, Program, MACHINE_VERSION};
use crate::proofs::{verify, ProofObject, ProofSystemId};

/// Shortest possible proof of `τ` in `p`: one bit past the rendering, or a
/// single bit for unary designated-family proofs.
fn min_proof_len(p: &ProofSystemId, rendering: &BitString) -> usize {
    match p {
        ProofSystemId::QPrime { .. } => 1,
        _ => rendering.len() + 1,
    }
}

/// Cheap necessary condition for `verify(p, w) = τ`: `w` starts with the
/// rendering (or is unary for a designated family).
fn plausible(p: &ProofSystemId, rendering: &BitString, w: &[bool]) -> bool {
    if let ProofSystemId::QPrime { .. } = p {
        if !w.is_empty() && w.iter().all(|&b| b) {
            return true;
        }
    }
    w.len() > rendering.len() && w.starts_with(rendering.bits())
}

fn accepts(p: &ProofSystemId, tau: &Formula, rendering: &BitString, w: &[bool], verify_bits: &mut u64) -> bool {
    if !plausible(p, rendering, w) {
        return false;
    }
    *verify_bits += w.len() as u64;
    verify(p, w).as_ref() == Ok(tau)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevinOutcome {
    pub proof: Option<ProofObject>,
    /// Position of the successful program in the schedule (planted first).
    pub program_index: Option<u64>,
    pub program: Option<Program>,
    pub rounds: u64,
    /// Steps as the schedule charges them: every run in every round.
    pub charged_steps: u64,
    /// Machine runs actually executed. A program that halted in an earlier
    /// round produces the same output again and is not re-run.
    pub runs: u64,
}

/// Levin-style search for a `p`-proof of `τ`, giving up once `step_cap`
/// charged steps are spent.
pub fn levin_search_ap(p: &ProofSystemId, tau: &Formula, step_cap: u64, planted: &[Program]) -> LevinOutcome {
    let input = tau.render_bits();
    let mut halted_at: Vec<Option<u64>> = Vec::new();
    let mut programs: Vec<Program> = Vec::new();
    let mut out = LevinOutcome { proof: None, program_index: None, program: None, rounds: 0, charged_steps: 0, runs: 0 };
    let mut verify_bits = 0;
    for i in 1u64.. {
        out.rounds = i;
        while (programs.len() as u64) < i {
            let k = programs.len();
            programs.push(if k < planted.len() { planted[k].clone() } else { nth_program((k - planted.len()) as u64) });
            halted_at.push(None);
        }
        for k in 0..i as usize {
            if let Some(s) = halted_at[k] {
                out.charged_steps += s;
                continue;
            }
            let r = run_bits(programs[k].bits(), input.bits(), i);
            out.runs += 1;
            out.charged_steps += r.steps;
            if r.halted() {
                halted_at[k] = Some(r.steps);
                if accepts(p, tau, &input, r.output.bits(), &mut verify_bits) {
                    out.proof = Some(ProofObject::new(p.clone(), r.output));
                    out.program_index = Some(k as u64);
                    out.program = Some(programs[k].clone());
                    return out;
                }
            }
            if out.charged_steps > step_cap {
                return out;
            }
        }
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpFound {
    pub proof: ProofObject,
    pub level: u64,
    /// `Kt(proof | rendering of τ) = level`, exact by exhaustion of lower levels.
    pub certificate: KtCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpOutcome {
    pub found: Option<BpFound>,
    /// `i_P(τ) ≥ lower_bound`: every level below it was exhausted.
    pub lower_bound: u64,
    pub runs: u64,
    pub vm_steps: u64,
    /// Bits handed to the verifier after the prefix check.
    pub verify_bits: u64,
}

impl BpOutcome {
    /// Host work: machine steps, one unit per run, and one per verified bit.
    pub fn host_steps(&self) -> u64 {
        self.vm_steps + self.runs + self.verify_bits
    }
}

/// Level-by-level search for the proof of `τ` of least `Kt(w | τ)`.
pub fn info_search_bp(p: &ProofSystemId, tau: &Formula, level_cap: u64) -> BpOutcome {
    let input = tau.render_bits();
    let min_len = min_proof_len(p, &input);
    let mut out = BpOutcome { found: None, lower_bound: 0, runs: 0, vm_steps: 0, verify_bits: 0 };
    let mut buf = Vec::new();
    for level in 0..=level_cap {
        for len in 0..=level.min(62) {
            let t_exp = level - len;
            if t_exp >= 63 {
                continue;
            }
            let t = 1u64 << t_exp;
            // A run of t steps emits at most t bits.
            if (t as usize) < min_len {
                continue;
            }
            for idx in 0..(1u64 << len) {
                buf.clear();
                buf.extend((0..len).rev().map(|k| (idx >> k) & 1 == 1));
                let r = run_bits(&buf, input.bits(), t);
                out.runs += 1;
                out.vm_steps += r.steps;
                if r.halted() && accepts(p, tau, &input, r.output.bits(), &mut out.verify_bits) {
                    let time = r.steps.max(1);
                    debug_assert_eq!(level_of(len as usize, time), level);
                    let certificate = KtCertificate {
                        target: r.output.clone(),
                        condition: input.clone(),
                        program: Program(BitString::from_bits(buf.clone())),
                        time,
                        level,
                        exact: true,
                        machine_version: MACHINE_VERSION.to_string(),
                    };
                    out.found = Some(BpFound { proof: ProofObject::new(p.clone(), r.output), level, certificate });
                    out.lower_bound = level;
                    return out;
                }
            }
        }
        out.lower_bound = level + 1;
    }
    out
}

/// `i_P(τ)`, exact when found within the cap, otherwise the certified lower bound `cap + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IpValue {
    pub value: u64,
    pub exact: bool,
}

pub fn i_p(p: &ProofSystemId, tau: &Formula, level_cap: u64) -> IpValue {
    let o = info_search_bp(p, tau, level_cap);
    match o.found {
        Some(f) => IpValue { value: f.level, exact: true },
        None => IpValue { value: o.lower_bound, exact: false },
    }
}
