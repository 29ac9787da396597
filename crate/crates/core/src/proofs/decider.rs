//! Deciders with replayable computation records, and the proof systems built
//! from them: a proof of `τ` is `τ`, a marker bit, and the record of an
//! accepting run of the decider on `τ`.

use serde::{Deserialize, Serialize};

use super::dpll::{dpll_solve_counted, DpllResult};
use crate::bits::BitString;
use crate::formula::{negate_to_cnf, Formula, FormulaError, DEFAULT_TAUTOLOGY_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeciderKind {
    /// Evaluates `τ` on assignments in increasing mask order, stopping at the
    /// first falsifying one. Record: one bit per evaluation.
    BruteForce,
    /// The frozen DPLL on `negate_to_cnf(τ)`. Record: the encoded trace.
    Dpll,
}

impl DeciderKind {
    pub fn name(self) -> &'static str {
        match self {
            DeciderKind::BruteForce => "bruteforce",
            DeciderKind::Dpll => "dpll",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeciderRun {
    pub accept: bool,
    pub record: BitString,
    /// Host operations: formula nodes visited, or clause visits for DPLL.
    pub steps: u64,
}

fn node_count(f: &Formula) -> u64 {
    match f {
        Formula::Var(_) | Formula::Const(_) => 1,
        Formula::Not(g) => 1 + node_count(g),
        Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(node_count).sum::<u64>(),
    }
}

pub fn run_decider(kind: DeciderKind, tau: &Formula) -> Result<DeciderRun, FormulaError> {
    match kind {
        DeciderKind::BruteForce => {
            let n = tau.var_count();
            if n > DEFAULT_TAUTOLOGY_CAP {
                return Err(FormulaError::CapExceeded { vars: n, cap: DEFAULT_TAUTOLOGY_CAP });
            }
            let size = node_count(tau);
            let mut record = BitString::new();
            let mut steps = 0;
            for mask in 0..(1u64 << n) {
                let v = tau.eval_mask(mask);
                steps += size;
                record.push(v);
                if !v {
                    return Ok(DeciderRun { accept: false, record, steps });
                }
            }
            Ok(DeciderRun { accept: true, record, steps })
        }
        DeciderKind::Dpll => {
            let (res, steps) = dpll_solve_counted(&negate_to_cnf(tau));
            Ok(match res {
                DpllResult::Unsat(t) => DeciderRun { accept: true, record: t.encode(), steps },
                DpllResult::Sat(_) => DeciderRun { accept: false, record: BitString::new(), steps },
            })
        }
    }
}
