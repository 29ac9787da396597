//! The frozen DPLL solver whose failing runs are the proofs of the trace system.
//!
//! Heuristic: unit propagation to fixpoint, scanning clauses in index order and
//! restarting the scan after every propagation; then decide the smallest
//! unassigned variable, false first. On a conflict, undo the trail back to the
//! most recent decision whose true branch is unexplored and flip it. No
//! restarts, no learning, no randomness.
//!
//! Trace events and their bit codes:
//!
//! | event | bits |
//! |-------|------|
//! | `Decide(v)` (v := false) | `00` `γ(v)` |
//! | `Propagate(l, c)` | `01` `γ(|l|)` sign `γ(c+1)` (sign `1` = negative) |
//! | `Conflict(c)` | `10` `γ(c+1)` |
//! | `Flip(v)` (v := true) | `110` `γ(v)` |
//! | `Unsat` | `111` |

use serde::{Deserialize, Serialize};

use crate::bits::{push_gamma, read_gamma, BitString};
use crate::formula::{Assignment, Cnf, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceEvent {
    Decide(u32),
    Propagate { lit: Lit, reason: usize },
    Conflict(usize),
    Flip(u32),
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpllTrace {
    pub target: Cnf,
    pub events: Vec<TraceEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DpllResult {
    Sat(Assignment),
    Unsat(DpllTrace),
}

/// Runs the frozen solver. Also returns the number of clause visits, the
/// host-operation count used by searchers built on it.
pub fn dpll_solve_counted(c: &Cnf) -> (DpllResult, u64) {
    let n = c.var_count() as usize;
    let mut value: Vec<Option<bool>> = vec![None; n + 1];
    // (var, is_decision, flipped)
    let mut trail: Vec<(u32, bool, bool)> = Vec::new();
    let mut events = Vec::new();
    let mut work = 0u64;
    let lit_val = |value: &[Option<bool>], l: Lit| value[l.unsigned_abs() as usize].map(|v| v == (l > 0));
    loop {
        // Propagate to fixpoint or conflict.
        let mut conflict = None;
        'scan: loop {
            for (ci, cl) in c.clauses().iter().enumerate() {
                work += 1;
                let mut unassigned = None;
                let mut free = 0;
                let mut sat = false;
                for &l in cl.lits() {
                    match lit_val(&value, l) {
                        Some(true) => {
                            sat = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            free += 1;
                            unassigned = Some(l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                if free == 0 {
                    conflict = Some(ci);
                    break 'scan;
                }
                if free == 1 {
                    let l = unassigned.unwrap();
                    value[l.unsigned_abs() as usize] = Some(l > 0);
                    trail.push((l.unsigned_abs(), false, false));
                    events.push(TraceEvent::Propagate { lit: l, reason: ci });
                    continue 'scan;
                }
            }
            break;
        }
        if let Some(ci) = conflict {
            events.push(TraceEvent::Conflict(ci));
            loop {
                match trail.pop() {
                    None => {
                        events.push(TraceEvent::Unsat);
                        return (DpllResult::Unsat(DpllTrace { target: c.clone(), events }), work);
                    }
                    Some((v, true, false)) => {
                        value[v as usize] = Some(true);
                        trail.push((v, true, true));
                        events.push(TraceEvent::Flip(v));
                        break;
                    }
                    Some((v, _, _)) => value[v as usize] = None,
                }
            }
            continue;
        }
        match (1..=n).find(|&v| value[v].is_none()) {
            None => {
                let a = Assignment(value[1..].iter().map(|v| v.unwrap()).collect());
                return (DpllResult::Sat(a), work);
            }
            Some(v) => {
                value[v] = Some(false);
                trail.push((v as u32, true, false));
                events.push(TraceEvent::Decide(v as u32));
            }
        }
    }
}

pub fn dpll_solve(c: &Cnf) -> DpllResult {
    dpll_solve_counted(c).0
}

impl DpllTrace {
    pub fn conflicts(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, TraceEvent::Conflict(_))).count()
    }

    pub fn encode(&self) -> BitString {
        let mut b = Vec::new();
        for e in &self.events {
            match *e {
                TraceEvent::Decide(v) => {
                    b.extend([false, false]);
                    push_gamma(&mut b, v as u64);
                }
                TraceEvent::Propagate { lit, reason } => {
                    b.extend([false, true]);
                    push_gamma(&mut b, lit.unsigned_abs() as u64);
                    b.push(lit < 0);
                    push_gamma(&mut b, reason as u64 + 1);
                }
                TraceEvent::Conflict(c) => {
                    b.extend([true, false]);
                    push_gamma(&mut b, c as u64 + 1);
                }
                TraceEvent::Flip(v) => {
                    b.extend([true, true, false]);
                    push_gamma(&mut b, v as u64);
                }
                TraceEvent::Unsat => b.extend([true, true, true]),
            }
        }
        BitString::from_bits(b)
    }

    /// Parses event codes. The result need not be a faithful run; replay decides that.
    pub fn decode(target: &Cnf, bits: &[bool]) -> Option<DpllTrace> {
        let mut pos = 0;
        let mut events = Vec::new();
        let bit = |pos: &mut usize| -> Option<bool> {
            let b = *bits.get(*pos)?;
            *pos += 1;
            Some(b)
        };
        while pos < bits.len() {
            let e = match (bit(&mut pos)?, bit(&mut pos)?) {
                (false, false) => TraceEvent::Decide(u32::try_from(read_gamma(bits, &mut pos)?).ok()?),
                (false, true) => {
                    let v = Lit::try_from(read_gamma(bits, &mut pos)?).ok()?;
                    let neg = bit(&mut pos)?;
                    let reason = read_gamma(bits, &mut pos)? as usize - 1;
                    TraceEvent::Propagate { lit: if neg { -v } else { v }, reason }
                }
                (true, false) => TraceEvent::Conflict(read_gamma(bits, &mut pos)? as usize - 1),
                (true, true) => {
                    if bit(&mut pos)? {
                        TraceEvent::Unsat
                    } else {
                        TraceEvent::Flip(u32::try_from(read_gamma(bits, &mut pos)?).ok()?)
                    }
                }
            };
            events.push(e);
        }
        Some(DpllTrace { target: target.clone(), events })
    }

    /// One event per line: `decide 3`, `prop -2 by 4`, `conflict 1`, `flip 3`, `unsat`.
    pub fn to_text(&self) -> String {
        self.events
            .iter()
            .map(|e| match e {
                TraceEvent::Decide(v) => format!("decide {v}\n"),
                TraceEvent::Propagate { lit, reason } => format!("prop {lit} by {reason}\n"),
                TraceEvent::Conflict(c) => format!("conflict {c}\n"),
                TraceEvent::Flip(v) => format!("flip {v}\n"),
                TraceEvent::Unsat => "unsat\n".to_string(),
            })
            .collect()
    }
}
