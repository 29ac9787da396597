//! Proof searchers: machine codes, built-in host procedures, the totalizing
//! wrapper, and the transforms between searchers and deciders.
//!
//! Step units: machine steps for [`ProgramSearcher`]; for built-in searchers,
//! one unit per formula node evaluated, per clause visited by DPLL, and per
//! emitted proof bit; for the totalizer's falsifier, one unit per assignment.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::formula::{Assignment, Formula};
use crate::machine::{run, Program};
use crate::proofs::{prove, run_decider, verify, DeciderKind, ProofSystemId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRun {
    pub output: Option<BitString>,
    pub steps: u64,
}

pub trait Searcher {
    fn name(&self) -> String;
    fn search(&self, tau: &Formula) -> SearchRun;
}

/// A machine code run on the rendering of `τ` for at most `step_cap` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramSearcher {
    pub program: Program,
    pub step_cap: u64,
}

impl Searcher for ProgramSearcher {
    fn name(&self) -> String {
        format!("program:{}", self.program)
    }

    fn search(&self, tau: &Formula) -> SearchRun {
        let r = run(&self.program, &tau.render_bits(), self.step_cap.max(1));
        SearchRun { output: r.halted().then_some(r.output), steps: r.steps }
    }
}

/// The crate's own proof constructor for a system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinSearcher {
    pub system: ProofSystemId,
}

impl Searcher for BuiltinSearcher {
    fn name(&self) -> String {
        format!("builtin:{}", self.system)
    }

    fn search(&self, tau: &Formula) -> SearchRun {
        let kind = match &self.system {
            ProofSystemId::Ps { .. } => DeciderKind::Dpll,
            ProofSystemId::Decider { decider } => *decider,
            _ => DeciderKind::BruteForce,
        };
        let work = run_decider(kind, tau).map(|r| r.steps).unwrap_or(0);
        let output = prove(&self.system, tau);
        let emitted = output.as_ref().map_or(0, |w| w.len() as u64);
        SearchRun { output, steps: work + emitted }
    }
}

/// Emits `τ`, a marker bit and the decider's accepting record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecordSearcher {
    pub decider: DeciderKind,
}

impl Searcher for RecordSearcher {
    fn name(&self) -> String {
        format!("record:{}", self.decider.name())
    }

    fn search(&self, tau: &Formula) -> SearchRun {
        match run_decider(self.decider, tau) {
            Ok(r) if r.accept => {
                let mut w = tau.render_bits();
                w.push(true);
                w.extend_from(r.record.bits());
                let steps = r.steps + w.len() as u64;
                SearchRun { output: Some(w), steps }
            }
            Ok(r) => SearchRun { output: None, steps: r.steps },
            Err(_) => SearchRun { output: None, steps: 0 },
        }
    }
}

/// The proof system whose proofs are accepting records of `decider`, and the searcher that emits them.
pub fn system_from_decider(decider: DeciderKind) -> (ProofSystemId, RecordSearcher) {
    (ProofSystemId::Decider { decider }, RecordSearcher { decider })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TotalOutcome {
    /// The wrapped searcher finished first; its output (if any).
    Output(Option<BitString>),
    Falsified(Assignment),
    /// The wrapped searcher gave no output and no assignment falsifies `τ`.
    Exhausted,
}

/// Alternates single steps of a falsifying-assignment search (odd steps) with
/// the wrapped searcher (even steps), so it halts on every formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Totalized<S> {
    pub inner: S,
}

pub fn totalize<S: Searcher>(inner: S) -> Totalized<S> {
    Totalized { inner }
}

impl<S: Searcher> Totalized<S> {
    pub fn run_total(&self, tau: &Formula) -> (TotalOutcome, u64) {
        let a = self.inner.search(tau);
        let s = a.steps.max(1);
        let n = tau.var_count().min(63);
        let space = 1u64.checked_shl(n).unwrap_or(u64::MAX);
        // The falsifier's k-th step checks mask k−1 and happens at tick 2k−1.
        let first_false = |limit: u64| (0..limit.min(space)).find(|&m| !tau.eval_mask(m));
        if let Some(m) = first_false(s) {
            return (TotalOutcome::Falsified(Assignment::from_mask(m, tau.var_count())), 2 * (m + 1) - 1);
        }
        if a.output.is_some() {
            return (TotalOutcome::Output(a.output), 2 * s);
        }
        match (s..space).find(|&m| !tau.eval_mask(m)) {
            Some(m) => (TotalOutcome::Falsified(Assignment::from_mask(m, tau.var_count())), 2 * s + (m + 1 - s)),
            None => (TotalOutcome::Exhausted, 2 * s + space.saturating_sub(s)),
        }
    }
}

impl<S: Searcher> Searcher for Totalized<S> {
    fn name(&self) -> String {
        format!("total({})", self.inner.name())
    }

    fn search(&self, tau: &Formula) -> SearchRun {
        let (o, steps) = self.run_total(tau);
        SearchRun { output: if let TotalOutcome::Output(w) = o { w } else { None }, steps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideOutcome {
    pub accept: bool,
    /// Searcher steps plus one unit per verified proof bit.
    pub steps: u64,
}

/// Accepts `τ` iff the searcher's output is a `system`-proof of `τ`.
pub struct DeciderFromSearch<S> {
    pub searcher: S,
    pub system: ProofSystemId,
}

pub fn decider_from_search<S: Searcher>(searcher: S, system: ProofSystemId) -> DeciderFromSearch<S> {
    DeciderFromSearch { searcher, system }
}

impl<S: Searcher> DeciderFromSearch<S> {
    pub fn decide(&self, tau: &Formula) -> DecideOutcome {
        let r = self.searcher.search(tau);
        match r.output {
            Some(w) => DecideOutcome { accept: verify(&self.system, w.bits()).as_ref() == Ok(tau), steps: r.steps + w.len() as u64 },
            None => DecideOutcome { accept: false, steps: r.steps },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{is_tautology_bruteforce, parse_formula};

    #[test]
    fn totalizer_falsifies_x1() {
        let t = totalize(BuiltinSearcher { system: ProofSystemId::Tt });
        let (o, steps) = t.run_total(&parse_formula("x1").unwrap());
        assert_eq!(o, TotalOutcome::Falsified(Assignment(vec![false])));
        assert_eq!(steps, 1);
    }

    #[test]
    fn round_trip_through_records() {
        for kind in [DeciderKind::BruteForce, DeciderKind::Dpll] {
            let (p, a) = system_from_decider(kind);
            let d = decider_from_search(a, p);
            for s in ["(x1|~x1)", "x1", "((x1->x2)|(x2->x1))", "(x1&~x1)", "T"] {
                let f = parse_formula(s).unwrap();
                let truth = is_tautology_bruteforce(&f, 24).unwrap().is_tautology();
                assert_eq!(d.decide(&f).accept, truth, "{s}");
                assert_eq!(run_decider(kind, &f).unwrap().accept, truth);
            }
        }
    }
}
