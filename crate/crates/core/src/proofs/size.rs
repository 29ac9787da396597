//! Exact minimal proof sizes `s_P(τ)` at toy scale.
//!
//! Resolution and extended resolution use an iterative-deepening search over
//! derivations, bounded by the bit cost of the encoding in
//! [`super::resolution`]. The search only discards derivations that some other
//! derivation of no greater bit cost dominates:
//!
//! * a resolvent subsumed by an earlier clause (replace it by that clause);
//! * a resolvent never used later, except the final empty clause;
//! * adjacent independent lines out of a fixed order (swapping them never
//!   raises the cost): two resolutions by resolvent, two extensions by their
//!   literal pair, and an extension before a resolution that does not use it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::backward::{min_lines_refutation, BackwardResult};
use super::decider::run_decider;
use super::dpll::{dpll_solve, DpllResult};
use super::resolution::{clash, extension_clauses, resolve};
use super::{ProofSystemId, PROOF_BODY_MARKER_BITS};
use crate::bits::ceil_log2;
use crate::formula::{is_tautology_bruteforce, negate_to_cnf, Clause, Cnf, Formula, Lit, DEFAULT_TAUTOLOGY_CAP};

/// Largest `capBits` accepted by [`s_p_exact`].
pub const MAX_CAP_BITS: u64 = 1 << 20;
/// Largest clausal variable count for the resolution searches.
pub const MAX_SEARCH_VARS: u32 = 12;
/// Search nodes per call before giving up with `Unknown`.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;
const SEEN_LIMIT: usize = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum SizeValue {
    Exact(u64),
    /// No proof of at most this many bits exists (or the node budget ran out
    /// first, in which case the bound is `0`).
    Unknown(u64),
}

impl SizeValue {
    pub fn exact(self) -> Option<u64> {
        match self {
            SizeValue::Exact(v) => Some(v),
            SizeValue::Unknown(_) => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SizeError {
    #[error("capBits {0} exceeds the feasibility guard")]
    CapGuard(u64),
    #[error("the clausal form has {0} variables, more than the search guard allows")]
    TooManyVariables(u32),
    #[error("not a tautology, so it has no proof")]
    NotTautology,
}

/// `min{|w| : P(w) = τ}` if it is at most `cap_bits`.
pub fn s_p_exact(p: &ProofSystemId, tau: &Formula, cap_bits: u64) -> Result<SizeValue, SizeError> {
    s_p_exact_budgeted(p, tau, cap_bits, DEFAULT_NODE_BUDGET)
}

pub fn s_p_exact_budgeted(p: &ProofSystemId, tau: &Formula, cap_bits: u64, nodes: u64) -> Result<SizeValue, SizeError> {
    if cap_bits > MAX_CAP_BITS {
        return Err(SizeError::CapGuard(cap_bits));
    }
    let header = tau.size_bits() as u64;
    let within = |v: u64| if v <= cap_bits { SizeValue::Exact(v) } else { SizeValue::Unknown(cap_bits) };
    match p {
        ProofSystemId::Tt => {
            let n = tau.var_count();
            if n > DEFAULT_TAUTOLOGY_CAP {
                return Err(SizeError::CapGuard(cap_bits));
            }
            if !is_tautology_bruteforce(tau, DEFAULT_TAUTOLOGY_CAP).map_err(|_| SizeError::CapGuard(cap_bits))?.is_tautology() {
                return Err(SizeError::NotTautology);
            }
            Ok(within(header + (1u64 << n)))
        }
        ProofSystemId::Ps { .. } => match dpll_solve(&negate_to_cnf(tau)) {
            DpllResult::Sat(_) => Err(SizeError::NotTautology),
            DpllResult::Unsat(t) => Ok(within(header + PROOF_BODY_MARKER_BITS + t.encode().len() as u64)),
        },
        ProofSystemId::Decider { decider: kind } => {
            let run = run_decider(*kind, tau).map_err(|_| SizeError::CapGuard(cap_bits))?;
            if !run.accept {
                return Err(SizeError::NotTautology);
            }
            Ok(within(header + PROOF_BODY_MARKER_BITS + run.record.len() as u64))
        }
        ProofSystemId::Res | ProofSystemId::Er => {
            let cnf = negate_to_cnf(tau);
            if cnf.var_count() > MAX_SEARCH_VARS {
                return Err(SizeError::TooManyVariables(cnf.var_count()));
            }
            if cnf.brute_force_model().is_some() {
                return Err(SizeError::NotTautology);
            }
            let body_cap = cap_bits.saturating_sub(header);
            if cap_bits < header + 1 {
                return Ok(SizeValue::Unknown(cap_bits));
            }
            let search = if matches!(p, ProofSystemId::Res) {
                min_res_bits(&cnf, body_cap, nodes)
            } else {
                min_refutation_bits(&cnf, true, body_cap, nodes)
            };
            Ok(match search {
                Search::Found(b) => SizeValue::Exact(header + b),
                Search::NoneWithin => SizeValue::Unknown(cap_bits),
                Search::OutOfNodes => SizeValue::Unknown(0),
            })
        }
        ProofSystemId::QPrime { base, family } => {
            let base_size = match s_p_exact_budgeted(base, tau, cap_bits, nodes) {
                Ok(v) => Some(v),
                Err(SizeError::NotTautology) => return Err(SizeError::NotTautology),
                Err(SizeError::TooManyVariables(_)) => None,
                Err(e) => return Err(e),
            };
            let unary = (1..=cap_bits.min(crate::generators::FAMILY_SCAN_LIMIT)).find(|&n| crate::generators::family_instance(family, n).as_ref() == Some(tau));
            Ok(match (unary, base_size) {
                (Some(n), Some(SizeValue::Exact(b))) => SizeValue::Exact(n.min(b)),
                (Some(n), _) => SizeValue::Exact(n),
                (None, Some(v)) => v,
                (None, None) => return Err(SizeError::TooManyVariables(negate_to_cnf(tau).var_count())),
            })
        }
    }
}

/// Bits of the body of a refutation with `lines` derived lines from `inputs` clauses.
pub(crate) fn resolution_body_bits(inputs: usize, lines: usize) -> u64 {
    PROOF_BODY_MARKER_BITS + (0..lines).map(|k| Dfs::line_cost(inputs + k)).sum::<u64>()
}

/// Resolution body sizes depend only on the number of derived lines, so the
/// goal-directed line minimizer gives the exact bit minimum.
fn min_res_bits(cnf: &Cnf, cap: u64, nodes: u64) -> Search {
    let m = cnf.clauses().len();
    let mut max_lines = 0;
    while resolution_body_bits(m, max_lines + 1) <= cap {
        max_lines += 1;
    }
    match min_lines_refutation(cnf, max_lines, nodes) {
        BackwardResult::Found(pi) => {
            let derived = pi.lines.iter().filter(|l| matches!(l, super::resolution::Line::Resolve { .. })).count();
            let bits = pi.encode_body().len() as u64;
            debug_assert_eq!(bits, resolution_body_bits(m, derived));
            Search::Found(bits)
        }
        BackwardResult::NoneWithin => Search::NoneWithin,
        BackwardResult::OutOfNodes => Search::OutOfNodes,
    }
}

/// The forward search restricted to plain resolution. Kept as an independent
/// cross-check of the goal-directed search.
pub fn s_res_forward(tau: &Formula, cap_bits: u64, nodes: u64) -> Result<SizeValue, SizeError> {
    let cnf = negate_to_cnf(tau);
    if cnf.brute_force_model().is_some() {
        return Err(SizeError::NotTautology);
    }
    let header = tau.size_bits() as u64;
    Ok(match min_refutation_bits(&cnf, false, cap_bits.saturating_sub(header), nodes) {
        Search::Found(b) => SizeValue::Exact(header + b),
        Search::NoneWithin => SizeValue::Unknown(cap_bits),
        Search::OutOfNodes => SizeValue::Unknown(0),
    })
}

enum Search {
    Found(u64),
    NoneWithin,
    OutOfNodes,
}

/// Minimal body length (marker included) of a refutation of `cnf`, if at most `cap`.
fn min_refutation_bits(cnf: &Cnf, allow_ext: bool, cap: u64, nodes: u64) -> Search {
    if cnf.clauses().iter().any(Clause::is_empty) {
        return Search::Found(PROOF_BODY_MARKER_BITS);
    }
    let mut s = Dfs {
        pool: cnf.clauses().to_vec(),
        inputs: cnf.clauses().len(),
        derived: vec![false; cnf.clauses().len()],
        uses: vec![0; cnf.clauses().len()],
        unused: 0,
        vars: cnf.var_count(),
        last: Last::None,
        allow_ext,
        bound: 0,
        next_bound: u64::MAX,
        nodes_left: nodes,
        seen: HashMap::new(),
    };
    let mut bound = PROOF_BODY_MARKER_BITS + s.lower_bound();
    while bound <= cap {
        s.bound = bound;
        s.next_bound = u64::MAX;
        s.seen.clear();
        match s.go(PROOF_BODY_MARKER_BITS) {
            Some(true) => return Search::Found(bound),
            None => return Search::OutOfNodes,
            Some(false) => {}
        }
        if s.next_bound == u64::MAX {
            return Search::NoneWithin;
        }
        bound = s.next_bound;
    }
    Search::NoneWithin
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Last {
    None,
    Resolve(usize),
    /// First pool index of the three defining clauses, and the literal pair.
    Extend(usize, Lit, Lit),
}

struct Dfs {
    pool: Vec<Clause>,
    inputs: usize,
    derived: Vec<bool>,
    uses: Vec<u32>,
    unused: u64,
    vars: u32,
    last: Last,
    allow_ext: bool,
    bound: u64,
    next_bound: u64,
    nodes_left: u64,
    /// Derivation states already explored in this iteration, with the cost they were reached at.
    seen: HashMap<(Vec<Clause>, Vec<u8>, Last), u64>,
}

impl Dfs {
    fn line_cost(pool: usize) -> u64 {
        2 * ceil_log2(pool as u64) as u64
    }

    /// Cost of the resolutions still needed, at the cheapest positions.
    fn lower_bound(&self) -> u64 {
        let min_width = self.pool.iter().map(Clause::len).min().unwrap_or(0) as u64;
        let r = self.unused.saturating_sub(1).max(min_width).max(1);
        (0..r).map(|k| Self::line_cost(self.pool.len() + k as usize)).sum()
    }

    /// `Some(found)`, or `None` once the node budget is spent.
    fn go(&mut self, cost: u64) -> Option<bool> {
        if self.nodes_left == 0 {
            return None;
        }
        self.nodes_left -= 1;
        let estimate = cost + self.lower_bound();
        if estimate > self.bound {
            self.next_bound = self.next_bound.min(estimate);
            return Some(false);
        }
        let key = (self.pool[self.inputs..].to_vec(), self.line_states(), self.last);
        match self.seen.get(&key) {
            Some(&c) if c <= cost => return Some(false),
            _ if self.seen.len() < SEEN_LIMIT => {
                self.seen.insert(key, cost);
            }
            _ => {}
        }
        let p = self.pool.len();
        let step = Self::line_cost(p);
        for a in 0..p {
            for b in a + 1..p {
                if !self.resolve_order_ok(a, b) {
                    continue;
                }
                let Some((pivot, a_pos)) = clash(&self.pool[a], &self.pool[b]) else { continue };
                let (l, r) = if a_pos { (a, b) } else { (b, a) };
                let Ok(res) = resolve(&self.pool[l], &self.pool[r], pivot) else { continue };
                if let Last::Resolve(k) = self.last {
                    if a != k && b != k && res <= self.pool[k] {
                        continue;
                    }
                }
                if res.is_empty() {
                    // Only the final line may be left unused, and it is this one.
                    let consumed = [a, b].iter().filter(|&&i| self.derived[i] && self.uses[i] == 0).count() as u64;
                    if self.unused == consumed {
                        if cost + step <= self.bound {
                            return Some(true);
                        }
                        self.next_bound = self.next_bound.min(cost + step);
                    }
                    continue;
                }
                if self.pool.iter().any(|c| c.subsumes(&res)) {
                    continue;
                }
                let saved = self.last;
                self.push_resolvent(a, b, res);
                let found = self.go(cost + step);
                self.pop_resolvent(a, b);
                self.last = saved;
                if found != Some(false) {
                    return found;
                }
            }
        }
        if self.allow_ext && self.vars >= 2 {
            let lit_w = ceil_log2(self.vars as u64) as u64 + 1;
            let ext_cost = step + 2 * lit_w;
            for va in 1..=self.vars {
                for vb in va + 1..=self.vars {
                    for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let (la, lb) = (sa * va as Lit, sb * vb as Lit);
                        if let Last::Extend(_, pa, pb) = self.last {
                            let prev_var = self.vars;
                            if va != prev_var && vb != prev_var && (la.unsigned_abs(), la < 0, lb.unsigned_abs(), lb < 0) <= (pa.unsigned_abs(), pa < 0, pb.unsigned_abs(), pb < 0) {
                                continue;
                            }
                        }
                        let saved = (self.last, self.vars);
                        self.vars += 1;
                        let first = self.pool.len();
                        for lits in extension_clauses(self.vars, la, lb) {
                            self.pool.push(Clause::new(lits).expect("distinct variables"));
                            self.derived.push(false);
                            self.uses.push(0);
                        }
                        self.last = Last::Extend(first, la, lb);
                        let found = self.go(cost + ext_cost);
                        self.pool.truncate(first);
                        self.derived.truncate(first);
                        self.uses.truncate(first);
                        (self.last, self.vars) = saved;
                        if found != Some(false) {
                            return found;
                        }
                    }
                }
            }
        }
        Some(false)
    }


    fn line_states(&self) -> Vec<u8> {
        (self.inputs..self.pool.len()).map(|i| if !self.derived[i] { 0 } else if self.uses[i] == 0 { 2 } else { 1 }).collect()
    }

    fn resolve_order_ok(&self, a: usize, b: usize) -> bool {
        match self.last {
            Last::Extend(first, _, _) => (first..first + 3).contains(&a) || (first..first + 3).contains(&b),
            _ => true,
        }
    }

    fn push_resolvent(&mut self, a: usize, b: usize, res: Clause) {
        for i in [a, b] {
            if self.derived[i] && self.uses[i] == 0 {
                self.unused -= 1;
            }
            self.uses[i] += 1;
        }
        self.pool.push(res);
        self.derived.push(true);
        self.uses.push(0);
        self.unused += 1;
        self.last = Last::Resolve(self.pool.len() - 1);
    }

    fn pop_resolvent(&mut self, a: usize, b: usize) {
        self.pool.pop();
        self.derived.pop();
        self.uses.pop();
        self.unused -= 1;
        for i in [a, b] {
            self.uses[i] -= 1;
            if self.derived[i] && self.uses[i] == 0 {
                self.unused += 1;
            }
        }
    }
}
