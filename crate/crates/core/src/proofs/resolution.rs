//! Resolution and extended resolution refutations.
//!
//! Bit encoding of the body that follows the formula (see [`super::envelope`]):
//! a marker bit `1`, then one record per derived line. The clause pool starts
//! with the clauses of `negate_to_cnf(τ)` in order; each record appends to it.
//! With `P` clauses in the pool and `V` variables in scope, a record is two
//! fixed-width indices of `⌈log₂ P⌉` bits each:
//!
//! * `a ≠ b`: resolve pool clauses `a` and `b` on their unique clashing variable;
//! * `a = b = 0` (ER only): an extension, followed by two literals `l1, l2`, each
//!   `⌈log₂ V⌉` bits of `var−1` plus a sign bit (`1` = negative), with
//!   `var(l1) < var(l2)`. It introduces `v = V+1 ≡ l1 ∧ l2` and appends the
//!   clauses `{¬v, l1}`, `{¬v, l2}`, `{v, ¬l1, ¬l2}`.
//!
//! The last record must derive the empty clause; a body with no records is
//! accepted only when an input clause is already empty. Since every bit string
//! that is a resolution proof is also an extended-resolution proof, the
//! embedding of R into ER is the identity on bit strings.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use super::VerifyError;
use crate::bits::{ceil_log2, push_fixed, read_fixed, BitString};
use crate::formula::{Clause, Cnf, Lit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("pivot {0} must occur positively in the first clause and negatively in the second")]
    PivotMissing(u32),
    #[error("resolvent contains the complementary pair on variable {0}")]
    Tautological(u32),
}

/// `(c1 ∖ {p}) ∪ (c2 ∖ {¬p})`.
pub fn resolve(c1: &Clause, c2: &Clause, pivot: u32) -> Result<Clause, ResolveError> {
    let p = pivot as Lit;
    if !c1.contains(p) || !c2.contains(-p) {
        return Err(ResolveError::PivotMissing(pivot));
    }
    let lits: Vec<Lit> = c1.lits().iter().filter(|&&l| l != p).chain(c2.lits().iter().filter(|&&l| l != -p)).copied().collect();
    Clause::new(lits).map_err(|e| match e {
        crate::formula::FormulaError::TautologicalClause(v) => ResolveError::Tautological(v),
        _ => unreachable!("resolvent literals are nonzero"),
    })
}

/// The unique variable occurring with opposite signs in `a` and `b`, oriented
/// so that it is positive in the first returned clause.
pub fn clash(a: &Clause, b: &Clause) -> Option<(u32, bool)> {
    let mut found = None;
    for &l in a.lits() {
        if b.contains(-l) {
            if found.is_some() {
                return None;
            }
            found = Some((l.unsigned_abs(), l > 0));
        }
    }
    found
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Line {
    Input(usize),
    /// `left` holds `+pivot`, `right` holds `−pivot`.
    Resolve { left: usize, right: usize, pivot: u32 },
    /// One of the three defining clauses (`part` 0, 1, 2) of `var ≡ a ∧ b`.
    /// The three parts are consecutive lines.
    Extend { var: u32, a: Lit, b: Lit, part: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionProof {
    pub target: Cnf,
    pub lines: Vec<Line>,
}

pub(crate) fn extension_clauses(v: u32, a: Lit, b: Lit) -> [Vec<Lit>; 3] {
    let v = v as Lit;
    [vec![-v, a], vec![-v, b], vec![v, -a, -b]]
}

impl ResolutionProof {
    pub fn has_extensions(&self) -> bool {
        self.lines.iter().any(|l| matches!(l, Line::Extend { .. }))
    }

    /// Checks every line and returns the clause of each. The last line must be empty.
    pub fn check(&self, allow_extensions: bool) -> Result<Vec<Clause>, VerifyError> {
        let mut clauses: Vec<Clause> = Vec::with_capacity(self.lines.len());
        let mut var_count = self.target.var_count();
        let mut k = 0;
        while k < self.lines.len() {
            match &self.lines[k] {
                Line::Input(c) => {
                    let c = self.target.clauses().get(*c).ok_or(VerifyError::BadIndex)?;
                    clauses.push(c.clone());
                }
                Line::Resolve { left, right, pivot } => {
                    if *left >= k || *right >= k {
                        return Err(VerifyError::BadIndex);
                    }
                    let r = resolve(&clauses[*left], &clauses[*right], *pivot).map_err(|e| match e {
                        ResolveError::PivotMissing(_) => VerifyError::NoPivot,
                        ResolveError::Tautological(_) => VerifyError::TautologicalResolvent,
                    })?;
                    clauses.push(r);
                }
                Line::Extend { var, a, b, part } => {
                    if !allow_extensions {
                        return Err(VerifyError::ExtensionNotAllowed);
                    }
                    let fresh = *var == var_count + 1;
                    let well_formed = *part == 0
                        && fresh
                        && a.unsigned_abs() < b.unsigned_abs()
                        && *a != 0
                        && b.unsigned_abs() <= var_count
                        && k + 2 < self.lines.len()
                        && (1..3).all(|j| self.lines[k + j] == Line::Extend { var: *var, a: *a, b: *b, part: j as u8 });
                    if !well_formed {
                        return Err(VerifyError::BadExtension);
                    }
                    for lits in extension_clauses(*var, *a, *b) {
                        clauses.push(Clause::new(lits).expect("distinct variables"));
                    }
                    var_count += 1;
                    k += 3;
                    continue;
                }
            }
            k += 1;
        }
        match clauses.last() {
            Some(c) if c.is_empty() => Ok(clauses),
            _ => Err(VerifyError::NotRefutation),
        }
    }

    /// The body bits (marker included). Inputs are implicit in the encoding, so
    /// `Input` lines only serve as references.
    pub fn encode_body(&self) -> BitString {
        let m = self.target.clauses().len();
        let mut pool_index = vec![usize::MAX; self.lines.len()];
        let mut bits = vec![true];
        let mut pool = m;
        let mut vars = self.target.var_count();
        let mut k = 0;
        while k < self.lines.len() {
            match &self.lines[k] {
                Line::Input(c) => pool_index[k] = *c,
                Line::Resolve { left, right, .. } => {
                    let w = ceil_log2(pool as u64);
                    push_fixed(&mut bits, pool_index[*left] as u64, w);
                    push_fixed(&mut bits, pool_index[*right] as u64, w);
                    pool_index[k] = pool;
                    pool += 1;
                }
                Line::Extend { a, b, .. } => {
                    let w = ceil_log2(pool as u64);
                    push_fixed(&mut bits, 0, w);
                    push_fixed(&mut bits, 0, w);
                    let lw = ceil_log2(vars as u64);
                    for l in [a, b] {
                        push_fixed(&mut bits, (l.unsigned_abs() - 1) as u64, lw);
                        bits.push(*l < 0);
                    }
                    for j in 0..3 {
                        pool_index[k + j] = pool + j;
                    }
                    pool += 3;
                    vars += 1;
                    k += 3;
                    continue;
                }
            }
            k += 1;
        }
        BitString::from_bits(bits)
    }

    /// Decodes a body for `target`. Structural errors only; call [`check`](Self::check) for soundness.
    pub fn decode_body(target: &Cnf, body: &[bool], allow_extensions: bool) -> Result<ResolutionProof, VerifyError> {
        if body.first() != Some(&true) {
            return Err(VerifyError::BadMarker);
        }
        let m = target.clauses().len();
        let mut lines: Vec<Line> = (0..m).map(Line::Input).collect();
        let mut clauses: Vec<Clause> = target.clauses().to_vec();
        let mut vars = target.var_count();
        let mut pos = 1;
        while pos < body.len() {
            let w = ceil_log2(clauses.len() as u64);
            let a = read_fixed(body, &mut pos, w).ok_or(VerifyError::Truncated)? as usize;
            let b = read_fixed(body, &mut pos, w).ok_or(VerifyError::Truncated)? as usize;
            if a == b {
                if a != 0 || !allow_extensions {
                    return Err(if allow_extensions { VerifyError::BadIndex } else { VerifyError::ExtensionNotAllowed });
                }
                if vars == 0 {
                    return Err(VerifyError::BadExtension);
                }
                let lw = ceil_log2(vars as u64);
                let mut lit = || -> Result<Lit, VerifyError> {
                    let v = read_fixed(body, &mut pos, lw).ok_or(VerifyError::Truncated)? + 1;
                    let neg = *body.get(pos).ok_or(VerifyError::Truncated)?;
                    pos += 1;
                    if v > vars as u64 {
                        return Err(VerifyError::BadExtension);
                    }
                    Ok(if neg { -(v as Lit) } else { v as Lit })
                };
                let la = lit()?;
                let lb = lit()?;
                if la.unsigned_abs() >= lb.unsigned_abs() {
                    return Err(VerifyError::BadExtension);
                }
                vars += 1;
                for (j, lits) in extension_clauses(vars, la, lb).into_iter().enumerate() {
                    lines.push(Line::Extend { var: vars, a: la, b: lb, part: j as u8 });
                    clauses.push(Clause::new(lits).expect("distinct variables"));
                }
                continue;
            }
            if a >= clauses.len() || b >= clauses.len() {
                return Err(VerifyError::BadIndex);
            }
            let (pivot, a_positive) = clash(&clauses[a], &clauses[b]).ok_or(VerifyError::NoPivot)?;
            let (left, right) = if a_positive { (a, b) } else { (b, a) };
            let r = resolve(&clauses[left], &clauses[right], pivot).map_err(|_| VerifyError::TautologicalResolvent)?;
            lines.push(Line::Resolve { left, right, pivot });
            clauses.push(r);
        }
        Ok(ResolutionProof { target: target.clone(), lines })
    }

    /// Text form: `i: lits <- in c`, `i: lits <- j k pivot`, `i: ext v := l1 & l2`
    /// (an extension occupies lines `i..i+3`).
    pub fn to_text(&self) -> String {
        let clauses = self.check(true).unwrap_or_default();
        let mut s = String::new();
        let mut k = 0;
        while k < self.lines.len() {
            let lits = |k: usize| {
                clauses.get(k).map(|c| c.lits().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default()
            };
            match &self.lines[k] {
                Line::Input(c) => writeln!(s, "{k}: {} <- in {c}", lits(k)).unwrap(),
                Line::Resolve { left, right, pivot } => writeln!(s, "{k}: {} <- {left} {right} {pivot}", lits(k)).unwrap(),
                Line::Extend { var, a, b, .. } => {
                    writeln!(s, "{k}: ext {var} := {a} & {b}").unwrap();
                    k += 3;
                    continue;
                }
            }
            k += 1;
        }
        s
    }

    /// Parses [`to_text`](Self::to_text) output. Clause literals in the text are
    /// informational and re-derived by [`check`](Self::check).
    pub fn from_text(target: &Cnf, text: &str) -> Result<ResolutionProof, VerifyError> {
        let mut lines = Vec::new();
        for raw in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (idx, rest) = raw.split_once(':').ok_or(VerifyError::BadText)?;
            if idx.trim().parse::<usize>().ok() != Some(lines.len()) {
                return Err(VerifyError::BadText);
            }
            let rest = rest.trim();
            if let Some(def) = rest.strip_prefix("ext") {
                let (v, d) = def.split_once(":=").ok_or(VerifyError::BadText)?;
                let (a, b) = d.split_once('&').ok_or(VerifyError::BadText)?;
                let num = |s: &str| s.trim().parse::<i64>().map_err(|_| VerifyError::BadText);
                let (var, a, b) = (num(v)? as u32, num(a)? as Lit, num(b)? as Lit);
                for part in 0..3 {
                    lines.push(Line::Extend { var, a, b, part });
                }
                continue;
            }
            let (_, just) = rest.split_once("<-").ok_or(VerifyError::BadText)?;
            let toks: Vec<&str> = just.split_whitespace().collect();
            let line = match toks.as_slice() {
                ["in", c] => Line::Input(c.parse().map_err(|_| VerifyError::BadText)?),
                [l, r, p] => Line::Resolve {
                    left: l.parse().map_err(|_| VerifyError::BadText)?,
                    right: r.parse().map_err(|_| VerifyError::BadText)?,
                    pivot: p.parse().map_err(|_| VerifyError::BadText)?,
                },
                _ => return Err(VerifyError::BadText),
            };
            lines.push(line);
        }
        Ok(ResolutionProof { target: target.clone(), lines })
    }
}

/// Builds a resolution refutation of `cnf` by the decision-tree method: branch on
/// the smallest unassigned variable (false first) and resolve the two falsified
/// clauses on the branch variable. `None` if `cnf` is satisfiable.
pub fn refute(cnf: &Cnf) -> Option<ResolutionProof> {
    let mut b = TreeBuilder { cnf, lines: (0..cnf.clauses().len()).map(Line::Input).collect(), clauses: cnf.clauses().to_vec(), memo: HashMap::new() };
    for (i, c) in cnf.clauses().iter().enumerate() {
        b.memo.entry(c.clone()).or_insert(i);
    }
    let mut assign = vec![None; cnf.var_count() as usize + 1];
    let root = b.go(&mut assign)?;
    // Re-emit the final clause as the last line when it is an input.
    if root != b.lines.len() - 1 || !b.clauses[root].is_empty() {
        return finish_with_input(b, root);
    }
    Some(ResolutionProof { target: cnf.clone(), lines: b.lines })
}

fn finish_with_input(b: TreeBuilder, root: usize) -> Option<ResolutionProof> {
    // The empty clause is an input: a proof consisting of that input line alone.
    debug_assert!(b.clauses[root].is_empty());
    Some(ResolutionProof { target: b.cnf.clone(), lines: vec![Line::Input(root)] })
}

struct TreeBuilder<'a> {
    cnf: &'a Cnf,
    lines: Vec<Line>,
    clauses: Vec<Clause>,
    memo: HashMap<Clause, usize>,
}

impl TreeBuilder<'_> {
    /// Returns the line of a clause falsified by `assign`.
    fn go(&mut self, assign: &mut Vec<Option<bool>>) -> Option<usize> {
        for (i, c) in self.cnf.clauses().iter().enumerate() {
            if c.lits().iter().all(|&l| assign[l.unsigned_abs() as usize] == Some(l < 0)) {
                return Some(i);
            }
        }
        let v = (1..assign.len()).find(|&v| assign[v].is_none())?;
        assign[v] = Some(false);
        let d0 = self.go(assign);
        assign[v] = None;
        let d0 = d0?;
        if !self.clauses[d0].contains(v as Lit) {
            return Some(d0);
        }
        assign[v] = Some(true);
        let d1 = self.go(assign);
        assign[v] = None;
        let d1 = d1?;
        if !self.clauses[d1].contains(-(v as Lit)) {
            return Some(d1);
        }
        let r = resolve(&self.clauses[d0], &self.clauses[d1], v as u32).ok()?;
        if let Some(&k) = self.memo.get(&r) {
            return Some(k);
        }
        self.lines.push(Line::Resolve { left: d0, right: d1, pivot: v as u32 });
        self.clauses.push(r.clone());
        let k = self.lines.len() - 1;
        self.memo.insert(r, k);
        Some(k)
    }
}

/// Restricts a refutation of `C` by the partial assignment `rho` (`var → value`)
/// to a refutation of `C|ρ` with at most as many lines. Satisfied clauses are
/// dropped, falsified literals removed, and lines whose restriction collapses
/// onto a premise are replaced by that premise.
pub fn restrict_proof(pi: &ResolutionProof, rho: &HashMap<u32, bool>) -> Result<ResolutionProof, VerifyError> {
    if pi.has_extensions() {
        return Err(VerifyError::ExtensionNotAllowed);
    }
    let clauses = pi.check(false)?;
    let restrict = |c: &Clause| -> Option<Clause> {
        let mut out = Vec::new();
        for &l in c.lits() {
            match rho.get(&l.unsigned_abs()) {
                Some(&v) if v == (l > 0) => return None,
                Some(_) => {}
                None => out.push(l),
            }
        }
        Some(Clause::new(out).expect("subset of a clause"))
    };
    // Restricted target: surviving input clauses, in order.
    let mut new_inputs = Vec::new();
    let mut input_map = vec![None; pi.target.clauses().len()];
    for (i, c) in pi.target.clauses().iter().enumerate() {
        if let Some(r) = restrict(c) {
            input_map[i] = Some(new_inputs.len());
            new_inputs.push(r);
        }
    }
    let target = Cnf::new(pi.target.var_count(), new_inputs).expect("same variable range");

    // map[k] = new line whose clause is a subset of clause k restricted; None if satisfied.
    let mut map: Vec<Option<usize>> = vec![None; pi.lines.len()];
    let mut lines = Vec::new();
    let mut new_clauses: Vec<Clause> = Vec::new();
    for (k, line) in pi.lines.iter().enumerate() {
        map[k] = match line {
            Line::Input(c) => input_map[*c].map(|ni| {
                lines.push(Line::Input(ni));
                new_clauses.push(target.clauses()[ni].clone());
                lines.len() - 1
            }),
            Line::Resolve { left, right, pivot } => {
                if restrict(&clauses[k]).is_none() {
                    None
                } else {
                    match (map[*left], map[*right]) {
                        (Some(l), Some(r)) => {
                            let p = *pivot as Lit;
                            let lc = &new_clauses[l];
                            let rc = &new_clauses[r];
                            if !lc.contains(p) {
                                Some(l)
                            } else if !rc.contains(-p) {
                                Some(r)
                            } else {
                                let res = resolve(lc, rc, *pivot).map_err(|_| VerifyError::TautologicalResolvent)?;
                                lines.push(Line::Resolve { left: l, right: r, pivot: *pivot });
                                new_clauses.push(res);
                                Some(lines.len() - 1)
                            }
                        }
                        (Some(l), None) => Some(l),
                        (None, Some(r)) => Some(r),
                        (None, None) => unreachable!("an unsatisfied resolvent has an unsatisfied premise"),
                    }
                }
            }
            Line::Extend { .. } => unreachable!(),
        };
    }
    let last = map[pi.lines.len() - 1].expect("the empty clause is never satisfied");
    // Keep only the ancestors of the final line so it comes last.
    let mut keep = vec![false; lines.len()];
    keep[last] = true;
    for k in (0..=last).rev() {
        if keep[k] {
            if let Line::Resolve { left, right, .. } = lines[k] {
                keep[left] = true;
                keep[right] = true;
            }
        }
    }
    let mut renum = vec![usize::MAX; lines.len()];
    let mut out = Vec::new();
    for k in 0..=last {
        if keep[k] {
            renum[k] = out.len();
            out.push(match &lines[k] {
                Line::Resolve { left, right, pivot } => Line::Resolve { left: renum[*left], right: renum[*right], pivot: *pivot },
                other => other.clone(),
            });
        }
    }
    Ok(ResolutionProof { target, lines: out })
}
