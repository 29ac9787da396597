//! Clausal form of `¬f`.
//!
//! `¬f` is pushed into negation normal form with constants absorbed. Top-level
//! conjunctions are split into clauses; a disjunct that is not a literal is
//! replaced by a fresh auxiliary `t` with the full definition `t ↔ g`.
//! Auxiliaries are numbered `varCount(f)+1, …` in depth-first order, so any
//! `¬f` that is already in CNF (e.g. the negation of a rendered CNF) maps to
//! exactly its clauses with no auxiliaries.

use super::{Clause, Cnf, Formula, Lit};

enum Nnf {
    Lit(Lit),
    Const(bool),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    match f {
        Formula::Var(i) => Nnf::Lit(if positive { *i as Lit } else { -(*i as Lit) }),
        Formula::Const(b) => Nnf::Const(*b == positive),
        Formula::Not(c) => nnf(c, !positive),
        Formula::And(cs) => junction(cs, positive, positive),
        Formula::Or(cs) => junction(cs, positive, !positive),
    }
}

fn junction(cs: &[Formula], positive: bool, is_and: bool) -> Nnf {
    let mut out = Vec::new();
    for c in cs {
        match nnf(c, positive) {
            Nnf::Const(b) if b == is_and => {}
            Nnf::Const(_) => return Nnf::Const(!is_and),
            Nnf::And(inner) if is_and => out.extend(inner),
            Nnf::Or(inner) if !is_and => out.extend(inner),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => Nnf::Const(is_and),
        1 => out.pop().unwrap(),
        _ if is_and => Nnf::And(out),
        _ => Nnf::Or(out),
    }
}

struct Builder {
    next_var: u32,
    clauses: Vec<Vec<Lit>>,
}

impl Builder {
    fn fresh(&mut self) -> Lit {
        self.next_var += 1;
        self.next_var as Lit
    }

    /// Literal equivalent to `g` under the emitted definitions.
    fn define(&mut self, g: &Nnf) -> Lit {
        match g {
            Nnf::Lit(l) => *l,
            Nnf::Const(_) => unreachable!("constants are absorbed before clausification"),
            Nnf::And(cs) | Nnf::Or(cs) => {
                let t = self.fresh();
                let lits: Vec<Lit> = cs.iter().map(|c| self.define(c)).collect();
                if matches!(g, Nnf::And(_)) {
                    for &l in &lits {
                        self.clauses.push(vec![-t, l]);
                    }
                    let mut big = vec![t];
                    big.extend(lits.iter().map(|l| -l));
                    self.clauses.push(big);
                } else {
                    let mut big = vec![-t];
                    big.extend(&lits);
                    self.clauses.push(big);
                    for &l in &lits {
                        self.clauses.push(vec![t, -l]);
                    }
                }
                t
            }
        }
    }

    /// The top-level clause for `g`; definitions go to `self.clauses`.
    fn clause_of(&mut self, g: &Nnf) -> Vec<Lit> {
        match g {
            Nnf::Lit(l) => vec![*l],
            Nnf::Or(cs) => cs.iter().map(|c| self.define(c)).collect(),
            Nnf::And(_) | Nnf::Const(_) => unreachable!(),
        }
    }
}

/// Equisatisfiable CNF of `¬f`: `f` is a tautology iff the result is unsatisfiable.
pub fn negate_to_cnf(f: &Formula) -> Cnf {
    let n = f.var_count();
    let mut b = Builder { next_var: n, clauses: Vec::new() };
    // Clauses of the top-level conjunction come first, definitions after.
    let tops: Vec<Vec<Lit>> = match nnf(f, false) {
        Nnf::Const(true) => vec![],
        Nnf::Const(false) => vec![vec![]],
        Nnf::And(cs) => cs.iter().map(|c| b.clause_of(c)).collect(),
        other => vec![b.clause_of(&other)],
    };
    let clauses = tops
        .into_iter()
        .chain(std::mem::take(&mut b.clauses))
        .filter_map(|lits| Clause::new(lits).ok())
        .collect();
    Cnf::new(b.next_var, clauses).expect("auxiliary numbering stays in range")
}
