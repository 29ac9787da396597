//! Goal-directed search for refutations with the fewest derived lines.
//!
//! Starting from the goal `∅`, each open goal `D` is split into premises
//! `A = S1 ∪ {v}` and `B = S2 ∪ {¬v}` with `S1 ∪ S2 = D` and `v ∉ D`. A premise
//! is closed by an input clause or an already planned clause (cycles are
//! rejected), or becomes a new goal. A minimal derivation never contains a
//! clause that an input subsumes, so such premises are pruned.

use std::collections::HashMap;

use super::resolution::{clash, Line, ResolutionProof};
use crate::formula::{Clause, Cnf, Lit};

pub(crate) enum BackwardResult {
    Found(ResolutionProof),
    NoneWithin,
    OutOfNodes,
}

struct Plan {
    clauses: Vec<Clause>,
    /// Premises of each planned clause: `Ok(input index)` or `Err(planned index)`.
    premises: Vec<Option<[Result<usize, usize>; 2]>>,
    index: HashMap<Clause, usize>,
}

struct Backward<'a> {
    cnf: &'a Cnf,
    inputs: HashMap<Clause, usize>,
    plan: Plan,
    open: Vec<usize>,
    limit: usize,
    nodes_left: u64,
}

/// A refutation with the fewest derived lines, if it has at most `max_lines`.
pub(crate) fn min_lines_refutation(cnf: &Cnf, max_lines: usize, nodes: u64) -> BackwardResult {
    let mut inputs = HashMap::new();
    for (i, c) in cnf.clauses().iter().enumerate() {
        inputs.entry(c.clone()).or_insert(i);
    }
    if let Some(&i) = inputs.get(&Clause::empty()) {
        return BackwardResult::Found(ResolutionProof { target: cnf.clone(), lines: vec![Line::Input(i)] });
    }
    let mut b = Backward {
        cnf,
        inputs,
        plan: Plan { clauses: vec![Clause::empty()], premises: vec![None], index: HashMap::from([(Clause::empty(), 0)]) },
        open: vec![0],
        limit: 0,
        nodes_left: nodes,
    };
    for limit in 1..=max_lines {
        b.limit = limit;
        match b.go() {
            Some(true) => return BackwardResult::Found(b.to_proof()),
            Some(false) => {}
            None => return BackwardResult::OutOfNodes,
        }
    }
    BackwardResult::NoneWithin
}

impl Backward<'_> {
    fn go(&mut self) -> Option<bool> {
        if self.nodes_left == 0 {
            return None;
        }
        self.nodes_left -= 1;
        // Fail first: the open goal with the fewest splits.
        let Some(k) = (0..self.open.len()).min_by_key(|&k| self.plan.clauses[self.open[k]].len()) else { return Some(true) };
        let g = self.open.remove(k);
        let d = self.plan.clauses[g].clone();
        let w = d.len();
        for v in 1..=self.cnf.var_count() as Lit {
            if d.contains(v) || d.contains(-v) {
                continue;
            }
            // Each literal of D goes to A only (0), B only (1) or both (2).
            for split in 0..3usize.pow(w as u32) {
                let (mut a, mut bl) = (vec![v], vec![-v]);
                let mut s = split;
                for &l in d.lits() {
                    match s % 3 {
                        0 => a.push(l),
                        1 => bl.push(l),
                        _ => {
                            a.push(l);
                            bl.push(l);
                        }
                    }
                    s /= 3;
                }
                let a = Clause::new(a).expect("v not in D");
                let bc = Clause::new(bl).expect("v not in D");
                let saved = (self.plan.clauses.len(), self.open.len());
                let pa = self.premise(g, a);
                let pb = pa.and_then(|pa| self.premise(g, bc).map(|pb| [pa, pb]));
                if let Some(ps) = pb {
                    if self.plan.clauses.len() <= self.limit {
                        self.plan.premises[g] = Some(ps);
                        match self.go() {
                            Some(false) => {}
                            other => return other,
                        }
                        self.plan.premises[g] = None;
                    }
                }
                self.rollback(saved);
            }
        }
        self.open.insert(k, g);
        Some(false)
    }

    fn rollback(&mut self, (len, open): (usize, usize)) {
        for c in self.plan.clauses.drain(len..) {
            self.plan.index.remove(&c);
        }
        self.plan.premises.truncate(len);
        self.open.truncate(open);
    }

    /// Closes or plans a premise of goal `g`; `None` if it is pruned.
    fn premise(&mut self, g: usize, c: Clause) -> Option<Result<usize, usize>> {
        if let Some(&i) = self.inputs.get(&c) {
            return Some(Ok(i));
        }
        if let Some(&j) = self.plan.index.get(&c) {
            return (!self.reaches(j, g)).then_some(Err(j));
        }
        if self.cnf.clauses().iter().any(|i| i.subsumes(&c)) {
            return None;
        }
        let j = self.plan.clauses.len();
        self.plan.index.insert(c.clone(), j);
        self.plan.clauses.push(c);
        self.plan.premises.push(None);
        self.open.push(j);
        Some(Err(j))
    }

    /// Whether planned clause `from` depends on `to` (or is it).
    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut stack = vec![from];
        let mut seen = vec![false; self.plan.clauses.len()];
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            if std::mem::replace(&mut seen[x], true) {
                continue;
            }
            if let Some(ps) = &self.plan.premises[x] {
                stack.extend(ps.iter().filter_map(|p| p.err()));
            }
        }
        false
    }

    fn to_proof(&self) -> ResolutionProof {
        let m = self.cnf.clauses().len();
        let mut lines: Vec<Line> = (0..m).map(Line::Input).collect();
        let mut line_of = vec![usize::MAX; self.plan.clauses.len()];
        // Post-order from the root puts premises first.
        fn emit(b: &Backward, x: usize, lines: &mut Vec<Line>, line_of: &mut Vec<usize>, clauses: &mut Vec<Clause>) {
            if line_of[x] != usize::MAX {
                return;
            }
            let ps = b.plan.premises[x].expect("closed plan");
            let mut refs = [0; 2];
            for (k, p) in ps.iter().enumerate() {
                refs[k] = match *p {
                    Ok(i) => i,
                    Err(j) => {
                        emit(b, j, lines, line_of, clauses);
                        line_of[j]
                    }
                };
            }
            let (pivot, first_pos) = clash(&clauses[refs[0]], &clauses[refs[1]]).expect("split premises clash once");
            let (left, right) = if first_pos { (refs[0], refs[1]) } else { (refs[1], refs[0]) };
            lines.push(Line::Resolve { left, right, pivot });
            clauses.push(b.plan.clauses[x].clone());
            line_of[x] = lines.len() - 1;
        }
        let mut clauses = self.cnf.clauses().to_vec();
        emit(self, 0, &mut lines, &mut line_of, &mut clauses);
        ResolutionProof { target: self.cnf.clone(), lines }
    }
}
