//! Pigeonhole formulas and their polynomial-size extended-resolution refutations.
//!
//! `PHP_n` has pigeons `1..=n+1`, holes `1..=n` and variable `x(i,j) = (i−1)·n + j`
//! ("pigeon i sits in hole j"). Clauses: the pigeon clauses `⋁_j x(i,j)` for each
//! `i`, then the hole clauses `¬x(i,j) ∨ ¬x(i′,j)` ordered by `j`, `i`, `i′`.
//!
//! The refutation reduces `PHP_k` to `PHP_{k−1}` with the definitions
//! `q(i,j) ≡ p(i,j) ∨ (p(i,k) ∧ p(k+1,j))`. Since extensions only define
//! conjunctions, each step introduces `r ≡ p(i,k) ∧ p(k+1,j)` and
//! `s ≡ ¬p(i,j) ∧ ¬r`, and uses the literal `¬s` for `q(i,j)`. At `k = 1` the
//! pigeon clause of the single remaining pigeon becomes the empty clause.

use std::collections::HashMap;

use crate::bits::BitString;
use crate::formula::{negate_to_cnf, Clause, Cnf, Formula, Lit};
use crate::proofs::resolution::{clash, extension_clauses, resolve};
use crate::proofs::{encode_resolution, Line, ResolutionProof};

pub fn php_var(n: u32, pigeon: u32, hole: u32) -> u32 {
    (pigeon - 1) * n + hole
}

/// The `PHP_n` clause set (`n ≥ 1`).
pub fn gen_php(n: u32) -> Cnf {
    assert!(n >= 1, "PHP_n needs at least one hole");
    let mut clauses = Vec::new();
    for i in 1..=n + 1 {
        clauses.push((1..=n).map(|j| php_var(n, i, j) as Lit).collect());
    }
    for j in 1..=n {
        for i in 1..=n + 1 {
            for i2 in i + 1..=n + 1 {
                clauses.push(vec![-(php_var(n, i, j) as Lit), -(php_var(n, i2, j) as Lit)]);
            }
        }
    }
    Cnf::from_lits(n * (n + 1), clauses).expect("well-formed by construction")
}

/// `¬(C_1 ∧ … ∧ C_m)` for the `PHP_n` clauses; a tautology whose clausal negation
/// is exactly [`gen_php`].
pub fn php_tautology(n: u32) -> Formula {
    cnf_negation(&gen_php(n))
}

/// `¬(⋀ clauses)`, writing unit clauses as bare literals.
pub fn cnf_negation(c: &Cnf) -> Formula {
    let parts = c
        .clauses()
        .iter()
        .map(|cl| match cl.lits() {
            [l] => Formula::lit(*l),
            lits => Formula::or(lits.iter().map(|&l| Formula::lit(l)).collect()),
        })
        .collect();
    Formula::not(Formula::and(parts))
}

struct Builder {
    lines: Vec<Line>,
    clauses: Vec<Clause>,
    memo: HashMap<Clause, usize>,
    vars: u32,
}

impl Builder {
    fn res(&mut self, a: usize, b: usize) -> usize {
        let (pivot, a_pos) = clash(&self.clauses[a], &self.clauses[b]).expect("premises clash on one variable");
        let (left, right) = if a_pos { (a, b) } else { (b, a) };
        let r = resolve(&self.clauses[left], &self.clauses[right], pivot).expect("non-tautological resolvent");
        if let Some(&k) = self.memo.get(&r) {
            return k;
        }
        self.lines.push(Line::Resolve { left, right, pivot });
        self.clauses.push(r.clone());
        self.memo.insert(r, self.lines.len() - 1);
        self.lines.len() - 1
    }

    /// Introduces `v ≡ a ∧ b`; returns `v` and the lines of its three clauses.
    fn ext(&mut self, a: Lit, b: Lit) -> (Lit, [usize; 3]) {
        let (a, b) = if a.unsigned_abs() < b.unsigned_abs() { (a, b) } else { (b, a) };
        self.vars += 1;
        let v = self.vars;
        let first = self.lines.len();
        for (part, lits) in extension_clauses(v, a, b).into_iter().enumerate() {
            let c = Clause::new(lits).expect("distinct variables");
            self.memo.entry(c.clone()).or_insert(self.lines.len());
            self.clauses.push(c);
            self.lines.push(Line::Extend { var: v, a, b, part: part as u8 });
        }
        (v as Lit, [first, first + 1, first + 2])
    }

    fn find(&self, lits: &[Lit]) -> usize {
        let c = Clause::new(lits.to_vec()).expect("valid clause");
        *self.memo.get(&c).unwrap_or_else(|| panic!("clause {c} not derived"))
    }
}

/// The extended-resolution refutation of `PHP_n` as a derivation.
pub fn er_refutation_php(n: u32) -> ResolutionProof {
    let target = gen_php(n);
    let mut b = Builder {
        lines: (0..target.clauses().len()).map(Line::Input).collect(),
        clauses: target.clauses().to_vec(),
        memo: HashMap::new(),
        vars: target.var_count(),
    };
    for (i, c) in target.clauses().iter().enumerate() {
        b.memo.entry(c.clone()).or_insert(i);
    }
    // p[i][j]: literal for "pigeon i in hole j" at the current level (1-based).
    let mut p: Vec<Vec<Lit>> = vec![vec![0; n as usize + 1]; n as usize + 2];
    for i in 1..=n + 1 {
        for j in 1..=n {
            p[i as usize][j as usize] = php_var(n, i, j) as Lit;
        }
    }
    for k in (1..=n as usize).rev() {
        // q(i,j) for i ≤ k, j < k, with the lines of its defining clauses.
        let mut q = vec![vec![0 as Lit; k]; k + 1];
        let mut r = vec![vec![0 as Lit; k]; k + 1];
        for i in 1..=k {
            for j in 1..k {
                let (rv, _) = b.ext(p[i][k], p[k + 1][j]);
                let (sv, _) = b.ext(-p[i][j], -rv);
                r[i][j] = rv;
                q[i][j] = -sv;
            }
        }
        // Pigeon clauses of the next level.
        for i in 1..=k {
            let mut a = b.find(&p[i][1..=k]);
            for j in 1..k {
                a = b.res(a, b.find(&[q[i][j], -p[i][j]]));
            }
            let last_pigeon: Vec<Lit> = p[k + 1][1..=k].to_vec();
            let mut c = b.res(b.find(&last_pigeon), b.find(&[-p[i][k], -p[k + 1][k]]));
            for j in 1..k {
                let d = b.res(b.find(&[q[i][j], -r[i][j]]), b.find(&[r[i][j], -p[i][k], -p[k + 1][j]]));
                c = b.res(c, d);
            }
            b.res(a, c);
        }
        // Hole clauses of the next level.
        for j in 1..k {
            for i in 1..=k {
                for i2 in i + 1..=k {
                    let e = b.find(&[-q[i][j], p[i][j], r[i][j]]);
                    let e2 = b.find(&[-q[i2][j], p[i2][j], r[i2][j]]);
                    let y1 = b.res(b.find(&[-r[i][j], p[k + 1][j]]), b.find(&[-p[i2][j], -p[k + 1][j]]));
                    let y2 = b.res(b.find(&[-r[i2][j], p[k + 1][j]]), b.find(&[-p[i][j], -p[k + 1][j]]));
                    let x1 = b.res(b.find(&[-r[i][j], p[i][k]]), b.find(&[-p[i][k], -p[i2][k]]));
                    let x2 = b.res(x1, b.find(&[-r[i2][j], p[i2][k]]));
                    let h = b.find(&[-p[i][j], -p[i2][j]]);
                    let e_h = b.res(e, h);
                    let f1 = b.res(e_h, y1);
                    let e_y2 = b.res(e, y2);
                    let f2 = b.res(e_y2, x2);
                    let g = b.res(e2, f1);
                    b.res(g, f2);
                }
            }
        }
        for i in 1..=k {
            for j in 1..k {
                p[i][j] = q[i][j];
            }
        }
    }
    ResolutionProof { target, lines: b.lines }
}

/// The ER proof string of the `PHP_n` tautology.
pub fn er_proof_php(n: u32) -> BitString {
    let tau = php_tautology(n);
    debug_assert_eq!(negate_to_cnf(&tau), gen_php(n));
    encode_resolution(&tau, &er_refutation_php(n))
}
