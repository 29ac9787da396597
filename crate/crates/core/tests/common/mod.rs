//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use ktlab::formula::Formula;
use proptest::prelude::*;
use rand::Rng;

/// Random formulas over `x1..=x{vars}` (not necessarily using every variable).
pub fn arb_formula(vars: u32, depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => (1..=vars).prop_map(Formula::Var),
        1 => any::<bool>().prop_map(Formula::Const),
    ];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::And),
            prop::collection::vec(inner, 0..4).prop_map(Formula::Or),
        ]
    })
}

pub fn random_formula<R: Rng>(rng: &mut R, vars: u32, depth: u32) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return if rng.gen_ratio(1, 8) { Formula::Const(rng.gen()) } else { Formula::Var(rng.gen_range(1..=vars)) };
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, vars, depth - 1)),
        k => {
            let n = rng.gen_range(2..4);
            let cs = (0..n).map(|_| random_formula(rng, vars, depth - 1)).collect();
            if k == 1 {
                Formula::And(cs)
            } else {
                Formula::Or(cs)
            }
        }
    }
}

/// Evaluates a canonical rendering directly from its text, with variable
/// `k` taking bit `k-1` of `mask`.
pub fn eval_text(text: &str, mask: u64) -> bool {
    let b = text.as_bytes();
    let mut pos = 0;
    let v = eval_at(b, &mut pos, mask);
    assert_eq!(pos, b.len(), "trailing text in {text}");
    v
}

fn eval_at(b: &[u8], pos: &mut usize, mask: u64) -> bool {
    match b[*pos] {
        b'T' => {
            *pos += 1;
            true
        }
        b'F' => {
            *pos += 1;
            false
        }
        b'~' => {
            *pos += 1;
            !eval_at(b, pos, mask)
        }
        b'x' => {
            *pos += 1;
            let start = *pos;
            while *pos < b.len() && b[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let k: u32 = std::str::from_utf8(&b[start..*pos]).unwrap().parse().unwrap();
            (mask >> (k - 1)) & 1 == 1
        }
        b'(' => {
            *pos += 1;
            // `(&)`, `(|)`, `(&a)`, `(|a)`, or `(a op b op …)`.
            let mut op = None;
            if b[*pos] == b'&' || b[*pos] == b'|' {
                op = Some(b[*pos]);
                *pos += 1;
            }
            let mut vals = Vec::new();
            while b[*pos] != b')' {
                if !vals.is_empty() {
                    op = Some(b[*pos]);
                    *pos += 1;
                }
                vals.push(eval_at(b, pos, mask));
            }
            *pos += 1;
            match op {
                Some(b'&') => vals.iter().all(|&v| v),
                Some(b'|') => vals.iter().any(|&v| v),
                _ => vals[0],
            }
        }
        c => panic!("unexpected byte {c}"),
    }
}

pub fn naive_tautology(f: &Formula) -> bool {
    let text = f.render();
    (0..1u64 << f.var_count()).all(|m| eval_text(&text, m))
}

/// Renumbers the variables of `f` to `1..=k` in order of first appearance, so
/// the index set is contiguous.
pub fn compact(f: &Formula) -> Formula {
    let mut seen = Vec::new();
    collect(f, &mut seen);
    f.map_vars(&|v| seen.iter().position(|&s| s == v).unwrap() as u32 + 1)
}

fn collect(f: &Formula, seen: &mut Vec<u32>) {
    match f {
        Formula::Var(v) => {
            if !seen.contains(v) {
                seen.push(*v)
            }
        }
        Formula::Const(_) => {}
        Formula::Not(c) => collect(c, seen),
        Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| collect(c, seen)),
    }
}

/// Plain backtracking satisfiability: assign variables in index order and
/// backtrack as soon as some clause has all its literals false.
pub fn backtrack_sat(var_count: u32, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    fn falsified(c: &[i32], vals: &[Option<bool>]) -> bool {
        c.iter().all(|&l| vals[l.unsigned_abs() as usize] == Some(l < 0))
    }
    fn go(v: usize, n: usize, clauses: &[Vec<i32>], vals: &mut Vec<Option<bool>>) -> bool {
        if clauses.iter().any(|c| falsified(c, vals)) {
            return false;
        }
        if v > n {
            return true;
        }
        for b in [false, true] {
            vals[v] = Some(b);
            if go(v + 1, n, clauses, vals) {
                return true;
            }
        }
        vals[v] = None;
        false
    }
    let n = var_count as usize;
    let mut vals = vec![None; n + 1];
    go(1, n, clauses, &mut vals).then(|| vals[1..].iter().map(|v| v.unwrap_or(false)).collect())
}

pub fn cnf_lits(c: &ktlab::formula::Cnf) -> Vec<Vec<i32>> {
    c.clauses().iter().map(|cl| cl.lits().to_vec()).collect()
}

/// Proptest settings without on-disk failure persistence.
pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}
