use std::collections::BTreeMap;
use std::fmt;

use super::FormulaError;
use crate::bits::BitString;

/// Default variable cap for exhaustive tautology checks.
pub const DEFAULT_TAUTOLOGY_CAP: u32 = 24;

/// A DeMorgan formula. Conjunctions and disjunctions are n-ary and keep
/// their children in order; `render` is canonical and `parse(render(f)) == f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(u32),
    Const(bool),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

/// Truth values for variables `1..=n`; `values[i]` belongs to variable `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    /// Variable `i + 1` takes bit `i` of `mask`.
    pub fn from_mask(mask: u64, n: u32) -> Self {
        Assignment((0..n).map(|i| (mask >> i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautologyCheck {
    Tautology,
    Falsified(Assignment),
}

impl TautologyCheck {
    pub fn is_tautology(&self) -> bool {
        matches!(self, TautologyCheck::Tautology)
    }
}

/// Result of [`Formula::substitute_constants`]: the simplified formula and the
/// map from surviving original variables to their new contiguous indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub formula: Formula,
    pub renaming: BTreeMap<u32, u32>,
}

impl Formula {
    pub fn var(i: u32) -> Formula {
        Formula::Var(i)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(children: Vec<Formula>) -> Formula {
        Formula::And(children)
    }

    pub fn or(children: Vec<Formula>) -> Formula {
        Formula::Or(children)
    }

    /// Literal as a formula: `x_k` or `~x_k`.
    pub fn lit(l: i32) -> Formula {
        let v = Formula::Var(l.unsigned_abs());
        if l < 0 {
            Formula::not(v)
        } else {
            v
        }
    }

    /// Largest variable index occurring in the formula (0 if none).
    pub fn var_count(&self) -> u32 {
        match self {
            Formula::Var(i) => *i,
            Formula::Const(_) => 0,
            Formula::Not(c) => c.var_count(),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().map(Formula::var_count).max().unwrap_or(0),
        }
    }

    /// Canonical ASCII rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, s: &mut String) {
        match self {
            Formula::Var(i) => {
                s.push('x');
                s.push_str(&i.to_string());
            }
            Formula::Const(true) => s.push('T'),
            Formula::Const(false) => s.push('F'),
            Formula::Not(c) => {
                s.push('~');
                c.render_into(s);
            }
            Formula::And(cs) => render_nary(s, '&', cs),
            Formula::Or(cs) => render_nary(s, '|', cs),
        }
    }

    /// The rendering as bits, eight per ASCII byte.
    pub fn render_bits(&self) -> BitString {
        BitString::from_bytes(self.render().as_bytes())
    }

    /// `|τ|`: bit length of the canonical rendering.
    pub fn size_bits(&self) -> usize {
        self.render().len() * 8
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool, FormulaError> {
        let need = self.var_count();
        if a.len() < need as usize {
            return Err(FormulaError::AssignmentTooShort { need, got: a.len() });
        }
        Ok(self.eval_with(&|v| a.0[v as usize - 1]))
    }

    /// Evaluates with variable `i` bound to bit `i - 1` of `mask`.
    pub fn eval_mask(&self, mask: u64) -> bool {
        self.eval_with(&|v| (mask >> (v - 1)) & 1 == 1)
    }

    fn eval_with(&self, val: &dyn Fn(u32) -> bool) -> bool {
        match self {
            Formula::Var(i) => val(*i),
            Formula::Const(b) => *b,
            Formula::Not(c) => !c.eval_with(val),
            Formula::And(cs) => cs.iter().all(|c| c.eval_with(val)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval_with(val)),
        }
    }

    /// Substitutes constants and simplifies by constant absorption only, then
    /// renumbers the unassigned variables `1..=varCount` contiguously.
    pub fn substitute_constants(&self, partial: &BTreeMap<u32, bool>) -> Substitution {
        let mut renaming = BTreeMap::new();
        let mut next = 1;
        for v in 1..=self.var_count() {
            if !partial.contains_key(&v) {
                renaming.insert(v, next);
                next += 1;
            }
        }
        let formula = self.subst(partial, &renaming);
        Substitution { formula, renaming }
    }

    fn subst(&self, partial: &BTreeMap<u32, bool>, renaming: &BTreeMap<u32, u32>) -> Formula {
        match self {
            Formula::Var(i) => match partial.get(i) {
                Some(&b) => Formula::Const(b),
                None => Formula::Var(renaming[i]),
            },
            Formula::Const(b) => Formula::Const(*b),
            Formula::Not(c) => match c.subst(partial, renaming) {
                Formula::Const(b) => Formula::Const(!b),
                other => Formula::not(other),
            },
            Formula::And(cs) => absorb(cs, partial, renaming, true),
            Formula::Or(cs) => absorb(cs, partial, renaming, false),
        }
    }

    /// Maps every variable through `f`.
    pub fn map_vars(&self, f: &dyn Fn(u32) -> u32) -> Formula {
        match self {
            Formula::Var(i) => Formula::Var(f(*i)),
            Formula::Const(b) => Formula::Const(*b),
            Formula::Not(c) => Formula::not(c.map_vars(f)),
            Formula::And(cs) => Formula::And(cs.iter().map(|c| c.map_vars(f)).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(|c| c.map_vars(f)).collect()),
        }
    }
}

fn render_nary(s: &mut String, op: char, cs: &[Formula]) {
    s.push('(');
    if cs.len() < 2 {
        s.push(op);
    }
    for (k, c) in cs.iter().enumerate() {
        if k > 0 {
            s.push(op);
        }
        c.render_into(s);
    }
    s.push(')');
}

// `is_and`: the neutral constant is `true` and the absorbing one `false`; dual for Or.
fn absorb(cs: &[Formula], partial: &BTreeMap<u32, bool>, renaming: &BTreeMap<u32, u32>, is_and: bool) -> Formula {
    let mut kept = Vec::with_capacity(cs.len());
    let mut removed = false;
    for c in cs {
        match c.subst(partial, renaming) {
            Formula::Const(b) if b == is_and => removed = true,
            Formula::Const(_) => return Formula::Const(!is_and),
            other => kept.push(other),
        }
    }
    if removed {
        match kept.len() {
            0 => return Formula::Const(is_and),
            1 => return kept.pop().unwrap(),
            _ => {}
        }
    }
    if is_and {
        Formula::And(kept)
    } else {
        Formula::Or(kept)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Exhaustive search for a falsifying assignment, in increasing mask order.
pub fn is_tautology_bruteforce(f: &Formula, cap: u32) -> Result<TautologyCheck, FormulaError> {
    let n = f.var_count();
    if n > cap || n > 62 {
        return Err(FormulaError::CapExceeded { vars: n, cap });
    }
    for mask in 0..(1u64 << n) {
        if !f.eval_mask(mask) {
            return Ok(TautologyCheck::Falsified(Assignment::from_mask(mask, n)));
        }
    }
    Ok(TautologyCheck::Tautology)
}
