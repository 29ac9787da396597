//! Small Boolean circuits `g : {0,1}^n → {0,1}^m` and the tautologies built
//! from them: range-avoidance formulas `τ(g)_b` and the hard-bit formulas
//! `μ_b`, `η_b` for toy permutations. Nothing here is cryptographically hard;
//! the toy functions only exercise the constructions.
//!
//! Circuit JSON: `{"inputs": n, "gates": [{"op": "and", "args": [0, 1]}, …],
//! "outputs": [w, …]}`. Wires `0..n` are the inputs, wire `n+k` is gate `k`;
//! a gate may only read lower wires. Ops: `and`, `or`, `xor` (two args), `not`
//! (one arg). Outputs may name any wire, inputs included.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::formula::{Formula, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateOp {
    And,
    Or,
    Xor,
    Not,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub op: GateOp,
    pub args: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyFunctionSpec {
    pub inputs: usize,
    pub gates: Vec<Gate>,
    pub outputs: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {gate} reads wire {wire}, which is not below it")]
    Cyclic { gate: usize, wire: usize },
    #[error("gate {0} has the wrong number of arguments")]
    Arity(usize),
    #[error("output names unknown wire {0}")]
    BadOutput(usize),
    #[error("expected {expected} bits, got {got}")]
    Length { expected: usize, got: usize },
    #[error("b has the preimage {0}")]
    InRange(BitString),
    #[error("not injective: {0} and {1} collide")]
    NotInjective(BitString, BitString),
    #[error("too many inputs for exhaustive checks")]
    TooWide,
}

const MAX_EXHAUSTIVE_INPUTS: usize = 20;

impl ToyFunctionSpec {
    pub fn validate(&self) -> Result<(), CircuitError> {
        for (k, g) in self.gates.iter().enumerate() {
            let want = if g.op == GateOp::Not { 1 } else { 2 };
            if g.args.len() != want {
                return Err(CircuitError::Arity(k));
            }
            if let Some(&w) = g.args.iter().find(|&&w| w >= self.inputs + k) {
                return Err(CircuitError::Cyclic { gate: k, wire: w });
            }
        }
        if let Some(&w) = self.outputs.iter().find(|&&w| w >= self.wire_count()) {
            return Err(CircuitError::BadOutput(w));
        }
        Ok(())
    }

    pub fn wire_count(&self) -> usize {
        self.inputs + self.gates.len()
    }

    pub fn eval(&self, x: &[bool]) -> Vec<bool> {
        let mut w = x.to_vec();
        for g in &self.gates {
            let a = w[g.args[0]];
            let v = match g.op {
                GateOp::Not => !a,
                GateOp::And => a & w[g.args[1]],
                GateOp::Or => a | w[g.args[1]],
                GateOp::Xor => a ^ w[g.args[1]],
            };
            w.push(v);
        }
        self.outputs.iter().map(|&o| w[o]).collect()
    }

    fn inputs_exhaustive(&self) -> Result<impl Iterator<Item = Vec<bool>> + '_, CircuitError> {
        if self.inputs > MAX_EXHAUSTIVE_INPUTS {
            return Err(CircuitError::TooWide);
        }
        Ok((0..1u64 << self.inputs).map(move |k| BitString::from_index(k, self.inputs).into_bits()))
    }

    pub fn preimage(&self, b: &[bool]) -> Result<Option<BitString>, CircuitError> {
        Ok(self.inputs_exhaustive()?.find(|x| self.eval(x) == b).map(BitString::from_bits))
    }

    /// `n → 2n`, each input bit written twice.
    pub fn duplicate_bits(n: usize) -> Self {
        ToyFunctionSpec { inputs: n, gates: vec![], outputs: (0..n).flat_map(|i| [i, i]).collect() }
    }

    /// Rotation left by one position (a bijection on `n` bits).
    pub fn rotate_left(n: usize) -> Self {
        ToyFunctionSpec { inputs: n, gates: vec![], outputs: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn identity(n: usize) -> Self {
        ToyFunctionSpec { inputs: n, gates: vec![], outputs: (0..n).collect() }
    }

    /// `x ↦ (x, x_0 ⊕ x_1, x_0 ∧ x_1, …)`: appends the XOR and AND of each adjacent pair.
    pub fn pair_stretch(n: usize) -> Self {
        let mut gates = Vec::new();
        let mut outputs: Vec<usize> = (0..n).collect();
        for i in 0..n.saturating_sub(1) {
            gates.push(Gate { op: GateOp::Xor, args: vec![i, i + 1] });
            outputs.push(n + gates.len() - 1);
            gates.push(Gate { op: GateOp::And, args: vec![i, i + 1] });
            outputs.push(n + gates.len() - 1);
        }
        ToyFunctionSpec { inputs: n, gates, outputs }
    }
}

/// Clause-level definitions of a circuit over formula variables. Input wire
/// `i` is `inputs[i]`; every gate gets the next fresh variable.
struct Encoder {
    next_var: u32,
    clauses: Vec<Vec<Lit>>,
}

impl Encoder {
    fn fresh(&mut self) -> Lit {
        self.next_var += 1;
        self.next_var as Lit
    }

    fn circuit(&mut self, g: &ToyFunctionSpec, inputs: &[Lit]) -> Vec<Lit> {
        let mut wires = inputs.to_vec();
        for gate in &g.gates {
            let a = wires[gate.args[0]];
            let y = self.fresh();
            match gate.op {
                GateOp::Not => {
                    self.clauses.push(vec![-y, -a]);
                    self.clauses.push(vec![y, a]);
                }
                GateOp::And => {
                    let b = wires[gate.args[1]];
                    self.clauses.extend([vec![-y, a], vec![-y, b], vec![y, -a, -b]]);
                }
                GateOp::Or => {
                    let b = wires[gate.args[1]];
                    self.clauses.extend([vec![y, -a], vec![y, -b], vec![-y, a, b]]);
                }
                GateOp::Xor => {
                    let b = wires[gate.args[1]];
                    self.clauses.extend([vec![-y, a, b], vec![-y, -a, -b], vec![y, -a, b], vec![y, a, -b]]);
                }
            }
            wires.push(y);
        }
        g.outputs.iter().map(|&o| wires[o]).collect()
    }

    fn fix(&mut self, lits: &[Lit], bits: &[bool]) {
        for (&l, &v) in lits.iter().zip(bits) {
            self.clauses.push(vec![if v { l } else { -l }]);
        }
    }

    /// `¬(⋀ clauses ∧ extra)`; clause literals are deduplicated, and clauses that
    /// become tautological (a wire read twice by one gate) are dropped.
    fn negation(self, extra: Option<Formula>) -> Formula {
        let mut parts: Vec<Formula> = self
            .clauses
            .into_iter()
            .filter_map(|mut c| {
                c.sort_by_key(|l| (l.unsigned_abs(), *l < 0));
                c.dedup();
                if c.windows(2).any(|w| w[0] == -w[1]) {
                    return None;
                }
                Some(if c.len() == 1 { Formula::lit(c[0]) } else { Formula::or(c.into_iter().map(Formula::lit).collect()) })
            })
            .collect();
        parts.extend(extra);
        Formula::not(Formula::and(parts))
    }
}

/// `τ(g)_b`: the tautology stating `g(x) ≠ b`, over inputs `x1..xn` and one
/// auxiliary variable per gate. Rejects `b` in the range of `g` with a preimage.
pub fn gen_tau_g(g: &ToyFunctionSpec, b: &BitString) -> Result<Formula, CircuitError> {
    g.validate()?;
    if b.len() != g.outputs.len() {
        return Err(CircuitError::Length { expected: g.outputs.len(), got: b.len() });
    }
    if let Some(x) = g.preimage(b.bits())? {
        return Err(CircuitError::InRange(x));
    }
    let mut e = Encoder { next_var: g.inputs as u32, clauses: Vec::new() };
    let inputs: Vec<Lit> = (1..=g.inputs as Lit).collect();
    let out = e.circuit(g, &inputs);
    e.fix(&out, b.bits());
    Ok(e.negation(None))
}

/// `μ_b = [h(x) = b → B(x) = B(h⁻¹(b))]` when `phi` is `None`, and
/// `η_b = [h(x) = b → φ(x)]` otherwise. `h` must be a bijection on `n` bits and
/// `hard_bit` a circuit with `n` inputs and one output.
pub fn gen_mu_eta(h: &ToyFunctionSpec, hard_bit: &ToyFunctionSpec, b: &BitString, phi: Option<&Formula>) -> Result<Formula, CircuitError> {
    h.validate()?;
    hard_bit.validate()?;
    let n = h.inputs;
    if h.outputs.len() != n || b.len() != n {
        return Err(CircuitError::Length { expected: n, got: if h.outputs.len() != n { h.outputs.len() } else { b.len() } });
    }
    if hard_bit.inputs != n || hard_bit.outputs.len() != 1 {
        return Err(CircuitError::Length { expected: 1, got: hard_bit.outputs.len() });
    }
    // Exhaustive bijectivity check.
    let mut seen = std::collections::HashMap::new();
    for x in h.inputs_exhaustive()? {
        if let Some(prev) = seen.insert(h.eval(&x), x.clone()) {
            return Err(CircuitError::NotInjective(BitString::from_bits(prev), BitString::from_bits(x)));
        }
    }
    let mut e = Encoder { next_var: n as u32, clauses: Vec::new() };
    let inputs: Vec<Lit> = (1..=n as Lit).collect();
    let out = e.circuit(h, &inputs);
    e.fix(&out, b.bits());
    let extra = match phi {
        Some(phi) => {
            if phi.var_count() as usize > n {
                return Err(CircuitError::Length { expected: n, got: phi.var_count() as usize });
            }
            Some(Formula::not(phi.clone()))
        }
        None => {
            let x = seen.get(b.bits()).expect("bijection covers b");
            let value = hard_bit.eval(x)[0];
            let bit = e.circuit(hard_bit, &inputs)[0];
            e.fix(&[bit], &[!value]);
            None
        }
    };
    Ok(e.negation(extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::is_tautology_bruteforce;

    fn taut(f: &Formula) -> bool {
        is_tautology_bruteforce(f, 24).unwrap().is_tautology()
    }

    #[test]
    fn duplicate_bits_range() {
        let g = ToyFunctionSpec::duplicate_bits(1);
        assert!(taut(&gen_tau_g(&g, &BitString::parse01("01").unwrap()).unwrap()));
        assert_eq!(gen_tau_g(&g, &BitString::parse01("11").unwrap()), Err(CircuitError::InRange(BitString::parse01("1").unwrap())));
        let g = ToyFunctionSpec::duplicate_bits(2);
        for k in 0..16 {
            let b = BitString::from_index(k, 4);
            match gen_tau_g(&g, &b) {
                Ok(f) => assert!(taut(&f)),
                Err(CircuitError::InRange(x)) => assert_eq!(g.eval(x.bits()), b.bits()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn mu_for_rotation() {
        let h = ToyFunctionSpec::rotate_left(3);
        let first = ToyFunctionSpec { inputs: 3, gates: vec![], outputs: vec![0] };
        for k in 0..8 {
            let f = gen_mu_eta(&h, &first, &BitString::from_index(k, 3), None).unwrap();
            assert!(taut(&f));
        }
        let collapse = ToyFunctionSpec { inputs: 2, gates: vec![], outputs: vec![0, 0] };
        let hb = ToyFunctionSpec { inputs: 2, gates: vec![], outputs: vec![0] };
        assert!(matches!(gen_mu_eta(&collapse, &hb, &BitString::from_index(0, 2), None), Err(CircuitError::NotInjective(..))));
    }
}
