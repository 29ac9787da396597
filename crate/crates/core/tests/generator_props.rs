mod common;

use common::{backtrack_sat, cnf_lits, naive_tautology};
use ktlab::formula::{parse_formula, Formula};
use ktlab::generators::{
    builtin_families, er_proof_php, family_instance, family_spec, filter_threshold, gen_designated_family, gen_mu_eta, gen_php, gen_tau_g, registry_from_json,
    uniformity_filter, CircuitError, FilterVerdict, Gate, GateOp, ToyFunctionSpec,
};
use ktlab::proofs::{verify, ProofSystemId};
use ktlab::BitString;
use proptest::prelude::*;

/// Straight-line circuit evaluation written against the JSON layout.
fn eval_circuit(g: &ToyFunctionSpec, x: u64) -> Vec<bool> {
    let mut wires: Vec<bool> = (0..g.inputs).map(|i| (x >> (g.inputs - 1 - i)) & 1 == 1).collect();
    for gate in &g.gates {
        let a = |k: usize| wires[gate.args[k]];
        let v = match gate.op {
            GateOp::Not => !a(0),
            GateOp::And => a(0) && a(1),
            GateOp::Or => a(0) || a(1),
            GateOp::Xor => a(0) != a(1),
        };
        wires.push(v);
    }
    g.outputs.iter().map(|&o| wires[o]).collect()
}

fn arb_circuit() -> impl Strategy<Value = ToyFunctionSpec> {
    (1usize..=3, 0usize..=3).prop_flat_map(|(n, k)| {
        let gates: Vec<_> = (0..k)
            .map(|j| {
                let wires = n + j;
                prop_oneof![
                    (0..wires).prop_map(|a| Gate { op: GateOp::Not, args: vec![a] }),
                    (prop_oneof![Just(GateOp::And), Just(GateOp::Or), Just(GateOp::Xor)], 0..wires, 0..wires)
                        .prop_map(|(op, a, b)| Gate { op, args: vec![a, b] }),
                ]
            })
            .collect();
        (gates, prop::collection::vec(0..n + k, 1..=4)).prop_map(move |(gates, outputs)| ToyFunctionSpec { inputs: n, gates, outputs })
    })
}

proptest! {
    #![proptest_config(common::cases(150))]

    #[test]
    fn range_avoidance_rejects_exactly_the_range(g in arb_circuit()) {
        let m = g.outputs.len();
        let range: std::collections::HashSet<Vec<bool>> = (0..1u64 << g.inputs).map(|x| eval_circuit(&g, x)).collect();
        for bi in 0..1u64 << m {
            let b = BitString::from_index(bi, m);
            match gen_tau_g(&g, &b) {
                Ok(tau) => {
                    prop_assert!(!range.contains(b.bits()));
                    prop_assert!(naive_tautology(&tau), "{}", tau.render());
                }
                Err(CircuitError::InRange(x)) => {
                    prop_assert!(range.contains(b.bits()));
                    prop_assert_eq!(g.eval(x.bits()), b.bits().to_vec());
                }
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}

#[test]
fn family_instances_are_tautologies() {
    for (tag, up_to) in [("php", 3), ("padded-em", 32), ("chain", 10), ("em-spread", 8)] {
        for n in 1..=up_to {
            let f = family_instance(tag, n).unwrap();
            assert!(naive_tautology(&f), "{tag} {n}");
        }
    }
    for n in 1..=4 {
        let c = gen_php(n);
        assert!(backtrack_sat(c.var_count(), &cnf_lits(&c)).is_none(), "PHP_{n}");
    }
    assert!(family_instance("php", 0).is_none());
    assert!(family_instance("nope", 1).is_none());
}

#[test]
fn er_proofs_grow_polynomially() {
    let sizes: Vec<f64> = (1..=5).map(|n| er_proof_php(n).len() as f64).collect();
    for n in 1..=5u32 {
        let w = er_proof_php(n);
        assert_eq!(verify(&ProofSystemId::Er, w.bits()).unwrap(), ktlab::generators::php_tautology(n));
    }
    for k in 1..sizes.len() {
        assert!(sizes[k] > sizes[k - 1]);
        // Log-log slope between consecutive n stays below degree 6.
        let slope = (sizes[k] / sizes[k - 1]).ln() / ((k + 1) as f64 / k as f64).ln();
        assert!(slope < 6.0, "slope {slope} at n = {}", k + 1);
    }
}

#[test]
fn hard_bit_formulas_for_permutations() {
    let first_bit = ToyFunctionSpec { inputs: 3, gates: vec![], outputs: vec![0] };
    for h in [ToyFunctionSpec::identity(3), ToyFunctionSpec::rotate_left(3)] {
        for bi in 0..8 {
            let b = BitString::from_index(bi, 3);
            let mu = gen_mu_eta(&h, &first_bit, &b, None).unwrap();
            assert!(naive_tautology(&mu));
            // eta with the right value of the hard bit as phi.
            let x0 = (0..8).find(|&x| eval_circuit(&h, x) == b.bits()).unwrap();
            let bit = eval_circuit(&first_bit, x0)[0];
            let phi = if bit { Formula::Var(1) } else { Formula::not(Formula::Var(1)) };
            assert!(naive_tautology(&gen_mu_eta(&h, &first_bit, &b, Some(&phi)).unwrap()));
        }
    }
    let dup = ToyFunctionSpec::duplicate_bits(2);
    assert!(matches!(gen_mu_eta(&dup, &first_bit, &BitString::from_index(0, 2), None), Err(CircuitError::Length { .. })));
}

#[test]
fn designated_families_and_registry() {
    let fam = family_spec("padded-em").unwrap();
    let q = gen_designated_family(ProofSystemId::Res, &fam, 8).unwrap();
    assert_eq!(verify(&q, &[true; 3]).unwrap(), family_instance("padded-em", 3).unwrap());
    let json = serde_json::to_string(&builtin_families()).unwrap();
    assert_eq!(registry_from_json(&json).unwrap(), builtin_families());
    let mut bogus = fam.clone();
    bogus.tag = "unknown".into();
    assert!(gen_designated_family(ProofSystemId::Tt, &bogus, 4).is_err());
}

#[test]
fn filter_thresholds_and_verdicts() {
    for (bits, t) in [(8, 9), (16, 16), (256, 64), (1000, 100), (1024, 100), (8192, 169)] {
        assert_eq!(filter_threshold(bits), t, "{bits}");
    }
    let t = parse_formula("T").unwrap();
    assert_eq!(uniformity_filter(&t, 14, &[]), FilterVerdict::Pass { threshold: 9 });
    let f = parse_formula("F").unwrap();
    assert!(matches!(uniformity_filter(&f, 14, &[]), FilterVerdict::Pass { .. }));
    let long = family_instance("padded-em", 1100).unwrap();
    let seed = ktlab::generators::seed_program("padded-em", 1100).unwrap();
    match uniformity_filter(&long, 14, &[seed]) {
        FilterVerdict::Fail { threshold, certificate } => {
            assert!(certificate.level < threshold);
            assert!(certificate.verify().is_ok());
        }
        other => panic!("{other:?}"),
    }
    // Without the seed the bounded search cannot reach the threshold.
    assert!(matches!(uniformity_filter(&long, 14, &[]), FilterVerdict::PassUnconfirmed { searched_up_to: 14, .. }));
}
