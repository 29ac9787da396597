mod common;

use std::collections::HashMap;

use common::{arb_formula, backtrack_sat, cnf_lits, compact, naive_tautology};
use ktlab::formula::{negate_to_cnf, parse_formula, Formula};
use ktlab::generators::{family_instance, gen_php, php_tautology};
use ktlab::proofs::size::s_res_forward;
use ktlab::proofs::{
    dpll_solve, embed_r_in_er, encode_resolution, prove, refute, resolve, restrict_proof, s_p_exact, s_p_exact_budgeted, verify, DpllResult, ProofObject,
    ProofSystemId, ProofView, SizeValue,
};
use ktlab::BitString;
use proptest::prelude::*;

/// Tautologies over at most `vars` variables: random formulas that happen to be
/// tautologies, or `f | ~f` otherwise.
fn arb_tautology(vars: u32) -> impl Strategy<Value = Formula> {
    arb_formula(vars, 3).prop_map(|f| {
        let f = compact(&f);
        if naive_tautology(&f) {
            f
        } else {
            compact(&Formula::Or(vec![f.clone(), Formula::not(f)]))
        }
    })
}

fn systems() -> Vec<ProofSystemId> {
    vec![ProofSystemId::Tt, ProofSystemId::Res, ProofSystemId::Er, ProofSystemId::ps()]
}

/// Tautology check independent of the crate's own procedures.
fn oracle(f: &Formula) -> bool {
    if f.var_count() <= 16 {
        naive_tautology(f)
    } else {
        let c = negate_to_cnf(f);
        backtrack_sat(c.var_count(), &cnf_lits(&c)).is_none()
    }
}

#[derive(Clone, Debug)]
enum Mutation {
    Flip(usize),
    Insert(usize, bool),
    Delete(usize),
    Truncate(usize),
}

fn arb_mutations() -> impl Strategy<Value = Vec<Mutation>> {
    prop::collection::vec(
        prop_oneof![
            4 => any::<usize>().prop_map(Mutation::Flip),
            1 => (any::<usize>(), any::<bool>()).prop_map(|(i, b)| Mutation::Insert(i, b)),
            1 => any::<usize>().prop_map(Mutation::Delete),
            1 => any::<usize>().prop_map(Mutation::Truncate),
        ],
        1..4,
    )
}

fn apply(w: &BitString, ms: &[Mutation]) -> Vec<bool> {
    let mut v = w.bits().to_vec();
    for m in ms {
        let n = v.len().max(1);
        match *m {
            Mutation::Flip(i) if !v.is_empty() => {
                let i = i % v.len();
                v[i] = !v[i];
            }
            Mutation::Insert(i, b) => v.insert(i % (v.len() + 1), b),
            Mutation::Delete(i) if !v.is_empty() => {
                v.remove(i % n);
            }
            Mutation::Truncate(i) => v.truncate(i % n),
            _ => {}
        }
    }
    v
}

proptest! {
    #![proptest_config(common::cases(120))]

    #[test]
    fn every_system_proves_small_tautologies(tau in arb_tautology(3)) {
        for p in systems() {
            let w = prove(&p, &tau).expect("complete at this scale");
            prop_assert_eq!(verify(&p, w.bits()).unwrap(), tau.clone(), "{}", p);
        }
    }

    #[test]
    fn non_tautologies_have_no_proof(f in arb_formula(3, 3).prop_map(|f| compact(&f))) {
        prop_assume!(!naive_tautology(&f));
        for p in systems() {
            prop_assert!(prove(&p, &f).is_none());
        }
    }

    #[test]
    fn mutated_proofs_only_prove_tautologies(tau in arb_tautology(3), ms in arb_mutations()) {
        for p in systems() {
            let w = prove(&p, &tau).unwrap();
            let m = apply(&w, &ms);
            if let Ok(f) = verify(&p, &m) {
                prop_assert!(oracle(&f), "{} accepted a non-tautology {}", p, f.render());
            }
        }
    }

    #[test]
    fn solver_traces_are_unique(tau in arb_tautology(3), ms in arb_mutations()) {
        let p = ProofSystemId::ps();
        let w = prove(&p, &tau).unwrap();
        let m = apply(&w, &ms);
        if verify(&p, &m).as_ref() == Ok(&tau) {
            prop_assert_eq!(m, w.bits().to_vec());
        }
        let DpllResult::Unsat(trace) = dpll_solve(&negate_to_cnf(&tau)) else { panic!("tautology") };
        match (ProofObject::new(p, w)).view().unwrap() {
            ProofView::Trace { trace: t, .. } => prop_assert_eq!(t.events, trace.events),
            other => prop_assert!(false, "unexpected view {:?}", other),
        }
    }

    #[test]
    fn restriction_keeps_a_refutation(tau in arb_tautology(4), bits in any::<u64>(), pick in any::<u64>()) {
        let cnf = negate_to_cnf(&tau);
        let pi = refute(&cnf).unwrap();
        let rho: HashMap<u32, bool> = (1..=cnf.var_count()).filter(|v| (pick >> (v % 64)) & 1 == 1).map(|v| (v, (bits >> (v % 64)) & 1 == 1)).collect();
        let r = restrict_proof(&pi, &rho).unwrap();
        let clauses = r.check(false).unwrap();
        prop_assert!(clauses.last().unwrap().is_empty());
        prop_assert!(r.lines.len() <= pi.lines.len());
        // No surviving clause mentions a restricted variable.
        for c in r.target.clauses() {
            prop_assert!(c.lits().iter().all(|l| !rho.contains_key(&l.unsigned_abs())));
        }
    }

    #[test]
    fn resolution_embeds_into_extended_resolution(tau in arb_tautology(3)) {
        let pi = refute(&negate_to_cnf(&tau)).unwrap();
        let w = encode_resolution(&tau, &pi);
        let e = embed_r_in_er(&tau, &pi).unwrap();
        prop_assert_eq!(e.len(), w.len());
        prop_assert_eq!(e.verify().unwrap(), verify(&ProofSystemId::Res, w.bits()).unwrap());
    }

    #[test]
    fn resolvents_are_implied(a in prop::collection::btree_set(-4i32..=4, 0..4), b in prop::collection::btree_set(-4i32..=4, 0..4), v in 1u32..=4) {
        let mk = |s: &std::collections::BTreeSet<i32>| ktlab::formula::Clause::new(s.iter().copied().filter(|&l| l != 0).collect());
        let (Ok(ca), Ok(cb)) = (mk(&a), mk(&b)) else { return Ok(()) };
        if let Ok(r) = resolve(&ca, &cb, v) {
            for mask in 0..16u64 {
                if ca.eval_mask(mask) && cb.eval_mask(mask) {
                    prop_assert!(r.eval_mask(mask));
                }
            }
        }
    }
}

#[test]
fn size_searches_agree_on_small_formulas() {
    let texts = ["(x1|~x1)", "T", "~F", "((x1&x2)->x1)", "(x1|~(x1&x2))", "((x1->x2)|(x2->x1))", "(~x1|x1|x2)", "~(x1&~x1)"];
    for s in texts {
        let tau = parse_formula(s).unwrap();
        let back = s_p_exact(&ProofSystemId::Res, &tau, 4096).unwrap();
        match s_res_forward(&tau, 4096, 5_000_000).unwrap() {
            SizeValue::Unknown(0) => {}
            fwd => assert_eq!(fwd, back, "{s}"),
        }
        let er = s_p_exact_budgeted(&ProofSystemId::Er, &tau, 4096, 5_000_000).unwrap();
        if let (SizeValue::Exact(e), SizeValue::Exact(r)) = (er, back) {
            assert!(e <= r, "{s}");
        }
        // The constructed proof is never shorter than the minimum.
        let w = prove(&ProofSystemId::Res, &tau).unwrap();
        assert!(back.exact().unwrap() <= w.len() as u64);
    }
}

#[test]
fn designated_family_strings() {
    let q = ProofSystemId::qprime(ProofSystemId::Tt, "padded-em");
    for n in 1..=16u64 {
        assert_eq!(verify(&q, BitString::ones(n as usize).bits()).unwrap(), family_instance("padded-em", n).unwrap());
    }
    for s in ["(x1|~x1)", "T", "((x1&x2)->x1)"] {
        let tau = parse_formula(s).unwrap();
        let w = prove(&ProofSystemId::Tt, &tau).unwrap();
        assert_eq!(verify(&q, w.bits()), verify(&ProofSystemId::Tt, w.bits()));
        let mut bad = w.into_bits();
        bad.push(true);
        assert_eq!(verify(&q, &bad), verify(&ProofSystemId::Tt, &bad));
    }
    assert!(verify(&q, &[]).is_err());
}

#[test]
fn restricting_php2_by_one_variable() {
    let cnf = gen_php(2);
    let pi = refute(&cnf).unwrap();
    for v in 1..=cnf.var_count() {
        for b in [false, true] {
            let r = restrict_proof(&pi, &HashMap::from([(v, b)])).unwrap();
            assert!(r.check(false).unwrap().last().unwrap().is_empty());
            assert!(r.lines.len() <= pi.lines.len());
        }
    }
    let same = restrict_proof(&pi, &HashMap::new()).unwrap();
    assert_eq!(same.target, pi.target);
    assert!(same.lines.len() <= pi.lines.len());
    assert!(php_tautology(2).render().starts_with('~'));
}
