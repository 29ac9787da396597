//! The pigeonhole principle: exact resolution sizes for small instances and
//! polynomial-size extended resolution proofs.
//!
//! `cargo run --release --example php_er`

use ktlab::generators::{er_proof_php, er_refutation_php, gen_php, php_tautology};
use ktlab::proofs::{s_p_exact, verify, ProofSystemId};

fn main() {
    for n in 1..=4 {
        let cnf = gen_php(n);
        println!("PHP_{n}: {} variables, {} clauses, satisfiable: {}", cnf.var_count(), cnf.clauses().len(), cnf.brute_force_model().is_some());
    }

    println!("\n n  |tau|  ER proof bits  extension lines");
    for n in 1..=5 {
        let tau = php_tautology(n);
        let w = er_proof_php(n);
        assert_eq!(verify(&ProofSystemId::Er, w.bits()).unwrap(), tau);
        let ext = er_refutation_php(n).lines.iter().filter(|l| matches!(l, ktlab::proofs::resolution::Line::Extend { .. })).count();
        println!("{n:>2} {:>6} {:>14} {:>16}", tau.size_bits(), w.len(), ext);
    }

    for n in 1..=2 {
        let s = s_p_exact(&ProofSystemId::Res, &php_tautology(n), 1 << 16).unwrap();
        println!("s_Res(PHP_{n}) = {s:?}");
    }
}
