//! Construct, verify and size proofs in each system.
//!
//! `cargo run --example proofs`

use ktlab::formula::parse_formula;
use ktlab::proofs::{prove, s_p_exact, verify, DeciderKind, ProofObject, ProofSystemId, ProofView};

fn main() {
    let tau = parse_formula("((x1 & x2) -> x1)").unwrap();
    let systems = [
        ProofSystemId::Tt,
        ProofSystemId::Res,
        ProofSystemId::Er,
        ProofSystemId::ps(),
        ProofSystemId::Decider { decider: DeciderKind::BruteForce },
    ];
    println!("tau = {} ({} bits)", tau.render(), tau.size_bits());
    for p in &systems {
        let w = prove(p, &tau).expect("tau is a tautology");
        assert_eq!(verify(p, w.bits()).unwrap(), tau);
        let size = s_p_exact(p, &tau, 4096).unwrap();
        println!("{p:>14}: constructed proof {} bits, shortest {:?}", w.len(), size);
        if let Ok(ProofView::Derivation { proof, .. }) = ProofObject::new(p.clone(), w.clone()).view() {
            print!("{}", proof.to_text());
        }
    }

    // Flipping a body bit breaks the proof.
    let mut w = prove(&ProofSystemId::Res, &tau).unwrap().into_bits();
    let last = w.len() - 1;
    w[last] = !w[last];
    match verify(&ProofSystemId::Res, &w) {
        Ok(f) => println!("still a proof, of {}", f.render()),
        Err(e) => println!("tampered proof rejected: {}", e.code()),
    }

    // A non-tautology has no proof in any system.
    let bad = parse_formula("(x1 | x2)").unwrap();
    println!("proof of {}: {:?}", bad.render(), prove(&ProofSystemId::Tt, &bad).map(|w| w.len()));
}
