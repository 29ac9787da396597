//! Formula families, circuit tautologies, designated-family proofs and the
//! uniformity filter.
//!
//! `cargo run --release --example generators`

use ktlab::formula::is_tautology_bruteforce;
use ktlab::generators::{builtin_families, family_spec, gen_designated_family, gen_tau_g, uniformity_filter, ToyFunctionSpec};
use ktlab::proofs::{verify, ProofSystemId};
use ktlab::BitString;

fn main() {
    for fam in builtin_families() {
        let f = fam.instance(2).unwrap();
        println!("{:>10} #2: {}", fam.tag, f.render());
    }

    // tau(g)_b asserts that b is not in the range of g.
    let g = ToyFunctionSpec::duplicate_bits(2);
    let b = BitString::parse01("0110").unwrap();
    let tau = gen_tau_g(&g, &b).unwrap();
    println!("tau(g)_0110: {} bits, tautology: {}", tau.size_bits(), is_tautology_bruteforce(&tau, 24).unwrap().is_tautology());
    println!("0011 is in the range: {:?}", gen_tau_g(&g, &BitString::parse01("0011").unwrap()).err());

    // Designate the padded excluded middle: 1^n proves member n.
    let fam = family_spec("padded-em").unwrap();
    let q = gen_designated_family(ProofSystemId::Tt, &fam, 8).unwrap();
    let proof = BitString::ones(5);
    println!("in {q}, 11111 proves {}", verify(&q, proof.bits()).unwrap().render());

    // Formulas with short descriptions fail the filter; short random-looking ones pass.
    let big = fam.instance(1200).unwrap();
    let seed = ktlab::generators::seed_program("padded-em", 1200).unwrap();
    println!("padded-em #1200 ({} bits): {:?}", big.size_bits(), verdict(uniformity_filter(&big, 14, &[seed])));
    let small = ktlab::formula::parse_formula("T").unwrap();
    println!("T ({} bits): {:?}", small.size_bits(), verdict(uniformity_filter(&small, 14, &[])));
}

fn verdict(v: ktlab::generators::FilterVerdict) -> String {
    match v {
        ktlab::generators::FilterVerdict::Fail { threshold, certificate } => format!("fail, Kt <= {} < {threshold}", certificate.level),
        other => format!("{other:?}"),
    }
}
