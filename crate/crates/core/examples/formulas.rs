//! Parse, render, evaluate and clausify DeMorgan formulas.
//!
//! `cargo run --example formulas`

use std::collections::BTreeMap;

use ktlab::formula::{from_dimacs, is_tautology_bruteforce, negate_to_cnf, parse_formula, to_dimacs, Assignment};

fn main() {
    let f = parse_formula("((x1 -> x2) | (x2 -> x1))").expect("valid formula");
    println!("canonical rendering: {}", f.render());
    println!("|tau| = {} bits, {} variables", f.size_bits(), f.var_count());

    let a = Assignment(vec![true, false]);
    println!("value under x1=1, x2=0: {}", f.evaluate(&a).unwrap());
    println!("tautology: {}", is_tautology_bruteforce(&f, 24).unwrap().is_tautology());

    let g = parse_formula("(x1 & x2)").unwrap();
    match is_tautology_bruteforce(&g, 24).unwrap() {
        ktlab::formula::TautologyCheck::Falsified(a) => println!("{} is falsified by {:?}", g.render(), a.0),
        ktlab::formula::TautologyCheck::Tautology => unreachable!(),
    }

    let partial = BTreeMap::from([(1, true)]);
    let s = g.substitute_constants(&partial);
    println!("{} with x1=1 becomes {} (renaming {:?})", g.render(), s.formula.render(), s.renaming);

    // The definitional clause form of the negation is unsatisfiable iff f is a tautology.
    let cnf = negate_to_cnf(&f);
    let text = to_dimacs(&cnf);
    print!("negation in DIMACS:\n{text}");
    assert_eq!(from_dimacs(&text).unwrap(), cnf);
    println!("satisfiable: {}", cnf.brute_force_model().is_some());
}
