//! Universal proof search and the information efficiency i_P.
//!
//! `cargo run --release --example search`

use ktlab::formula::parse_formula;
use ktlab::machine::assemble;
use ktlab::proofs::ProofSystemId;
use ktlab::search::{i_p, info_search_bp, levin_search_ap, totalize, BuiltinSearcher, ProgramSearcher, SearchReport, Searcher};

fn main() {
    let tau = parse_formula("(x1 | ~x1)").unwrap();

    let bp = info_search_bp(&ProofSystemId::Tt, &tau, 22);
    let found = bp.found.as_ref().expect("within the level cap");
    println!("B_P: i_TT = {} via a {}-bit program, {} host steps", found.level, found.certificate.program.len(), bp.host_steps());

    let capped = i_p(&ProofSystemId::Tt, &tau, found.level - 1);
    println!("with a lower cap the answer is a bound: {capped:?}");

    let ap = levin_search_ap(&ProofSystemId::Tt, &tau, 10_000_000, &[]);
    println!("A_P: program #{:?} after {} rounds, {} charged steps", ap.program_index, ap.rounds, ap.charged_steps);

    // A hand-written searcher: copy the formula and append the one-bit body.
    // Its running time t bounds i_P from above: i_P <= |e| + ceil(log2 t).
    let e = assemble("cpy; out 1; out 1").unwrap();
    let s = ProgramSearcher { program: e.clone(), step_cap: 1 << 20 };
    let run = s.search(&tau);
    println!("{}: {} steps, i_P <= {}", s.name(), run.steps, e.len() as u64 + ktlab::bits::ceil_log2(run.steps) as u64);

    let total = totalize(BuiltinSearcher { system: ProofSystemId::Res });
    println!("{} on x1: {:?}", total.name(), total.run_total(&parse_formula("x1").unwrap()));

    let report = SearchReport::measure(&ProofSystemId::Res, &tau, 22, 10_000_000, 4096);
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
