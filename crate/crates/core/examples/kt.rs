//! Time-bounded Kolmogorov complexity with certificates.
//!
//! `cargo run --example kt`

use ktlab::kt::{compose_certificates, it_info, kt, kt_search, print_certificate, verify_certificate, KtCache, SearchCost};
use ktlab::BitString;

fn main() {
    let eps = BitString::new();
    for s in ["0", "1111", "0110", "10101010", "11111111"] {
        let w = BitString::parse01(s).unwrap();
        let c = kt(&w, &eps, 16);
        println!("Kt({s}) = {} (|e| = {}, t = {}, exact = {})", c.level, c.program.len(), c.time, c.exact);
        assert!(verify_certificate(&c).is_ok());
    }

    let w = BitString::parse01("100111").unwrap();
    let given = kt(&w, &w, 16);
    println!("Kt(w|w) = {} versus Kt(w) = {}", given.level, kt(&w, &eps, 16).level);

    let mut cost = SearchCost::default();
    kt_search(&w, &eps, 16, &mut cost);
    println!("the exhaustive search ran {} programs for {} steps", cost.runs, cost.steps);

    // Chain Kt(v|u) and Kt(w|v) into a certificate for Kt(w|u).
    let u = BitString::parse01("01").unwrap();
    let v = BitString::parse01("0110").unwrap();
    let cv = kt(&v, &u, 14);
    let cw = print_certificate(&w, &v);
    let chained = compose_certificates(&cv, &cw).unwrap();
    println!("composed: level {} <= {} + {} + c", chained.level, cv.level, cw.level);

    let it = it_info(&w, &w, 16);
    println!("It(w : w) = {} (exact = {})", it.value, it.exact);

    let mut cache = KtCache::in_memory();
    cache.kt(&w, &eps, 16, &[]).unwrap();
    cache.kt(&w, &eps, 16, &[]).unwrap();
    println!("cache: {} hit, {} miss", cache.hits, cache.misses);
}
