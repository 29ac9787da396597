use ktlab::bits::ceil_log2;
use ktlab::kt::{compose_certificates, it_info, kt, kt_search, print_certificate, verify_certificate, KtCache, KtCertificate, RejectReason, SearchCost};
use ktlab::machine::{copy_program, MachineSpec, Program};
use ktlab::BitString;
use proptest::prelude::*;

fn arb_bits(min: usize, max: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), min..=max).prop_map(BitString::from_bits)
}

fn reversed(w: &BitString) -> BitString {
    BitString::from_bits(w.bits().iter().rev().copied().collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conditioning_never_hurts(w in arb_bits(0, 6), u in arb_bits(0, 6)) {
        let plain = kt(&w, &BitString::new(), 14);
        let cond = kt(&w, &u, 14);
        prop_assert!(plain.exact && cond.exact);
        prop_assert!(cond.level <= plain.level);
    }

    #[test]
    fn sandwich_with_reversed_condition(w in arb_bits(1, 8)) {
        let c = kt(&w, &reversed(&w), 16);
        let spec = MachineSpec::measure();
        prop_assert!(ceil_log2(w.len() as u64) as u64 <= c.level);
        prop_assert!(c.level <= w.len() as u64 + 2 * ceil_log2(w.len() as u64 + 1) as u64 + spec.c_print);
    }

    #[test]
    fn results_are_deterministic(w in arb_bits(0, 6)) {
        let a = serde_json::to_string(&kt(&w, &BitString::new(), 14)).unwrap();
        let b = serde_json::to_string(&kt(&w, &BitString::new(), 14)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn triangle_through_two_compositions(u in arb_bits(0, 4), v in arb_bits(0, 5), w in arb_bits(0, 5)) {
        // x -> u -> v -> w with each stage a certificate.
        let x = BitString::new();
        let c1 = kt(&u, &x, 12);
        let c2 = kt(&v, &u, 12);
        let c3 = kt(&w, &v, 12);
        let spec = MachineSpec::measure();
        let bound = |a: &KtCertificate, b: &KtCertificate| a.level + b.level + 2 * ceil_log2(a.level + 1) as u64 + spec.c_comp;
        let vu = compose_certificates(&c1, &c2).unwrap();
        prop_assert!(vu.level <= bound(&c1, &c2));
        let wu = compose_certificates(&vu, &c3).unwrap();
        prop_assert!(wu.level <= bound(&vu, &c3));
        prop_assert!(verify_certificate(&wu).is_ok());
        prop_assert_eq!(&wu.target, &w);
    }
}

#[test]
fn empty_string_and_copy_bounds() {
    let eps = BitString::new();
    let c = kt(&eps, &eps, 8);
    assert!(c.exact && c.level <= MachineSpec::measure().c_print);
    for s in ["0", "1101", "10010110", "111111111111"] {
        let w = BitString::parse01(s).unwrap();
        let c = kt(&w, &w, 18);
        // cpy runs max(1, |w|) steps.
        assert!(c.level <= copy_program().len() as u64 + ceil_log2(w.len() as u64) as u64, "{s}");
    }
}

#[test]
fn exactness_is_the_minimum_level() {
    let w = BitString::parse01("101101").unwrap();
    let c = kt(&w, &BitString::new(), 14);
    assert!(c.exact);
    assert!(kt_search(&w, &BitString::new(), c.level - 1, &mut SearchCost::default()).is_none());
    let capped = kt(&w, &BitString::new(), c.level - 1);
    assert!(!capped.exact && capped.level >= c.level);
}

#[test]
fn rejected_certificates() {
    let w = BitString::parse01("0110").unwrap();
    let good = kt(&w, &BitString::new(), 14);
    let mut old = good.clone();
    old.machine_version = "toyvm-0".into();
    assert_eq!(verify_certificate(&old), Err(RejectReason::Version));
    let mut level = good.clone();
    level.level -= 1;
    assert_eq!(verify_certificate(&level), Err(RejectReason::LevelMismatch));
    let mut wrong = good.clone();
    wrong.target = BitString::parse01("0111").unwrap();
    assert_eq!(verify_certificate(&wrong), Err(RejectReason::WrongOutput));
    let mut short = good;
    short.program = Program(BitString::parse01("1001110000000").unwrap());
    assert!(verify_certificate(&short).is_err());
}

#[test]
fn stage_mismatch_is_an_error() {
    let a = print_certificate(&BitString::parse01("01").unwrap(), &BitString::new());
    let b = print_certificate(&BitString::parse01("1").unwrap(), &BitString::parse01("10").unwrap());
    assert!(compose_certificates(&a, &b).is_err());
}

#[test]
fn information_about_itself() {
    let w = BitString::parse01("110100").unwrap();
    let it = it_info(&w, &w, 16);
    assert!(it.exact && it.value > 0);
    assert_eq!(it_info(&BitString::new(), &w, 16).value, 0);
}

#[test]
fn cache_survives_reopening() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt.jsonl");
    let w = BitString::parse01("100110").unwrap();
    let first = KtCache::open(&path).unwrap().kt(&w, &BitString::new(), 14, &[]).unwrap();
    let mut again = KtCache::open(&path).unwrap();
    assert_eq!(again.kt(&w, &BitString::new(), 14, &[]).unwrap(), first);
    assert_eq!((again.hits, again.misses), (1, 0));
}
