//! Acceptance run: one PASS/FAIL line per criterion, all checks exact unless a
//! tolerance is stated next to the check.

mod common;

use std::collections::BTreeMap;
use std::path::Path;

use common::{backtrack_sat, cnf_lits, compact, naive_tautology, random_formula};
use ktlab::bench::{cmd_gen, cmd_measure, cmd_verify, BenchConfig};
use ktlab::bits::ceil_log2;
use ktlab::formula::{negate_to_cnf, parse_formula, Formula};
use ktlab::generators::{
    er_proof_php, family_instance, filter_threshold, gen_php, php_tautology, seed_program, uniformity_filter, FilterVerdict,
};
use ktlab::kt::{compose_certificates, kt, kt_search, kt_with_witnesses, print_certificate, verify_certificate, KtCertificate, SearchCost};
use ktlab::machine::{assemble, run_bits, MachineSpec};
use ktlab::proofs::{embed_r_in_er, encode_resolution, prove, refute, s_p_exact, verify, ProofSystemId, SizeValue};
use ktlab::search::{fit_power_law, i_p, info_search_bp, ProgramSearcher, Searcher};
use ktlab::BitString;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

/// Fraction by which the two fitted cost constants may differ between runs.
const FIT_TOLERANCE: f64 = 0.20;
const MUTATIONS_PER_SYSTEM: usize = 10_000;

fn all_strings(max_len: usize) -> Vec<BitString> {
    (0..=max_len).flat_map(|n| (0..1u64 << n).map(move |i| BitString::from_index(i, n))).collect()
}

/// Independent Kt oracle: every program of length `≤ budget` runs once with
/// `2^(budget−|e|)` steps; a halting run with output `w` after `s` steps
/// witnesses level `|e| + ⌈log₂ max(s,1)⌉`.
fn naive_kt(w: &BitString, u: &BitString, budget: u64) -> Option<u64> {
    let mut best: Option<u64> = None;
    for len in 0..=budget as usize {
        let t = 1u64 << (budget as usize - len);
        for idx in 0..1u64 << len {
            let e: Vec<bool> = (0..len).rev().map(|k| (idx >> k) & 1 == 1).collect();
            let r = run_bits(&e, u.bits(), t);
            if r.halted() && r.output == *w {
                let level = len as u64 + ceil_log2(r.steps.max(1)) as u64;
                best = Some(best.map_or(level, |b| b.min(level)));
            }
        }
    }
    best
}

fn c1_kt_oracle() -> Outcome {
    let eps = BitString::new();
    let mut n = 0;
    for w in all_strings(6) {
        for u in [eps.clone(), w.clone()] {
            let c = kt(&w, &u, 14);
            let want = naive_kt(&w, &u, 14);
            let got = c.exact.then_some(c.level);
            if got != want || verify_certificate(&c).is_err() {
                return (false, format!("w={w} u={u}: kt {got:?}, oracle {want:?}"));
            }
            n += 1;
        }
    }
    (true, format!("{n} (w,u) pairs agree with the naive oracle at budget 14"))
}

fn c2_sandwich() -> Outcome {
    let c_print = MachineSpec::measure().c_print;
    let mut n = 0;
    for w in all_strings(8).into_iter().filter(|w| !w.is_empty()) {
        let len = w.len() as u64;
        let lower = ceil_log2(len) as u64;
        let upper = len + 2 * ceil_log2(len + 1) as u64 + c_print;
        for u in [BitString::new(), w.reversed()] {
            // Nothing below the lower bound: exhaust every level under it.
            if lower > 0 && kt_search(&w, &u, lower - 1, &mut SearchCost::default()).is_some() {
                return (false, format!("Kt({w}|{u}) < {lower}"));
            }
            let c = kt(&w, &u, 10);
            let p = print_certificate(&w, &u);
            if c.level > upper || p.level > upper || verify_certificate(&c).is_err() || verify_certificate(&p).is_err() {
                return (false, format!("Kt({w}|{u}) certificate level {} > {upper}", c.level));
            }
            n += 1;
        }
    }
    (true, format!("{n} pairs, c_print={c_print}"))
}

fn random_bits(rng: &mut ChaCha8Rng, max: usize) -> BitString {
    let n = rng.gen_range(0..=max);
    BitString::from_bits((0..n).map(|_| rng.gen()).collect())
}

fn c3_composition() -> Outcome {
    let spec = MachineSpec::measure();
    let bound = |a: &KtCertificate, b: &KtCertificate| a.level + b.level + 2 * ceil_log2(a.level + 1) as u64 + spec.c_comp;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_slack = u64::MAX;
    for k in 0..100 {
        let (x, v, w) = (random_bits(&mut rng, 5), random_bits(&mut rng, 6), random_bits(&mut rng, 6));
        let cu = kt(&v, &x, 12);
        let cwu = kt(&w, &v, 12);
        let c = match compose_certificates(&cu, &cwu) {
            Ok(c) => c,
            Err(e) => return (false, format!("composition {k}: {e}")),
        };
        if c.target != w || c.condition != x || verify_certificate(&c).is_err() {
            return (false, format!("composition {k} does not re-execute to its target"));
        }
        if c.level > bound(&cu, &cwu) {
            return (false, format!("composition {k}: level {} > {}", c.level, bound(&cu, &cwu)));
        }
        // Conditioning never costs more than c_ignore.
        let plain = kt(&w, &BitString::new(), 12);
        if plain.exact && kt(&w, &x, 12).level > plain.level + spec.c_ignore {
            return (false, format!("composition {k}: Kt(w|x) exceeds Kt(w) + c_ignore"));
        }
        worst_slack = worst_slack.min(bound(&cu, &cwu) - c.level);
    }
    (true, format!("100 compositions re-executed, c_comp={}, least slack {worst_slack}", spec.c_comp))
}

const SMALL_TAUTOLOGIES: [&str; 22] = [
    "T",
    "~F",
    "(x1|~x1)",
    "(~x1|x1)",
    "(x1|~x1|x2)",
    "((x1&x2)->x1)",
    "~(x1&~x1)",
    "(x1|T)",
    "(x1|(x2|~x2))",
    "((x1&x2&x3)->x2)",
    "(x1|~x1|x2|x3)",
    "((x1&x2)|~x1|~x2)",
    "((x1&(x2&x3))->x3)",
    "~(F&x1)",
    "(T&T)",
    "(x2|~x2|x1)",
    "((x1&x2)->x2)",
    "(x1|~(x1&x2))",
    "(F|T)",
    "(x1|x2|~x2)",
    "((x1|x2)|~x1)",
    "~(x1&~x1&x2)",
];

const MAX_BODY: usize = 16;

fn c4_automatizability() -> Outcome {
    let mut rows = 0;
    let mut proofs_seen = 0;
    for s in SMALL_TAUTOLOGIES {
        let tau = parse_formula(s).unwrap();
        assert!(tau.var_count() <= 4 && naive_tautology(&tau));
        let render = tau.render_bits();
        for p in [ProofSystemId::Tt, ProofSystemId::Res] {
            let bp = info_search_bp(&p, &tau, 24);
            let Some(found) = bp.found else {
                return (false, format!("{s} under {p}: no proof within level 24"));
            };
            let mut min_level: Option<u64> = None;
            for len in 0..=MAX_BODY {
                for idx in 0..1u64 << len {
                    let w = render.concat(&BitString::from_index(idx, len));
                    if verify(&p, w.bits()).as_ref() != Ok(&tau) {
                        continue;
                    }
                    proofs_seen += 1;
                    let c = kt(&w, &render, found.level);
                    if c.exact {
                        min_level = Some(min_level.map_or(c.level, |m| m.min(c.level)));
                    }
                }
            }
            if min_level != Some(found.level) {
                return (false, format!("{s} under {p}: level search {} vs brute force {min_level:?}", found.level));
            }
            rows += 1;
        }
    }
    (true, format!("{rows} (formula, system) rows, {proofs_seen} valid proofs with bodies <= {MAX_BODY} bits"))
}

fn c5_time_law() -> Outcome {
    let suites: [(&str, ProofSystemId, [&str; 5]); 3] = [
        ("cpy; out 1; out 1", ProofSystemId::Tt, ["(x1|~x1)", "(~x1|x1)", "~(x1&~x1)", "(x1|T)", "((x1&x1)->x1)"]),
        ("cpy; rep 4 { out 1 }", ProofSystemId::Tt, ["(x1|~x1|x2)", "((x1&x2)->x1)", "(x1|(x2|~x2))", "((x1&x2)->x2)", "(x1|~(x1&x2))"]),
        ("cpy; out 1", ProofSystemId::Res, ["T", "~F", "(x1|T)", "~(F&x1)", "(T&T)"]),
    ];
    let mut runs = 0;
    for (asm, p, formulas) in &suites {
        let e = assemble(asm).unwrap();
        let searcher = ProgramSearcher { program: e.clone(), step_cap: 1 << 16 };
        for s in formulas {
            let tau = parse_formula(s).unwrap();
            let run = searcher.search(&tau);
            let Some(out) = run.output.filter(|w| verify(p, w.bits()).as_ref() == Ok(&tau)) else {
                return (false, format!("{asm:?} on {s}: no {p} proof"));
            };
            let bound = e.len() as u64 + ceil_log2(run.steps.max(1)) as u64;
            let ip = i_p(p, &tau, bound);
            if !ip.exact || ip.value > bound {
                return (false, format!("{asm:?} on {s}: i_P {ip:?} > {bound}"));
            }
            assert!(!out.is_empty());
            runs += 1;
        }
    }
    (true, format!("{runs} successful runs of 3 searchers within |e| + ceil(log2 t)"))
}

fn bp_cost_points() -> Vec<(u64, u64, u64)> {
    let mut pts = Vec::new();
    for s in SMALL_TAUTOLOGIES {
        let tau = parse_formula(s).unwrap();
        for p in [ProofSystemId::Tt, ProofSystemId::Res] {
            let o = info_search_bp(&p, &tau, 24);
            if let Some(f) = &o.found {
                pts.push((tau.size_bits() as u64, f.level, o.host_steps()));
            }
        }
    }
    pts
}

fn c6_cost_bound() -> Outcome {
    let fit = |pts: &[(u64, u64, u64)]| {
        let xy: Vec<(f64, f64)> = pts.iter().map(|&(n, i, h)| (n as f64, h as f64 / 4f64.powi(i as i32))).collect();
        fit_power_law(&xy).unwrap()
    };
    let a_pts = bp_cost_points();
    let b_pts = bp_cost_points();
    let (a, b) = (fit(&a_pts), fit(&b_pts));
    let (c, k) = (a.max_ratio, a.exponent);
    for &(n, i, h) in &a_pts {
        if h as f64 > c * 4f64.powi(i as i32) * (n as f64).powf(k) * (1.0 + 1e-9) {
            return (false, format!("host steps {h} above the fitted bound at |tau|={n}, i={i}"));
        }
    }
    let close = |x: f64, y: f64| (x - y).abs() <= FIT_TOLERANCE * x.abs().max(y.abs());
    let stable = close(a.max_ratio, b.max_ratio) && close(a.exponent, b.exponent);
    (stable, format!("host <= {c:.4} * 4^i * |tau|^{k:.3} on {} runs; rerun C={:.4} k={:.3}", a_pts.len(), b.max_ratio, b.exponent))
}

fn c7_monotonicity() -> Outcome {
    let items = BenchConfig::toy().corpus().unwrap();
    let mut c = 0i64;
    for it in &items {
        if let Some(pi) = refute(&negate_to_cnf(&it.formula)) {
            let er = embed_r_in_er(&it.formula, &pi).unwrap();
            c = c.max(er.len() as i64 - encode_resolution(&it.formula, &pi).len() as i64);
        }
    }
    let mut rows = 0;
    for it in &items {
        let r = i_p(&ProofSystemId::Res, &it.formula, 24);
        let e = i_p(&ProofSystemId::Er, &it.formula, 24);
        if !r.exact {
            continue;
        }
        if !e.exact || e.value as i64 > r.value as i64 + c {
            return (false, format!("{}: i_ER {e:?} vs i_Res {r:?} + {c}", it.id));
        }
        rows += 1;
    }
    (rows == items.len(), format!("{rows}/{} rows satisfy i_ER <= i_Res + {c}", items.len()))
}

fn c8_php() -> Outcome {
    for n in 1..=4 {
        let cnf = gen_php(n);
        let lits = cnf_lits(&cnf);
        let sat = (0..1u64 << cnf.var_count()).any(|m| lits.iter().all(|cl| cl.iter().any(|&l| ((m >> (l.unsigned_abs() - 1)) & 1 == 1) == (l > 0))));
        if sat {
            return (false, format!("PHP_{n} has a model"));
        }
    }
    let mut sizes = Vec::new();
    for n in 1..=5 {
        let w = er_proof_php(n);
        if verify(&ProofSystemId::Er, w.bits()).as_ref() != Ok(&php_tautology(n)) {
            return (false, format!("ER proof of PHP_{n} rejected"));
        }
        sizes.push(w.len());
    }
    let slope = (1..sizes.len())
        .map(|i| (sizes[i] as f64 / sizes[i - 1] as f64).ln() / ((i + 1) as f64 / i as f64).ln())
        .fold(0.0, f64::max);
    let s1 = s_p_exact(&ProofSystemId::Res, &php_tautology(1), 1 << 16).unwrap();
    let s2 = s_p_exact(&ProofSystemId::Res, &php_tautology(2), 1 << 16).unwrap();
    let ok = match (s1, s2) {
        (SizeValue::Exact(a), SizeValue::Exact(b)) => b > a,
        _ => false,
    };
    (ok && slope < 6.0, format!("ER sizes {sizes:?} (max local degree {slope:.2}); s_Res(PHP_1)={s1:?} s_Res(PHP_2)={s2:?}"))
}

fn c9_designated_family() -> Outcome {
    let rep = |n: u64| {
        let tau = family_instance("padded-em", n).unwrap();
        let p = assemble(&format!("rep {n} {{ out 1 }}")).unwrap();
        KtCertificate::from_run(&BitString::ones(n as usize), &tau.render_bits(), p, 1 << 20).unwrap()
    };
    // The printer's level at n = 1, where both logarithmic terms vanish.
    let c = rep(1).level;
    let mut levels = Vec::new();
    for n in 1..=16u64 {
        let tau = family_instance("padded-em", n).unwrap();
        let r = rep(n);
        let best = kt_with_witnesses(&r.target, &tau.render_bits(), 18, &[(r.program.clone(), r.time)]);
        let bound = c + 2 * ceil_log2(n) as u64;
        if verify_certificate(&best).is_err() || best.level > bound {
            return (false, format!("n={n}: level {} > {bound}", best.level));
        }
        levels.push(best.level);
    }
    (true, format!("c={c}; levels for n=1..16: {levels:?}"))
}

/// Tautology check on a verifier's output, independent of the crate.
fn oracle(f: &Formula) -> bool {
    let f = compact(f);
    if f.var_count() <= 16 {
        naive_tautology(&f)
    } else {
        let c = negate_to_cnf(&f);
        backtrack_sat(c.var_count(), &cnf_lits(&c)).is_none()
    }
}

fn mutate(rng: &mut ChaCha8Rng, w: &BitString, prefix: usize) -> Vec<bool> {
    let mut v = w.bits().to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        let n = v.len();
        // Some mutations land in the formula header on purpose.
        let hi = if prefix > 0 && rng.gen_ratio(1, 3) { prefix.min(n) } else { n };
        match rng.gen_range(0..6) {
            0..=2 if hi > 0 => {
                let i = rng.gen_range(0..hi);
                v[i] = !v[i];
            }
            3 => v.insert(rng.gen_range(0..=hi), rng.gen()),
            4 if hi > 0 => {
                v.remove(rng.gen_range(0..hi));
            }
            5 if n > 0 => v.truncate(rng.gen_range(0..n)),
            _ => v.push(rng.gen()),
        }
    }
    v
}

fn c10_soundness() -> Outcome {
    let systems = ["tt", "res", "er", "ps", "pm:bruteforce", "pm:dpll", "qprime:padded-em:res"];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pool = Vec::new();
    while pool.len() < 60 {
        let f = compact(&random_formula(&mut rng, 3, 3));
        let f = if naive_tautology(&f) { f } else { compact(&Formula::Or(vec![f.clone(), Formula::not(f)])) };
        pool.push(f);
    }
    let mut accepted = BTreeMap::new();
    for name in systems {
        let p = ProofSystemId::parse(name).unwrap();
        let mut seeds: Vec<(BitString, usize)> = pool.iter().map(|t| (prove(&p, t).unwrap(), t.size_bits())).collect();
        if let ProofSystemId::QPrime { .. } = p {
            seeds.extend((1..=8).map(|n| (BitString::ones(n), 0)));
        }
        let mut acc = 0;
        for k in 0..MUTATIONS_PER_SYSTEM {
            let (w, prefix) = &seeds[k % seeds.len()];
            let m = mutate(&mut rng, w, *prefix);
            if let Ok(f) = verify(&p, &m) {
                if !oracle(&f) {
                    return (false, format!("{name} accepted a proof of the non-tautology {}", f.render()));
                }
                acc += 1;
            }
        }
        accepted.insert(name, acc);
    }
    (true, format!("{MUTATIONS_PER_SYSTEM} mutations per system, 0 unsound; accepted (all tautologies): {accepted:?}"))
}

fn seeded_verdict(tag: &str, n: u64) -> (usize, FilterVerdict) {
    let tau = family_instance(tag, n).unwrap();
    let seed = seed_program(tag, n).unwrap();
    (tau.size_bits(), uniformity_filter(&tau, 0, &[seed]))
}

fn c11_filter() -> Outcome {
    let mut notes = Vec::new();
    let mut cases = Vec::new();
    for n in 3..=6 {
        cases.push(("php", n));
    }
    for n in [255, 500, 1000, 2000] {
        cases.push(("padded-em", n));
    }
    for (tag, n) in cases {
        let (bits, v) = seeded_verdict(tag, n);
        match v {
            FilterVerdict::Fail { threshold, certificate } if bits >= 1 << 10 && verify_certificate(&certificate).is_ok() => {
                notes.push(format!("{tag}-{n}: {bits} bits, Kt<={} < {threshold}", certificate.level));
            }
            other => return (false, format!("{tag}-{n} ({bits} bits): {other:?}")),
        }
    }
    // Smallest padded-em member whose seed certificate is under the threshold.
    let crossover = (31..255).find(|&n| matches!(seeded_verdict("padded-em", n).1, FilterVerdict::Fail { .. }));
    for s in ["T", "F"] {
        let tau = parse_formula(s).unwrap();
        let v = uniformity_filter(&tau, 64, &[]);
        if v != (FilterVerdict::Pass { threshold: filter_threshold(8) }) {
            return (false, format!("{s}: {v:?}"));
        }
    }
    let cross = crossover.map_or("none below 255".to_string(), |n| format!("n={n} ({} bits)", family_instance("padded-em", n).unwrap().size_bits()));
    (true, format!("{}; T and F pass exhaustively; padded-em crossover {cross}", notes.join(", ")))
}

fn tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn pipeline(root: &Path) -> Result<(usize, usize), String> {
    let cfg = BenchConfig::toy();
    let corpus = root.join("corpus");
    let mut checks = (0, 0);
    for fam in &cfg.corpus.families {
        cmd_gen(&fam.tag, fam.from, fam.to, &corpus).map_err(|e| e.to_string())?;
        let s = cmd_verify(&corpus.join(format!("{}.manifest.json", fam.tag))).map_err(|e| e.to_string())?;
        checks.0 += s.checks.len() - s.failed();
        checks.1 += s.checks.len();
    }
    let m = cmd_measure(&cfg, &root.join("out"), &root.join("cache")).map_err(|e| e.to_string())?;
    let s = cmd_verify(&m.json_path).map_err(|e| e.to_string())?;
    checks.0 += s.checks.len() - s.failed();
    checks.1 += s.checks.len();
    Ok(checks)
}

fn c12_end_to_end() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (ra, rb) = match (pipeline(a.path()), pipeline(b.path())) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return (false, e),
    };
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    let same = ta == tb;
    let ok = same && ra.0 == ra.1 && rb == ra;
    (ok, format!("{} files byte-identical: {same}; {}/{} certificate checks passed", ta.len(), ra.0, ra.1))
}

#[test]
fn acceptance() {
    let criteria: Vec<(u32, fn() -> Outcome)> = vec![
        (1, c1_kt_oracle),
        (2, c2_sandwich),
        (3, c3_composition),
        (4, c4_automatizability),
        (5, c5_time_law),
        (6, c6_cost_bound),
        (7, c7_monotonicity),
        (8, c8_php),
        (9, c9_designated_family),
        (10, c10_soundness),
        (11, c11_filter),
        (12, c12_end_to_end),
    ];
    let results: Vec<(u32, Outcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|&(k, f)| (k, s.spawn(f))).collect();
        handles.into_iter().map(|(k, h)| (k, h.join().unwrap_or_else(|_| (false, "panicked".into())))).collect()
    });
    for (k, (ok, detail)) in &results {
        println!("criterion {k}: {} {detail}", if *ok { "PASS" } else { "FAIL" });
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.1 .0).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
