//! Generate a corpus, measure it, and re-verify the report.
//!
//! `cargo run --release --example bench_pipeline`

use ktlab::bench::{cmd_gen, cmd_measure, cmd_verify, BenchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("ktlab-example-{}", std::process::id()));
    let manifest = cmd_gen("php", 1, 3, &dir.join("corpus"))?;
    for inst in &manifest.instances {
        println!("{}: {} bits, seed `{}`, Kt <= {}", inst.file, inst.tau_bits, inst.seed.asm.trim(), inst.kt_certificate.level);
    }

    let cfg = BenchConfig::toy();
    let first = cmd_measure(&cfg, &dir.join("out"), &dir.join("cache"))?;
    let again = cmd_measure(&cfg, &dir.join("out"), &dir.join("cache"))?;
    println!("measured {} rows; the rerun took {} from cache", first.report.rows.len(), again.cached);
    assert_eq!(first.report, again.report);
    print!("{}", first.report.to_csv());

    let summary = cmd_verify(&first.json_path)?;
    println!("verify: {} of {} rows pass", summary.checks.len() - summary.failed(), summary.checks.len());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
