//! Command line for the ktlab measurement pipeline.
//!
//! Exit codes: 0 ok, 1 usage, 2 budget exhausted (bounds reported), 3 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use ktlab::bench::{cmd_gen, cmd_measure, cmd_verify, BenchConfig, BenchError, ExitStatus};
use ktlab::formula::{parse_formula, Formula};
use ktlab::kt::kt;
use ktlab::proofs::ProofSystemId;
use ktlab::search::{info_search_bp, levin_search_ap};
use ktlab::BitString;

#[derive(Parser)]
#[command(name = "ktlab", version, about = "Kt complexity and information efficiency of propositional proofs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a family range as DIMACS files plus a manifest with Kt certificates.
    Gen {
        /// Family tag: php, padded-em, chain, em-spread.
        family: String,
        /// `FROM..TO` (inclusive) or a single index.
        range: String,
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
    /// Measure s_P, i_P, search costs and Kt for a corpus; writes report.json and report.csv.
    Measure {
        /// JSON config; the built-in toy suite when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's cache directory.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Re-check every certificate in a report or manifest.
    Verify { path: PathBuf },
    /// Kt(w|u) with a certificate; w and u as 0/1 strings.
    Kt {
        w: String,
        #[arg(long, default_value = "")]
        cond: String,
        #[arg(long, default_value_t = 16)]
        budget: u64,
    },
    /// i_P(τ) by the level search, with the proof and its certificate.
    Ip {
        formula: String,
        #[arg(long, default_value = "tt")]
        system: String,
        #[arg(long, default_value_t = 22)]
        level_cap: u64,
    },
    /// Run one universal searcher on a formula.
    Search {
        formula: String,
        #[arg(long, default_value = "tt")]
        system: String,
        /// `bp` (level search) or `ap` (Levin dovetailing).
        #[arg(long, default_value = "bp")]
        algo: String,
        #[arg(long, default_value_t = 22)]
        level_cap: u64,
        #[arg(long, default_value_t = 2_000_000)]
        step_cap: u64,
    },
}

fn usage(msg: impl Into<String>) -> BenchError {
    BenchError::Usage(msg.into())
}

fn parse_range(s: &str) -> Result<(u64, u64), BenchError> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| usage(format!("bad range {s:?}")));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b)?)),
        None => num(s).map(|n| (n, n)),
    }
}

fn bits(s: &str) -> Result<BitString, BenchError> {
    BitString::parse01(s).ok_or_else(|| usage(format!("{s:?} is not a 0/1 string")))
}

fn formula(s: &str) -> Result<Formula, BenchError> {
    parse_formula(s).map_err(|e| usage(format!("formula: {e}")))
}

fn system(s: &str) -> Result<ProofSystemId, BenchError> {
    ProofSystemId::parse(s).ok_or_else(|| usage(format!("unknown system {s:?}")))
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn exec(cmd: Cmd) -> Result<ExitStatus, BenchError> {
    match cmd {
        Cmd::Gen { family, range, out } => {
            let (from, to) = parse_range(&range)?;
            let m = cmd_gen(&family, from, to, &out)?;
            println!("wrote {} instances of {} to {}", m.instances.len(), family, out.display());
            Ok(ExitStatus::Ok)
        }
        Cmd::Measure { config, out, cache } => {
            let cfg = match config {
                Some(p) => BenchConfig::from_json(&std::fs::read_to_string(&p)?)?,
                None => BenchConfig::toy(),
            };
            let out = out.unwrap_or_else(|| PathBuf::from(&cfg.outputs.dir));
            let cache = cache.unwrap_or_else(|| PathBuf::from(&cfg.outputs.cache));
            let s = cmd_measure(&cfg, &out, &cache)?;
            print!("{}", s.report.to_csv());
            eprintln!("{} rows ({} computed, {} cached) -> {}", s.report.rows.len(), s.computed, s.cached, s.json_path.display());
            Ok(if s.report.bounded() { ExitStatus::Bounded } else { ExitStatus::Ok })
        }
        Cmd::Verify { path } => {
            let s = cmd_verify(&path)?;
            for c in &s.checks {
                match &c.reason {
                    None => println!("ok    {}", c.id),
                    Some(r) => println!("FAIL  {} ({r})", c.id),
                }
            }
            eprintln!("{}/{} checks passed", s.checks.len() - s.failed(), s.checks.len());
            Ok(if s.all_ok() { ExitStatus::Ok } else { ExitStatus::VerificationFailed })
        }
        Cmd::Kt { w, cond, budget } => {
            let c = kt(&bits(&w)?, &bits(&cond)?, budget);
            print_json(&c);
            Ok(if c.exact { ExitStatus::Ok } else { ExitStatus::Bounded })
        }
        Cmd::Ip { formula: f, system: s, level_cap } => {
            let (tau, p) = (formula(&f)?, system(&s)?);
            let o = info_search_bp(&p, &tau, level_cap);
            match o.found {
                Some(found) => {
                    print_json(&json!({ "iP": { "kind": "exact", "value": found.level }, "proof": found.proof, "certificate": found.certificate }));
                    Ok(ExitStatus::Ok)
                }
                None => {
                    print_json(&json!({ "iP": { "kind": "at-least", "value": o.lower_bound } }));
                    Ok(ExitStatus::Bounded)
                }
            }
        }
        Cmd::Search { formula: f, system: s, algo, level_cap, step_cap } => {
            let (tau, p) = (formula(&f)?, system(&s)?);
            match algo.as_str() {
                "bp" => {
                    let o = info_search_bp(&p, &tau, level_cap);
                    print_json(&json!({ "outcome": o, "hostSteps": o.host_steps() }));
                    Ok(if o.found.is_some() { ExitStatus::Ok } else { ExitStatus::Bounded })
                }
                "ap" => {
                    let o = levin_search_ap(&p, &tau, step_cap, &[]);
                    print_json(&o);
                    Ok(if o.proof.is_some() { ExitStatus::Ok } else { ExitStatus::Bounded })
                }
                other => Err(usage(format!("unknown algorithm {other:?}; use bp or ap"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitStatus::Usage.code() as u8 } else { 0 });
        }
    };
    match exec(cli.cmd) {
        Ok(s) => ExitCode::from(s.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_status().code() as u8)
        }
    }
}
