//! `gen`: write a family range as DIMACS files plus a manifest of seeds and
//! Kt certificates.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{family_items, BenchError, BENCH_SCHEMA_VERSION};
use crate::formula::{negate_to_cnf, to_dimacs, Formula};
use crate::generators::gen_php;
use crate::kt::{print_certificate, KtCertificate};
use crate::machine::{disassemble, Program, MACHINE_VERSION};
use crate::BitString;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeedInfo {
    /// `program` for a family seed, `print` for the literal printer.
    pub kind: String,
    pub asm: String,
    pub program: Program,
    pub time: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenInstance {
    pub id: String,
    pub index: u64,
    pub file: String,
    pub rendering: String,
    pub tau_bits: u64,
    pub rendering_sha256: String,
    pub seed: SeedInfo,
    /// Upper bound on `Kt(τ)` from the seed.
    pub kt_certificate: KtCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenManifest {
    pub schema_version: u32,
    pub machine_version: String,
    pub family: String,
    pub from: u64,
    pub to: u64,
    pub instances: Vec<GenInstance>,
}

pub(crate) fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Clause form written for an instance: the native clauses for PHP, the
/// definitional encoding of `¬τ` otherwise.
fn instance_cnf(tag: &str, n: u64, f: &Formula) -> String {
    let cnf = if tag == "php" { gen_php(n as u32) } else { negate_to_cnf(f) };
    to_dimacs(&cnf)
}

pub(crate) fn seed_certificate(w: &BitString, seed: Option<&(Program, u64)>) -> (SeedInfo, KtCertificate) {
    let eps = BitString::new();
    if let Some((p, t)) = seed {
        if let Some(c) = KtCertificate::from_run(w, &eps, p.clone(), *t) {
            let info = SeedInfo { kind: "program".into(), asm: disassemble(p), program: p.clone(), time: c.time };
            return (info, c);
        }
    }
    let c = print_certificate(w, &eps);
    let info = SeedInfo { kind: "print".into(), asm: disassemble(&c.program), program: c.program.clone(), time: c.time };
    (info, c)
}

/// Writes `<tag>-<n>.cnf` for each `n` in `from..=to` and `<tag>.manifest.json`.
/// The output depends only on the arguments.
pub fn cmd_gen(tag: &str, from: u64, to: u64, dir: &Path) -> Result<GenManifest, BenchError> {
    if from == 0 || from > to {
        return Err(BenchError::Usage(format!("bad range {from}..{to}")));
    }
    let items = family_items(tag, from, to)?;
    fs::create_dir_all(dir)?;
    let mut instances = Vec::new();
    for (item, n) in items.iter().zip(from..=to) {
        let rendering = item.formula.render();
        let file = format!("{}.cnf", item.id);
        let body = format!("c {}\nc tau {}\n{}", item.id, rendering, instance_cnf(tag, n, &item.formula));
        fs::write(dir.join(&file), body)?;
        let bits = item.formula.render_bits();
        let (seed, kt_certificate) = seed_certificate(&bits, item.seed.as_ref());
        instances.push(GenInstance {
            id: item.id.clone(),
            index: n,
            file,
            tau_bits: bits.len() as u64,
            rendering_sha256: sha256_hex(rendering.as_bytes()),
            rendering,
            seed,
            kt_certificate,
        });
    }
    let manifest = GenManifest {
        schema_version: BENCH_SCHEMA_VERSION,
        machine_version: MACHINE_VERSION.to_string(),
        family: tag.to_string(),
        from,
        to,
        instances,
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join(format!("{tag}.manifest.json")), json + "\n")?;
    Ok(manifest)
}
