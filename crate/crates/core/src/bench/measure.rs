//! `measure`: one row per (formula, system) with certificates, written as CSV
//! and JSON. Rows are cached by content so a rerun only reads the cache.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::gen::sha256_hex;
use super::{BenchConfig, BenchError, Basis, CorpusItem, Quantity, BENCH_SCHEMA_VERSION};
use crate::generators::{uniformity_filter, FilterVerdict};
use crate::kt::{KtCache, KtCertificate};
use crate::machine::{Program, MACHINE_VERSION};
use crate::proofs::{s_p_exact_budgeted, ProofObject, ProofSystemId, SizeValue, PROOF_ENCODING_VERSION};
use crate::search::{info_search_bp, levin_search_ap};
use crate::BitString;

/// The program the Levin search stopped on, re-runnable on the rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearcherWitness {
    pub program: Program,
    pub index: u64,
    /// Steps the program itself needs.
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RowCertificates {
    /// Upper bound on `Kt(τ)`, exact when its flag says so.
    pub kt: KtCertificate,
    /// The proof of least `Kt(w | τ)` with its certificate.
    pub proof: Option<ProofObject>,
    pub ip: Option<KtCertificate>,
    pub searcher: Option<SearcherWitness>,
    pub filter: Option<FilterVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRow {
    pub id: String,
    pub formula: String,
    pub tau_bits: u64,
    pub system: String,
    pub s_p: Quantity,
    pub i_p: Quantity,
    pub steps_ap: Quantity,
    pub steps_bp: Quantity,
    pub kt: Quantity,
    /// `pass`, `pass-unconfirmed`, `fail` or `off`.
    pub filter: String,
    pub certificates: RowCertificates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchReport {
    pub schema_version: u32,
    pub machine_version: String,
    pub encoding_version: String,
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Some budget ran out and the table holds bounds.
    pub fn bounded(&self) -> bool {
        self.rows.iter().any(|r| !(r.s_p.is_exact() && r.i_p.is_exact() && r.steps_ap.is_exact()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!(
            "# schemaVersion={} machineVersion={} encodingVersion={}\n",
            self.schema_version, self.machine_version, self.encoding_version
        );
        s.push_str("id,tauBits,system,sP,iP,stepsAP,stepsBP,kt,filter\n");
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}",
                r.id,
                r.tau_bits,
                r.system,
                r.s_p.cell(),
                r.i_p.cell(),
                r.steps_ap.cell(),
                r.steps_bp.cell(),
                r.kt.cell(),
                r.filter
            )
            .unwrap();
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct MeasureSummary {
    pub report: BenchReport,
    pub computed: usize,
    pub cached: usize,
    pub json_path: PathBuf,
    pub csv_path: PathBuf,
}

fn size_quantity(p: &ProofSystemId, v: Result<SizeValue, crate::proofs::SizeError>) -> Quantity {
    let basis = match p {
        ProofSystemId::Tt | ProofSystemId::Ps { .. } | ProofSystemId::Decider { .. } => Basis::ClosedForm,
        _ => Basis::Exhaustive,
    };
    match v {
        Ok(SizeValue::Exact(value)) => Quantity::Exact { value, basis },
        Ok(SizeValue::Unknown(0)) => Quantity::Unavailable { reason: "node budget".into() },
        Ok(SizeValue::Unknown(cap)) => Quantity::AtLeast { value: cap + 1 },
        Err(e) => Quantity::Unavailable { reason: e.to_string() },
    }
}

fn filter_label(v: &Option<FilterVerdict>) -> String {
    match v {
        None => "off",
        Some(FilterVerdict::Pass { .. }) => "pass",
        Some(FilterVerdict::PassUnconfirmed { .. }) => "pass-unconfirmed",
        Some(FilterVerdict::Fail { .. }) => "fail",
    }
    .to_string()
}

/// Measures one (formula, system) pair. `kt` is the certificate for `Kt(τ)`.
pub fn measure_row(cfg: &BenchConfig, item: &CorpusItem, system: &ProofSystemId, kt: KtCertificate) -> BenchRow {
    let b = &cfg.budgets;
    let tau = &item.formula;
    let rendering = tau.render_bits();
    let seeds: Vec<(Program, u64)> = item.seed.iter().cloned().collect();

    let bp = info_search_bp(system, tau, b.level_cap);
    let (i_p, proof, ip) = match bp.found.clone() {
        Some(f) => (Quantity::Exact { value: f.level, basis: Basis::Certificate }, Some(f.proof), Some(f.certificate)),
        None => (Quantity::AtLeast { value: bp.lower_bound }, None, None),
    };
    let ap = levin_search_ap(system, tau, b.step_cap, &[]);
    let (steps_ap, searcher) = match (&ap.proof, &ap.program, ap.program_index) {
        (Some(_), Some(p), Some(index)) => {
            let steps = crate::machine::run(p, &rendering, ap.charged_steps).steps;
            (Quantity::Exact { value: ap.charged_steps, basis: Basis::Count }, Some(SearcherWitness { program: p.clone(), index, steps }))
        }
        _ => (Quantity::AtLeast { value: ap.charged_steps.max(b.step_cap) + 1 }, None),
    };
    let s_p = size_quantity(system, s_p_exact_budgeted(system, tau, b.cap_bits, b.size_nodes));
    let filter = cfg.corpus.filter.then(|| uniformity_filter(tau, b.kt_budget, &seeds));
    let kt_q = if kt.exact { Quantity::Exact { value: kt.level, basis: Basis::Certificate } } else { Quantity::AtMost { value: kt.level } };
    BenchRow {
        id: item.id.clone(),
        formula: tau.render(),
        tau_bits: rendering.len() as u64,
        system: system.to_string(),
        s_p,
        i_p,
        steps_ap,
        steps_bp: Quantity::Exact { value: bp.host_steps(), basis: Basis::Count },
        kt: kt_q,
        filter: filter_label(&filter),
        certificates: RowCertificates { kt, proof, ip, searcher, filter },
    }
}

#[derive(Serialize, Deserialize)]
struct CachedRow {
    key: String,
    row: BenchRow,
}

fn row_key(cfg: &BenchConfig, item: &CorpusItem, system: &ProofSystemId) -> String {
    let budgets = serde_json::to_string(&cfg.budgets).expect("budgets serialize");
    let seed = item.seed.as_ref().map(|(p, t)| format!("{}:{}:{t}", p.len(), p.0.to_hex())).unwrap_or_default();
    let text = format!(
        "{BENCH_SCHEMA_VERSION}|{MACHINE_VERSION}|{PROOF_ENCODING_VERSION}|{}|{system}|{budgets}|{}|{seed}",
        item.formula.render(),
        cfg.corpus.filter
    );
    sha256_hex(text.as_bytes())
}

fn load_rows(path: &Path) -> Result<HashMap<String, BenchRow>, BenchError> {
    let mut rows = HashMap::new();
    if path.exists() {
        for line in BufReader::new(File::open(path)?).lines() {
            let line = line?;
            // A torn last line from an interrupted run is recomputed.
            if let Ok(c) = serde_json::from_str::<CachedRow>(&line) {
                rows.insert(c.key, c.row);
            }
        }
    }
    Ok(rows)
}

/// Runs the configured measurement, reusing cached rows, and writes
/// `report.json` and `report.csv` under `out_dir`.
pub fn cmd_measure(cfg: &BenchConfig, out_dir: &Path, cache_dir: &Path) -> Result<MeasureSummary, BenchError> {
    cfg.validate()?;
    let systems = cfg.systems()?;
    let corpus = cfg.corpus()?;
    fs::create_dir_all(out_dir)?;
    fs::create_dir_all(cache_dir)?;
    let mut kt_cache = KtCache::open(&cache_dir.join("kt.jsonl"))?;
    let rows_path = cache_dir.join("rows.jsonl");
    let mut cached_rows = load_rows(&rows_path)?;
    let mut rows = Vec::new();
    let (mut computed, mut cached) = (0, 0);
    let eps = BitString::new();
    for item in &corpus {
        for system in &systems {
            let key = row_key(cfg, item, system);
            if let Some(row) = cached_rows.get(&key) {
                let mut row = row.clone();
                row.id = item.id.clone();
                rows.push(row);
                cached += 1;
                continue;
            }
            let seeds: Vec<(Program, u64)> = item.seed.iter().cloned().collect();
            let kt = kt_cache.kt(&item.formula.render_bits(), &eps, cfg.budgets.kt_budget, &seeds)?;
            let row = measure_row(cfg, item, system, kt);
            if let Some(c) = &row.certificates.ip {
                kt_cache.put(cfg.budgets.level_cap, c.clone())?;
            }
            let mut f = OpenOptions::new().create(true).append(true).open(&rows_path)?;
            writeln!(f, "{}", serde_json::to_string(&CachedRow { key: key.clone(), row: row.clone() }).expect("row serializes"))?;
            cached_rows.insert(key, row.clone());
            rows.push(row);
            computed += 1;
        }
    }
    let report = BenchReport {
        schema_version: BENCH_SCHEMA_VERSION,
        machine_version: MACHINE_VERSION.to_string(),
        encoding_version: PROOF_ENCODING_VERSION.to_string(),
        config: cfg.clone(),
        rows,
    };
    let json_path = out_dir.join("report.json");
    let csv_path = out_dir.join("report.csv");
    fs::write(&json_path, report.to_json())?;
    fs::write(&csv_path, report.to_csv())?;
    Ok(MeasureSummary { report, computed, cached, json_path, csv_path })
}
