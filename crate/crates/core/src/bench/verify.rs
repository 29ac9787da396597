//! `verify`: re-check a report or a generation manifest against this build.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::gen::sha256_hex;
use super::{BenchError, BenchReport, BenchRow, GenManifest, Quantity, BENCH_SCHEMA_VERSION};
use crate::formula::{parse_formula, Formula};
use crate::generators::{family_instance, filter_threshold, FilterVerdict};
use crate::kt::{kt_search, verify_certificate, KtCertificate, RejectReason, SearchCost};
use crate::machine::{run, MACHINE_VERSION};
use crate::proofs::{s_p_exact, ProofSystemId, PROOF_ENCODING_VERSION};
use crate::BitString;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub ok: bool,
    /// Short failure reason, `version` for a machine or encoding mismatch.
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.ok).count()
    }
}

type Check = Result<(), String>;

fn fail(reason: &str) -> Check {
    Err(reason.to_string())
}

fn check_kt(c: &KtCertificate, target: &BitString, condition: &BitString, what: &str) -> Check {
    match verify_certificate(c) {
        Err(RejectReason::Version) => return fail("version"),
        Err(_) => return fail(what),
        Ok(()) => {}
    }
    if &c.target != target || &c.condition != condition {
        return fail(what);
    }
    Ok(())
}

/// No witness below `level` exists, by rerunning the exhaustive search.
fn check_minimal(target: &BitString, level: u64) -> bool {
    level == 0 || kt_search(target, &BitString::new(), level - 1, &mut SearchCost::default()).is_none()
}

fn check_row(row: &BenchRow, kt_budget: u64) -> Check {
    let tau: Formula = parse_formula(&row.formula).map_err(|_| "formula".to_string())?;
    if tau.render() != row.formula {
        return fail("formula");
    }
    let w = tau.render_bits();
    if row.tau_bits != w.len() as u64 {
        return fail("formula");
    }
    let system = ProofSystemId::parse(&row.system).ok_or_else(|| "system".to_string())?;
    let certs = &row.certificates;
    let eps = BitString::new();

    check_kt(&certs.kt, &w, &eps, "kt-certificate")?;
    match &row.kt {
        Quantity::Exact { value, .. } if *value == certs.kt.level && certs.kt.exact && check_minimal(&w, *value) => {}
        Quantity::AtMost { value } if *value == certs.kt.level && !certs.kt.exact => {}
        _ => return fail("kt-certificate"),
    }

    match (&row.i_p, &certs.proof, &certs.ip) {
        (Quantity::Exact { value, .. }, Some(proof), Some(c)) => {
            if proof.system != system || proof.verify().ok().as_ref() != Some(&tau) {
                return fail("proof");
            }
            check_kt(c, &proof.bits, &w, "ip-certificate")?;
            if c.level != *value {
                return fail("ip-certificate");
            }
            if let Some(s) = row.s_p.exact() {
                if s > proof.len() as u64 {
                    return fail("size");
                }
            }
        }
        (Quantity::AtLeast { .. }, None, None) => {}
        _ => return fail("ip-certificate"),
    }

    if let Quantity::Exact { value, basis: super::Basis::ClosedForm } = row.s_p {
        if s_p_exact(&system, &tau, value).ok().and_then(|v| v.exact()) != Some(value) {
            return fail("size");
        }
    }

    match (&row.steps_ap, &certs.searcher) {
        (Quantity::Exact { value, .. }, Some(s)) => {
            let out = run(&s.program, &w, s.steps.max(1));
            let proof = crate::proofs::ProofObject::new(system.clone(), out.output.clone());
            if !out.halted() || out.steps != s.steps || s.steps > *value || proof.verify().ok().as_ref() != Some(&tau) {
                return fail("searcher");
            }
        }
        (Quantity::AtLeast { .. }, None) => {}
        _ => return fail("searcher"),
    }

    match &certs.filter {
        None => {
            if row.filter != "off" {
                return fail("filter");
            }
        }
        Some(v) => {
            let threshold = filter_threshold(w.len() as u64);
            let ok = match v {
                FilterVerdict::Fail { threshold: t, certificate } => {
                    check_kt(certificate, &w, &eps, "filter")?;
                    *t == threshold && certificate.level < threshold && row.filter == "fail"
                }
                FilterVerdict::Pass { threshold: t } => {
                    *t == threshold && threshold <= kt_budget + 1 && check_minimal(&w, threshold) && row.filter == "pass"
                }
                FilterVerdict::PassUnconfirmed { threshold: t, searched_up_to } => {
                    *t == threshold
                        && *searched_up_to < threshold
                        && kt_search(&w, &eps, *searched_up_to, &mut SearchCost::default()).is_none()
                        && row.filter == "pass-unconfirmed"
                }
            };
            if !ok {
                return fail("filter");
            }
        }
    }
    Ok(())
}

fn result(id: String, c: Check) -> CheckResult {
    match c {
        Ok(()) => CheckResult { id, ok: true, reason: None },
        Err(r) => CheckResult { id, ok: false, reason: Some(r) },
    }
}

pub fn verify_report(report: &BenchReport) -> VerifySummary {
    let version_ok = report.schema_version == BENCH_SCHEMA_VERSION
        && report.machine_version == MACHINE_VERSION
        && report.encoding_version == PROOF_ENCODING_VERSION;
    let checks = report
        .rows
        .iter()
        .map(|row| {
            let id = format!("{}/{}", row.id, row.system);
            result(id, if version_ok { check_row(row, report.config.budgets.kt_budget) } else { fail("version") })
        })
        .collect();
    VerifySummary { checks }
}

fn verify_manifest(m: &GenManifest) -> VerifySummary {
    let version_ok = m.schema_version == BENCH_SCHEMA_VERSION && m.machine_version == MACHINE_VERSION;
    let eps = BitString::new();
    let checks = m
        .instances
        .iter()
        .map(|inst| {
            let c = (|| {
                if !version_ok {
                    return fail("version");
                }
                let f = family_instance(&m.family, inst.index).ok_or_else(|| "formula".to_string())?;
                let w = f.render_bits();
                if f.render() != inst.rendering || inst.rendering_sha256 != sha256_hex(inst.rendering.as_bytes()) || inst.tau_bits != w.len() as u64 {
                    return fail("formula");
                }
                check_kt(&inst.kt_certificate, &w, &eps, "kt-certificate")?;
                if inst.kt_certificate.program != inst.seed.program || inst.kt_certificate.time != inst.seed.time {
                    return fail("seed");
                }
                Ok(())
            })();
            result(inst.id.clone(), c)
        })
        .collect();
    VerifySummary { checks }
}

/// Re-checks a `report.json` from `measure` or a manifest from `gen`.
pub fn cmd_verify(path: &Path) -> Result<VerifySummary, BenchError> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| BenchError::Usage(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| BenchError::Usage(format!("{}: {e}", path.display()));
    if value.get("instances").is_some() {
        Ok(verify_manifest(&serde_json::from_value(value).map_err(bad)?))
    } else {
        Ok(verify_report(&serde_json::from_value(value).map_err(bad)?))
    }
}
