//! The measurement pipeline behind the `ktlab` command line: corpus
//! generation, per-(formula, system) measurement with persistent caches, and
//! re-verification of reports.
//!
//! Every number in a report is labeled by a [`Quantity`]: exact (with its
//! basis), a bound, or unavailable with a reason.

mod config;
mod gen;
mod measure;
mod verify;

pub use config::{family_items, BenchConfig, Budgets, CorpusItem, CorpusSpec, FamilyRange, Outputs};
pub use gen::{cmd_gen, GenInstance, GenManifest, SeedInfo};
pub use measure::{cmd_measure, measure_row, BenchReport, BenchRow, MeasureSummary, RowCertificates, SearcherWitness};
pub use verify::{cmd_verify, verify_report, CheckResult, VerifySummary};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version of the report, manifest and row-cache layouts.
pub const BENCH_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{0}")]
    Usage(String),
    #[error("machine version mismatch: this build is {expected}, the input pins {found}")]
    VersionMismatch { expected: String, found: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Process exit codes of the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Usage = 1,
    /// Some budget ran out; the output holds labeled bounds.
    Bounded = 2,
    VerificationFailed = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl BenchError {
    pub fn exit_status(&self) -> ExitStatus {
        ExitStatus::Usage
    }
}

/// Why an exact value is trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Backed by a re-checkable certificate in the row.
    Certificate,
    /// A formula in the input (truth-table padding, the unique solver record).
    ClosedForm,
    /// Exhaustive minimization within the configured budget.
    Exhaustive,
    /// A counted amount of work.
    Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Quantity {
    Exact { value: u64, basis: Basis },
    AtLeast { value: u64 },
    AtMost { value: u64 },
    Unavailable { reason: String },
}

impl Quantity {
    pub fn exact(&self) -> Option<u64> {
        match self {
            Quantity::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact().is_some()
    }

    /// `exact:5`, `>=5`, `<=5` or `n/a`, for the CSV table.
    pub fn cell(&self) -> String {
        match self {
            Quantity::Exact { value, .. } => value.to_string(),
            Quantity::AtLeast { value } => format!(">={value}"),
            Quantity::AtMost { value } => format!("<={value}"),
            Quantity::Unavailable { .. } => "n/a".to_string(),
        }
    }
}
