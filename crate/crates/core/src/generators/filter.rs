//! The uniformity filter: keep a test formula only if `Kt(τ) ≥ ⌈(log₂|τ|)²⌉`,
//! where `|τ|` is its rendered length in bits.

use serde::{Deserialize, Serialize};

use crate::kt::{kt_search, KtCertificate, SearchCost};
use crate::machine::Program;
use crate::formula::Formula;
use crate::BitString;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FilterVerdict {
    /// Exhaustive search proved `Kt(τ) ≥ threshold`.
    Pass { threshold: u64 },
    /// No short description found, but the budget did not reach the threshold.
    PassUnconfirmed { threshold: u64, searched_up_to: u64 },
    /// A certificate with level below the threshold.
    Fail { threshold: u64, certificate: KtCertificate },
}

impl FilterVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, FilterVerdict::Fail { .. })
    }
}

/// `⌈(log₂ bits)²⌉`, computed exactly.
pub fn filter_threshold(bits: u64) -> u64 {
    if bits <= 1 {
        return 0;
    }
    // Smallest T with 2^sqrt(T) ≥ bits, i.e. T ≥ log² bits.
    let l = (bits as f64).log2();
    let mut t = (l * l).ceil() as u64;
    // Correct floating error around exact powers.
    while t > 0 && ((t - 1) as f64).sqrt().exp2() >= bits as f64 {
        t -= 1;
    }
    while (t as f64).sqrt().exp2() < bits as f64 {
        t += 1;
    }
    t
}

/// Checks `τ` against the threshold. `witnesses` are known short programs for
/// the rendering (with time bounds); the exhaustive search covers levels up to
/// `min(budget, threshold − 1)`.
pub fn uniformity_filter(tau: &Formula, budget: u64, witnesses: &[(Program, u64)]) -> FilterVerdict {
    let w = tau.render_bits();
    let threshold = filter_threshold(w.len() as u64);
    let eps = BitString::new();
    for (p, t) in witnesses {
        if let Some(c) = KtCertificate::from_run(&w, &eps, p.clone(), *t) {
            if c.level < threshold {
                return FilterVerdict::Fail { threshold, certificate: c };
            }
        }
    }
    if threshold == 0 {
        return FilterVerdict::Pass { threshold };
    }
    let reach = budget.min(threshold - 1);
    let mut cost = SearchCost::default();
    match kt_search(&w, &eps, reach, &mut cost) {
        Some(certificate) => FilterVerdict::Fail { threshold, certificate },
        None if reach == threshold - 1 => FilterVerdict::Pass { threshold },
        None => FilterVerdict::PassUnconfirmed { threshold, searched_up_to: reach },
    }
}
