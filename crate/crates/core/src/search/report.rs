//! Per-formula search reports and the power-law fits used to compare costs.

use serde::{Deserialize, Serialize};

use super::{i_p, info_search_bp, levin_search_ap, IpValue};
use crate::formula::Formula;
use crate::machine::MACHINE_VERSION;
use crate::proofs::{s_p_exact, ProofObject, ProofSystemId, SizeValue, PROOF_ENCODING_VERSION};

/// Version of the [`SearchReport`] JSON layout.
pub const SEARCH_REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub schema_version: u32,
    pub formula: String,
    pub system: ProofSystemId,
    /// The proof found by the level search, if any.
    pub proof: Option<ProofObject>,
    pub i_p: IpValue,
    pub s_p: Option<SizeValue>,
    /// Charged steps of the Levin search; `None` when its cap ran out.
    pub steps_ap: Option<u64>,
    pub steps_bp: u64,
    pub level_cap: u64,
    pub step_cap: u64,
    pub cap_bits: u64,
    pub machine_version: String,
    pub encoding_version: String,
}

impl SearchReport {
    pub fn measure(system: &ProofSystemId, tau: &Formula, level_cap: u64, step_cap: u64, cap_bits: u64) -> SearchReport {
        let bp = info_search_bp(system, tau, level_cap);
        let ip = match &bp.found {
            Some(f) => IpValue { value: f.level, exact: true },
            None => i_p(system, tau, 0).max_bound(bp.lower_bound),
        };
        let ap = levin_search_ap(system, tau, step_cap, &[]);
        SearchReport {
            schema_version: SEARCH_REPORT_SCHEMA,
            formula: tau.render(),
            system: system.clone(),
            proof: bp.found.as_ref().map(|f| f.proof.clone()),
            i_p: ip,
            s_p: s_p_exact(system, tau, cap_bits).ok(),
            steps_ap: ap.proof.is_some().then_some(ap.charged_steps),
            steps_bp: bp.host_steps(),
            level_cap,
            step_cap,
            cap_bits,
            machine_version: MACHINE_VERSION.to_string(),
            encoding_version: PROOF_ENCODING_VERSION.to_string(),
        }
    }
}

impl IpValue {
    fn max_bound(self, lower: u64) -> IpValue {
        IpValue { value: lower, exact: false }.pick(self)
    }

    fn pick(self, other: IpValue) -> IpValue {
        if other.exact {
            other
        } else {
            IpValue { value: self.value.max(other.value), exact: false }
        }
    }
}

/// `y ≈ C · x^k` fitted by least squares on logarithms; `max_ratio` is the
/// smallest `C` for which `y ≤ C · x^k` holds on every point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub constant: f64,
    pub max_ratio: f64,
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Option<PowerFit> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let k = sxy / sxx;
    let c = (my - k * mx).exp();
    let max_ratio = pts.iter().map(|p| (p.1 - k * p.0).exp()).fold(0.0, f64::max);
    Some(PowerFit { exponent: k, constant: c, max_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..10).map(|x| (x as f64, 3.0 * (x as f64).powi(2))).collect();
        let f = fit_power_law(&pts).unwrap();
        assert!((f.exponent - 2.0).abs() < 1e-9);
        assert!((f.constant - 3.0).abs() < 1e-9);
        assert!((f.max_ratio - 3.0).abs() < 1e-9);
    }
}
