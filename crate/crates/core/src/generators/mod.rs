//! Formula families, pigeonhole refutations, circuit-based tautologies and
//! the Kt uniformity filter.

mod circuits;
mod families;
mod filter;
mod php;

pub use circuits::{gen_mu_eta, gen_tau_g, CircuitError, Gate, GateOp, ToyFunctionSpec};
pub use families::{builtin_families, family_instance, family_spec, is_family, registry_from_json, seed_program, FamilyGenerator, FamilySpec, FAMILY_SCAN_LIMIT};
pub use filter::{filter_threshold, uniformity_filter, FilterVerdict};
pub use php::{cnf_negation, er_proof_php, er_refutation_php, gen_php, php_tautology, php_var};

use crate::formula::{is_tautology_bruteforce, Formula};
use crate::proofs::ProofSystemId;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RegistrationError {
    #[error("family {tag} member {n} is not a tautology")]
    NotTautology { tag: String, n: u64 },
    #[error("unknown family {0}")]
    Unknown(String),
}

/// Wraps `base` so that `1^n` proves member `n` of `fam`. Members up to
/// `check_up_to` with at most 24 variables are checked exhaustively first.
pub fn gen_designated_family(base: ProofSystemId, fam: &FamilySpec, check_up_to: u64) -> Result<ProofSystemId, RegistrationError> {
    if !is_family(&fam.tag) {
        return Err(RegistrationError::Unknown(fam.tag.clone()));
    }
    for n in 1..=check_up_to.min(fam.max_index) {
        let f: Formula = fam.instance(n).expect("index in range");
        if let Ok(check) = is_tautology_bruteforce(&f, 24) {
            if !check.is_tautology() {
                return Err(RegistrationError::NotTautology { tag: fam.tag.clone(), n });
            }
        }
    }
    Ok(ProofSystemId::qprime(base, &fam.tag))
}
