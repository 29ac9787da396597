//! Truth-table proofs: `τ` followed by exactly `2^n` one-bits, `n = varCount(τ)`.
//! The padding makes checking all assignments polynomial in the proof length.

use super::VerifyError;
use crate::bits::BitString;
use crate::formula::{is_tautology_bruteforce, Formula, DEFAULT_TAUTOLOGY_CAP};

pub fn tt_proof(tau: &Formula) -> Result<BitString, VerifyError> {
    let n = tau.var_count();
    if n > DEFAULT_TAUTOLOGY_CAP {
        return Err(VerifyError::CapExceeded);
    }
    let proof = super::envelope::wrap(tau, BitString::ones(1usize << n).bits());
    check_body(tau, &proof.bits()[tau.size_bits()..])?;
    Ok(proof)
}

pub(crate) fn check_body(tau: &Formula, body: &[bool]) -> Result<(), VerifyError> {
    let n = tau.var_count();
    let expected = 1u64.checked_shl(n).ok_or(VerifyError::BadPadding)?;
    if body.len() as u64 != expected || body.iter().any(|&b| !b) {
        return Err(VerifyError::BadPadding);
    }
    if n > DEFAULT_TAUTOLOGY_CAP {
        return Err(VerifyError::CapExceeded);
    }
    match is_tautology_bruteforce(tau, DEFAULT_TAUTOLOGY_CAP) {
        Ok(c) if c.is_tautology() => Ok(()),
        Ok(_) => Err(VerifyError::NotTautology),
        Err(_) => Err(VerifyError::CapExceeded),
    }
}
