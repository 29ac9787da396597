//! Every formula-carrying proof starts with the canonical rendering of the
//! formula it proves, eight bits per ASCII byte. ASCII bytes have a leading
//! 0, so the rendering ends at the first 8-bit chunk starting with 1 (or at
//! the first incomplete chunk).

use super::VerifyError;
use crate::bits::BitString;
use crate::formula::{parse_formula, Formula};

/// Splits `w` into its formula and the remaining body.
pub(crate) fn split(w: &[bool]) -> Result<(Formula, &[bool]), VerifyError> {
    let mut bytes = Vec::new();
    let mut pos = 0;
    while pos + 8 <= w.len() && !w[pos] {
        let byte = w[pos..pos + 8].iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        bytes.push(byte);
        pos += 8;
    }
    if bytes.is_empty() {
        return Err(VerifyError::BadEnvelope);
    }
    let text = std::str::from_utf8(&bytes).map_err(|_| VerifyError::BadEnvelope)?;
    let f = parse_formula(text).map_err(|_| VerifyError::BadEnvelope)?;
    if f.render() != text {
        return Err(VerifyError::NonCanonicalFormula);
    }
    Ok((f, &w[pos..]))
}

pub(crate) fn wrap(f: &Formula, body: &[bool]) -> BitString {
    let mut w = f.render_bits();
    w.extend_from(body);
    w
}
