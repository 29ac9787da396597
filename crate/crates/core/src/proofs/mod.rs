//! Cook–Reckhow proof systems as verifiers `P(w) = τ`.
//!
//! All proofs except the unary designated-family proofs share one layout:
//! the canonical rendering of `τ` (8 bits per ASCII byte), then a
//! system-specific body. A body always starts with a `1` bit, so the end of
//! the rendering is unambiguous.
//!
//! | system | body after the rendering |
//! |--------|--------------------------|
//! | `TT` | `1^(2^n)` |
//! | `Res`, `ER` | marker `1`, fixed-width resolution records ([`resolution`]) |
//! | `PS` | marker `1`, the encoded DPLL trace ([`dpll`]) |
//! | `PM(kind)` | marker `1`, the decider's record ([`decider`]) |
//!
//! `Q′(base, family)` accepts `1^n` as a proof of the `n`-th member of the
//! family and delegates every other string to `base`.

mod backward;
pub mod decider;
pub mod dpll;
mod envelope;
pub mod resolution;
pub mod size;
pub mod tt;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use decider::{run_decider, DeciderKind, DeciderRun};
pub use dpll::{dpll_solve, DpllResult, DpllTrace, TraceEvent};
pub use resolution::{refute, resolve, restrict_proof, Line, ResolutionProof, ResolveError};
pub use size::{s_p_exact, s_p_exact_budgeted, SizeError, SizeValue};
pub use tt::tt_proof;

use crate::bits::BitString;
use crate::formula::{negate_to_cnf, Formula};

/// Version of the bit encodings above. Reported next to every `s_P` value.
pub const PROOF_ENCODING_VERSION: &str = "proofs-1";

pub(crate) const PROOF_BODY_MARKER_BITS: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverConfig {
    /// Smallest unassigned variable, false first, unit propagation to fixpoint.
    FrozenDpll,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProofSystemId {
    Tt,
    Res,
    Er,
    Ps { solver: SolverConfig },
    #[serde(rename = "qprime")]
    QPrime { base: Box<ProofSystemId>, family: String },
    Decider { decider: DeciderKind },
}

impl ProofSystemId {
    pub fn ps() -> Self {
        ProofSystemId::Ps { solver: SolverConfig::FrozenDpll }
    }

    pub fn qprime(base: ProofSystemId, family: &str) -> Self {
        ProofSystemId::QPrime { base: Box::new(base), family: family.to_string() }
    }

    /// Parses `tt`, `res`, `er`, `ps`, `pm:<decider>`, `qprime:<family>:<base>`.
    pub fn parse(s: &str) -> Option<ProofSystemId> {
        let s = s.trim().to_ascii_lowercase();
        Some(match s.as_str() {
            "tt" => ProofSystemId::Tt,
            "res" => ProofSystemId::Res,
            "er" => ProofSystemId::Er,
            "ps" => ProofSystemId::ps(),
            "pm:bruteforce" => ProofSystemId::Decider { decider: DeciderKind::BruteForce },
            "pm:dpll" => ProofSystemId::Decider { decider: DeciderKind::Dpll },
            _ => {
                let rest = s.strip_prefix("qprime:")?;
                let (family, base) = rest.split_once(':')?;
                ProofSystemId::qprime(ProofSystemId::parse(base)?, family)
            }
        })
    }
}

impl fmt::Display for ProofSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofSystemId::Tt => f.write_str("tt"),
            ProofSystemId::Res => f.write_str("res"),
            ProofSystemId::Er => f.write_str("er"),
            ProofSystemId::Ps { .. } => f.write_str("ps"),
            ProofSystemId::QPrime { base, family } => write!(f, "qprime:{family}:{base}"),
            ProofSystemId::Decider { decider } => write!(f, "pm:{}", decider.name()),
        }
    }
}

/// Why a candidate proof was rejected.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyError {
    #[error("no formula rendering at the start of the proof")]
    BadEnvelope,
    #[error("formula rendering is not canonical")]
    NonCanonicalFormula,
    #[error("padding is not exactly 2^n one-bits")]
    BadPadding,
    #[error("formula is not a tautology")]
    NotTautology,
    #[error("too many variables for exhaustive evaluation")]
    CapExceeded,
    #[error("missing body marker bit")]
    BadMarker,
    #[error("proof ends inside a record")]
    Truncated,
    #[error("line index out of range")]
    BadIndex,
    #[error("premises do not clash on exactly one variable")]
    NoPivot,
    #[error("resolvent contains a complementary pair")]
    TautologicalResolvent,
    #[error("extension lines are not allowed in this system")]
    ExtensionNotAllowed,
    #[error("malformed extension")]
    BadExtension,
    #[error("last line is not the empty clause")]
    NotRefutation,
    #[error("trace diverges from the solver's run")]
    TraceDivergence,
    #[error("computation record diverges from the decider's run")]
    RecordDivergence,
    #[error("formula has a satisfying assignment for its negation")]
    Satisfiable,
    #[error("unknown formula family")]
    UnknownFamily,
    #[error("family has no member with this index")]
    FamilyOutOfRange,
    #[error("malformed text proof")]
    BadText,
}

impl VerifyError {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
    }
}

/// A candidate proof `w` together with the system it is checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofObject {
    pub system: ProofSystemId,
    pub bits: BitString,
}

/// The system-specific reading of a proof string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofView {
    Padded { formula: Formula, padding: usize },
    Derivation { formula: Formula, proof: ResolutionProof },
    Trace { formula: Formula, trace: DpllTrace },
    Record { formula: Formula, record: BitString },
    Unary(u64),
}

impl ProofObject {
    pub fn new(system: ProofSystemId, bits: BitString) -> Self {
        ProofObject { system, bits }
    }

    /// `|w|`, the quantity minimized by `s_P`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn verify(&self) -> Result<Formula, VerifyError> {
        verify(&self.system, self.bits.bits())
    }

    /// Decodes without checking soundness.
    pub fn view(&self) -> Result<ProofView, VerifyError> {
        view(&self.system, self.bits.bits())
    }
}

fn view(p: &ProofSystemId, w: &[bool]) -> Result<ProofView, VerifyError> {
    if let ProofSystemId::QPrime { base, .. } = p {
        if !w.is_empty() && w.iter().all(|&b| b) {
            return Ok(ProofView::Unary(w.len() as u64));
        }
        return view(base, w);
    }
    let (formula, body) = envelope::split(w)?;
    Ok(match p {
        ProofSystemId::Tt => ProofView::Padded { formula, padding: body.len() },
        ProofSystemId::Res | ProofSystemId::Er => {
            let proof = ResolutionProof::decode_body(&negate_to_cnf(&formula), body, matches!(p, ProofSystemId::Er))?;
            ProofView::Derivation { formula, proof }
        }
        ProofSystemId::Ps { .. } => {
            let body = strip_marker(body)?;
            let trace = DpllTrace::decode(&negate_to_cnf(&formula), body).ok_or(VerifyError::Truncated)?;
            ProofView::Trace { formula, trace }
        }
        ProofSystemId::Decider { .. } => ProofView::Record { formula, record: BitString::from_bits(strip_marker(body)?.to_vec()) },
        ProofSystemId::QPrime { .. } => unreachable!(),
    })
}

fn strip_marker(body: &[bool]) -> Result<&[bool], VerifyError> {
    match body.split_first() {
        Some((true, rest)) => Ok(rest),
        _ => Err(VerifyError::BadMarker),
    }
}

/// `P(w)`: the tautology proven by `w`, or the reason `w` is not a proof.
pub fn verify(p: &ProofSystemId, w: &[bool]) -> Result<Formula, VerifyError> {
    if let ProofSystemId::QPrime { base, family } = p {
        if !w.is_empty() && w.iter().all(|&b| b) {
            if !crate::generators::is_family(family) {
                return Err(VerifyError::UnknownFamily);
            }
            return crate::generators::family_instance(family, w.len() as u64).ok_or(VerifyError::FamilyOutOfRange);
        }
        return verify(base, w);
    }
    let (formula, body) = envelope::split(w)?;
    match p {
        ProofSystemId::Tt => tt::check_body(&formula, body)?,
        ProofSystemId::Res | ProofSystemId::Er => {
            let cnf = negate_to_cnf(&formula);
            let proof = ResolutionProof::decode_body(&cnf, body, matches!(p, ProofSystemId::Er))?;
            if proof.lines.len() == cnf.clauses().len() {
                // No derived lines: only an empty input clause refutes.
                if !cnf.clauses().iter().any(|c| c.is_empty()) {
                    return Err(VerifyError::NotRefutation);
                }
            } else {
                proof.check(true)?;
            }
        }
        ProofSystemId::Ps { .. } => {
            let body = strip_marker(body)?;
            match dpll_solve(&negate_to_cnf(&formula)) {
                DpllResult::Sat(_) => return Err(VerifyError::Satisfiable),
                DpllResult::Unsat(t) => {
                    if t.encode().bits() != body {
                        return Err(VerifyError::TraceDivergence);
                    }
                }
            }
        }
        ProofSystemId::Decider { decider } => {
            let body = strip_marker(body)?;
            let run = run_decider(*decider, &formula).map_err(|_| VerifyError::CapExceeded)?;
            if !run.accept {
                return Err(VerifyError::NotTautology);
            }
            if run.record.bits() != body {
                return Err(VerifyError::RecordDivergence);
            }
        }
        ProofSystemId::QPrime { .. } => unreachable!(),
    }
    Ok(formula)
}

/// The bit string of a resolution or ER derivation of `negate_to_cnf(τ)`.
pub fn encode_resolution(tau: &Formula, proof: &ResolutionProof) -> BitString {
    envelope::wrap(tau, proof.encode_body().bits())
}

/// Constructs some proof of `τ` in `p`, or `None` when `τ` is not a tautology
/// (or is beyond the exhaustive cap for truth tables).
pub fn prove(p: &ProofSystemId, tau: &Formula) -> Option<BitString> {
    match p {
        ProofSystemId::Tt => tt_proof(tau).ok(),
        ProofSystemId::Res | ProofSystemId::Er => refute(&negate_to_cnf(tau)).map(|pi| encode_resolution(tau, &pi)),
        ProofSystemId::Ps { .. } => match dpll_solve(&negate_to_cnf(tau)) {
            DpllResult::Unsat(t) => {
                let mut body = vec![true];
                body.extend_from_slice(t.encode().bits());
                Some(envelope::wrap(tau, &body))
            }
            DpllResult::Sat(_) => None,
        },
        ProofSystemId::Decider { decider } => {
            let run = run_decider(*decider, tau).ok()?;
            run.accept.then(|| {
                let mut body = vec![true];
                body.extend_from_slice(run.record.bits());
                envelope::wrap(tau, &body)
            })
        }
        ProofSystemId::QPrime { base, .. } => prove(base, tau),
    }
}

/// Re-tags a resolution proof as an ER proof. The bit string is unchanged.
pub fn embed_r_in_er(tau: &Formula, pi: &ResolutionProof) -> Result<ProofObject, VerifyError> {
    if pi.has_extensions() {
        return Err(VerifyError::BadExtension);
    }
    Ok(ProofObject::new(ProofSystemId::Er, encode_resolution(tau, pi)))
}
