//! A desk-scale laboratory for the information efficiency of propositional
//! proofs.
//!
//! The crate provides a concrete universal machine with exact step accounting
//! ([`machine`]), exact and certified time-bounded Kolmogorov complexity
//! `Kt(w|u)` over it ([`kt`]), pluggable proof systems with verifiers and exact
//! proof-size search ([`proofs`]), the two universal proof-search algorithms and
//! the information-efficiency measure `i_P` ([`search`]), formula families and
//! constructive proofs ([`generators`]), and a reproducible measurement
//! pipeline ([`bench`]).

pub mod bench;
pub mod bits;
pub mod formula;
pub mod generators;
pub mod kt;
pub mod machine;
pub mod proofs;
pub mod search;

pub use bits::BitString;
