//! Propositional formulas in the DeMorgan language, their clausal forms,
//! and the DIMACS codec.

mod ast;
mod cnf;
mod dimacs;
mod parse;
mod tseitin;

pub use ast::{is_tautology_bruteforce, Assignment, Formula, Substitution, TautologyCheck, DEFAULT_TAUTOLOGY_CAP};
pub use cnf::{Clause, Cnf, Lit};
pub use dimacs::{from_dimacs, to_dimacs};
pub use parse::{parse_formula, ParseError};
pub use tseitin::negate_to_cnf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("assignment covers {got} variables but the formula needs {need}")]
    AssignmentTooShort { need: u32, got: usize },
    #[error("{vars} variables exceed the exhaustive-check cap of {cap}")]
    CapExceeded { vars: u32, cap: u32 },
    #[error("clause contains the complementary pair {0} / -{0}")]
    TautologicalClause(u32),
    #[error("literal 0 is not allowed in a clause")]
    ZeroLiteral,
    #[error("literal {lit} out of range for {var_count} variables")]
    LiteralOutOfRange { lit: Lit, var_count: u32 },
    #[error("DIMACS: {0}")]
    Dimacs(String),
}
