use std::fmt;

use super::{Assignment, FormulaError};

/// A literal: `+v` or `-v` for variable `v ≥ 1`.
pub type Lit = i32;

/// A non-tautological set of literals, kept sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// Normalizes (sorts, dedups) and rejects zero literals and complementary pairs.
    pub fn new(mut lits: Vec<Lit>) -> Result<Clause, FormulaError> {
        if lits.contains(&0) {
            return Err(FormulaError::ZeroLiteral);
        }
        lits.sort_by_key(|&l| (l.unsigned_abs(), l < 0));
        lits.dedup();
        for w in lits.windows(2) {
            if w[0] == -w[1] {
                return Err(FormulaError::TautologicalClause(w[0].unsigned_abs()));
            }
        }
        Ok(Clause(lits))
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.0.binary_search_by_key(&(l.unsigned_abs(), l < 0), |&x| (x.unsigned_abs(), x < 0)).is_ok()
    }

    pub fn max_var(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// `self ⊆ other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.0.iter().all(|&l| other.contains(l))
    }

    pub fn eval_mask(&self, mask: u64) -> bool {
        self.0.iter().any(|&l| ((mask >> (l.unsigned_abs() - 1)) & 1 == 1) == (l > 0))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf {
    var_count: u32,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(var_count: u32, clauses: Vec<Clause>) -> Result<Cnf, FormulaError> {
        for c in &clauses {
            if let Some(&lit) = c.lits().iter().find(|l| l.unsigned_abs() > var_count) {
                return Err(FormulaError::LiteralOutOfRange { lit, var_count });
            }
        }
        Ok(Cnf { var_count, clauses })
    }

    /// Builds from raw literal lists.
    pub fn from_lits(var_count: u32, clauses: Vec<Vec<Lit>>) -> Result<Cnf, FormulaError> {
        let cs = clauses.into_iter().map(Clause::new).collect::<Result<Vec<_>, _>>()?;
        Cnf::new(var_count, cs)
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.lits().iter().any(|&l| a.value(l.unsigned_abs()) == (l > 0)))
    }

    /// Exhaustive satisfiability check; first satisfying assignment in mask order.
    pub fn brute_force_model(&self) -> Option<Assignment> {
        assert!(self.var_count <= 30, "exhaustive check limited to 30 variables");
        (0..(1u64 << self.var_count))
            .find(|&m| self.clauses.iter().all(|c| c.eval_mask(m)))
            .map(|m| Assignment::from_mask(m, self.var_count))
    }
}
