use std::fmt::Write;

use super::{Clause, Cnf, FormulaError};

pub fn to_dimacs(c: &Cnf) -> String {
    let mut s = format!("p cnf {} {}\n", c.var_count(), c.clauses().len());
    for cl in c.clauses() {
        for l in cl.lits() {
            write!(s, "{l} ").unwrap();
        }
        s.push_str("0\n");
    }
    s
}

/// Parses DIMACS `cnf`. Comment lines start with `c`; clauses may span lines.
pub fn from_dimacs(text: &str) -> Result<Cnf, FormulaError> {
    let bad = |m: &str| FormulaError::Dimacs(m.to_string());
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(bad("duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(bad("malformed header"));
            }
            let n = parts[2].parse().map_err(|_| bad("malformed header"))?;
            let m = parts[3].parse().map_err(|_| bad("malformed header"))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| bad("clause before header"))?;
        for tok in line.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| bad(&format!("bad literal {tok:?}")))?;
            if l == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current))?);
            } else if l.unsigned_abs() > n {
                return Err(FormulaError::LiteralOutOfRange { lit: l, var_count: n });
            } else {
                current.push(l);
            }
        }
    }
    let (n, m) = header.ok_or_else(|| bad("missing header"))?;
    if !current.is_empty() {
        return Err(bad("unterminated clause"));
    }
    if clauses.len() != m {
        return Err(bad(&format!("header declares {m} clauses, found {}", clauses.len())));
    }
    Cnf::new(n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(to_dimacs(&Cnf::from_lits(1, vec![vec![1]]).unwrap()), "p cnf 1 1\n1 0\n");
        assert_eq!(to_dimacs(&Cnf::from_lits(3, vec![]).unwrap()), "p cnf 3 0\n");
    }

    #[test]
    fn decode_errors() {
        assert!(from_dimacs("p cnf x 1\n1 0\n").is_err());
        assert!(matches!(from_dimacs("p cnf 1 1\n2 0\n"), Err(FormulaError::LiteralOutOfRange { .. })));
        assert!(from_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(from_dimacs("1 0\n").is_err());
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let c = from_dimacs("c hi\np cnf 3 1\n1 -2\n 3 0\n").unwrap();
        assert_eq!(c.clauses()[0].lits(), &[1, -2, 3]);
    }
}
