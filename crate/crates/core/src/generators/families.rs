//! Named formula families `n ↦ τ_n`, computable from `(tag, n)` alone.

use serde::{Deserialize, Serialize};

use super::php::php_tautology;
use crate::bits::BitString;
use crate::machine::{assemble, run, Program};
use crate::formula::{Formula, Lit};

/// Indices scanned when looking up which member of a family a formula is.
pub const FAMILY_SCAN_LIMIT: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyGenerator {
    /// The `PHP_n` tautology, `n ≥ 1`.
    Php,
    /// `(x1|~x1|…|~x1)` with `n` negated copies.
    PaddedExcludedMiddle,
    /// `(x1 ∧ (x1→x2) ∧ … ∧ (x_{n−1}→x_n)) → x_n`, `n ≥ 1`.
    ImplicationChain,
    /// `⋁_{i≤n} (x_i ∨ ¬x_i)` flattened: `(x1|~x1|x2|~x2|…)`.
    ExcludedMiddleSpread,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub tag: String,
    pub generator: FamilyGenerator,
    /// Largest index this registry entry serves.
    pub max_index: u64,
    /// Human-readable description of the short program that prints instance `n`.
    pub seed: String,
}

impl FamilySpec {
    pub fn instance(&self, n: u64) -> Option<Formula> {
        if n == 0 || n > self.max_index {
            return None;
        }
        let n32 = n as u32;
        Some(match self.generator {
            FamilyGenerator::Php => php_tautology(n32),
            FamilyGenerator::PaddedExcludedMiddle => {
                Formula::or(std::iter::once(Formula::var(1)).chain((0..n).map(|_| Formula::not(Formula::var(1)))).collect())
            }
            FamilyGenerator::ImplicationChain => {
                let mut premises = vec![Formula::var(1)];
                for i in 1..n32 {
                    premises.push(Formula::or(vec![Formula::lit(-(i as Lit)), Formula::var(i + 1)]));
                }
                let premise = if premises.len() == 1 { premises.pop().unwrap() } else { Formula::and(premises) };
                Formula::or(vec![Formula::not(premise), Formula::var(n32)])
            }
            FamilyGenerator::ExcludedMiddleSpread => {
                Formula::or((1..=n32).flat_map(|i| [Formula::var(i), Formula::not(Formula::var(i))]).collect())
            }
        })
    }
}

pub fn builtin_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec { tag: "php".into(), generator: FamilyGenerator::Php, max_index: FAMILY_SCAN_LIMIT, seed: "sys php_taut n".into() },
        FamilySpec {
            tag: "padded-em".into(),
            generator: FamilyGenerator::PaddedExcludedMiddle,
            max_index: 1 << 20,
            seed: "lit \"(x1\"; rep n { lit \"|~x1\" }; lit \")\"".into(),
        },
        FamilySpec { tag: "chain".into(), generator: FamilyGenerator::ImplicationChain, max_index: FAMILY_SCAN_LIMIT, seed: "implication chain of length n".into() },
        FamilySpec { tag: "em-spread".into(), generator: FamilyGenerator::ExcludedMiddleSpread, max_index: FAMILY_SCAN_LIMIT, seed: "x_i|~x_i for i = 1..n".into() },
    ]
}

pub fn family_spec(tag: &str) -> Option<FamilySpec> {
    builtin_families().into_iter().find(|f| f.tag == tag)
}

pub fn is_family(tag: &str) -> bool {
    family_spec(tag).is_some()
}

pub fn family_instance(tag: &str, n: u64) -> Option<Formula> {
    family_spec(tag)?.instance(n)
}

/// A short program printing the rendering of member `n` from empty input,
/// with the exact number of steps it takes. `None` when the family has no
/// generator shorter than a plain print program.
pub fn seed_program(tag: &str, n: u64) -> Option<(Program, u64)> {
    let src = match tag {
        "php" if n <= crate::machine::PHP_TAUT_MAX => format!("sys php_taut {n}"),
        "padded-em" => format!("lit \"(x1\"; rep {n} {{ lit \"|~x1\" }}; lit \")\""),
        _ => return None,
    };
    let p = assemble(&src).expect("seed programs assemble");
    let out = run(&p, &BitString::new(), u64::MAX);
    debug_assert_eq!(Some(&out.output), family_instance(tag, n).map(|f| f.render_bits()).as_ref());
    out.halted().then_some((p, out.steps))
}

/// Loads a registry file: a JSON array of [`FamilySpec`].
pub fn registry_from_json(text: &str) -> Result<Vec<FamilySpec>, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::is_tautology_bruteforce;

    #[test]
    fn small_instances_are_tautologies() {
        for fam in builtin_families() {
            for n in 1..=4 {
                let f = fam.instance(n).unwrap();
                assert!(is_tautology_bruteforce(&f, 24).unwrap().is_tautology(), "{} {n}", fam.tag);
                assert_eq!(crate::formula::parse_formula(&f.render()).unwrap(), f);
            }
            assert!(fam.instance(0).is_none());
        }
        assert_eq!(family_instance("padded-em", 2).unwrap().render(), "(x1|~x1|~x1)");
        assert_eq!(family_instance("chain", 1).unwrap().render(), "(~x1|x1)");
    }

    #[test]
    fn seed_programs_print_members() {
        for (tag, n) in [("php", 1), ("php", 5), ("padded-em", 3), ("padded-em", 40)] {
            let (p, t) = seed_program(tag, n).unwrap();
            let out = run(&p, &BitString::new(), t);
            assert!(out.halted());
            assert_eq!(out.output, family_instance(tag, n).unwrap().render_bits());
        }
        assert!(seed_program("chain", 2).is_none());
    }

    #[test]
    fn registry_round_trip() {
        let json = serde_json::to_string(&builtin_families()).unwrap();
        assert_eq!(registry_from_json(&json).unwrap(), builtin_families());
    }
}
