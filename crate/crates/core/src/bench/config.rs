//! Bench configuration: one JSON file with the corpus, systems and budgets.

use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::formula::{parse_formula, Formula};
use crate::generators::{family_instance, is_family, seed_program};
use crate::machine::{Program, MACHINE_VERSION};
use crate::proofs::ProofSystemId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FamilyRange {
    pub tag: String,
    pub from: u64,
    pub to: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CorpusSpec {
    #[serde(default)]
    pub families: Vec<FamilyRange>,
    /// Extra formulas in the documented text syntax.
    #[serde(default)]
    pub formulas: Vec<String>,
    /// Apply the uniformity filter and report its verdict per formula.
    #[serde(default)]
    pub filter: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Budgets {
    /// Highest level the information search tries.
    pub level_cap: u64,
    /// Charged-step cap of the Levin search.
    pub step_cap: u64,
    /// Largest proof size the exact size search looks for.
    pub cap_bits: u64,
    /// Highest level of the exhaustive `Kt(τ)` search.
    pub kt_budget: u64,
    /// Node budget of each exact size search.
    #[serde(default = "default_size_nodes")]
    pub size_nodes: u64,
}

fn default_size_nodes() -> u64 {
    2_000_000
}

/// Where `measure` writes its report and keeps its caches, relative to the working directory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Outputs {
    pub dir: String,
    pub cache: String,
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { dir: "bench-out".into(), cache: "bench-cache".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BenchConfig {
    pub machine_version: String,
    pub corpus: CorpusSpec,
    /// System names as accepted by [`ProofSystemId::parse`].
    pub systems: Vec<String>,
    pub budgets: Budgets,
    #[serde(default)]
    pub outputs: Outputs,
}

/// One formula of the corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusItem {
    pub id: String,
    pub formula: Formula,
    /// A short program printing the rendering, with its running time.
    pub seed: Option<(Program, u64)>,
}

impl BenchConfig {
    /// A small corpus that every system handles within seconds.
    pub fn toy() -> BenchConfig {
        BenchConfig {
            machine_version: MACHINE_VERSION.to_string(),
            corpus: CorpusSpec {
                families: vec![
                    FamilyRange { tag: "em-spread".into(), from: 1, to: 2 },
                    FamilyRange { tag: "chain".into(), from: 1, to: 2 },
                    FamilyRange { tag: "padded-em".into(), from: 1, to: 2 },
                    FamilyRange { tag: "php".into(), from: 1, to: 1 },
                ],
                formulas: vec!["T".into(), "~F".into(), "((x1&x2)->x1)".into(), "((x1->x2)|(x2->x1))".into()],
                filter: true,
            },
            systems: vec!["tt".into(), "res".into(), "er".into(), "ps".into()],
            budgets: Budgets { level_cap: 24, step_cap: 20_000_000, cap_bits: 2048, kt_budget: 20, size_nodes: 200_000 },
            outputs: Outputs::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<BenchConfig, BenchError> {
        serde_json::from_str(text).map_err(|e| BenchError::Usage(format!("config: {e}")))
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.machine_version != MACHINE_VERSION {
            return Err(BenchError::VersionMismatch { expected: MACHINE_VERSION.to_string(), found: self.machine_version.clone() });
        }
        let b = &self.budgets;
        if b.level_cap == 0 || b.step_cap == 0 || b.cap_bits == 0 || b.kt_budget == 0 || b.size_nodes == 0 {
            return Err(BenchError::Usage("budgets must be positive".into()));
        }
        self.systems()?;
        self.corpus()?;
        Ok(())
    }

    pub fn systems(&self) -> Result<Vec<ProofSystemId>, BenchError> {
        self.systems.iter().map(|s| ProofSystemId::parse(s).ok_or_else(|| BenchError::Usage(format!("unknown system {s:?}")))).collect()
    }

    pub fn corpus(&self) -> Result<Vec<CorpusItem>, BenchError> {
        let mut items = Vec::new();
        for r in &self.corpus.families {
            items.extend(family_items(&r.tag, r.from, r.to)?);
        }
        for (k, text) in self.corpus.formulas.iter().enumerate() {
            let f = parse_formula(text).map_err(|e| BenchError::Usage(format!("formula {text:?}: {e}")))?;
            items.push(CorpusItem { id: format!("f{k}"), formula: f, seed: None });
        }
        Ok(items)
    }
}

pub fn family_items(tag: &str, from: u64, to: u64) -> Result<Vec<CorpusItem>, BenchError> {
    if !is_family(tag) {
        return Err(BenchError::Usage(format!("unknown family {tag:?}")));
    }
    (from..=to)
        .map(|n| {
            let formula = family_instance(tag, n).ok_or_else(|| BenchError::Usage(format!("{tag} has no member {n}")))?;
            Ok(CorpusItem { id: format!("{tag}-{n}"), formula, seed: seed_program(tag, n) })
        })
        .collect()
}
