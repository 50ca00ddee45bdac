//! Text formats: solution files, witness certificates and census manifests.
//!
//! A solution file is a JSON object with fields `n`, `f` and optionally `g`.
//! Each permutation is a 1-based one-line array (`[2, 4, 1, 3]`) or a
//! cycle-notation string (`"(1,2,4,3)"`). Missing `g` is derived from `f`.
//! Output always uses one-line arrays.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::census::{CensusCounts, CensusEntry};
use crate::error::{Error, Result};
use crate::frozen::{TorsionWitness, WitnessCheck};
use crate::perm::Permutation;
use crate::solution::{Solution, TowerStatus, ValidationError};
use crate::word::Word;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum PermText {
    OneLine(Vec<usize>),
    Cycles(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub n: usize,
    pub f: Vec<PermText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<PermText>>,
}

impl SolutionFile {
    pub fn from_solution(s: &Solution) -> Self {
        let (f, g) = s.tables();
        SolutionFile {
            n: s.size(),
            f: f.into_iter().map(PermText::OneLine).collect(),
            g: Some(g.into_iter().map(PermText::OneLine).collect()),
        }
    }

    pub fn to_solution(&self) -> Result<Solution, ValidationError> {
        let lower = |rows: &[PermText], name: &str| -> Result<Vec<Vec<usize>>, ValidationError> {
            rows.iter()
                .enumerate()
                .map(|(x, r)| match r {
                    PermText::OneLine(v) => Ok(v.clone()),
                    PermText::Cycles(c) => Permutation::parse_cycles(self.n, c)
                        .map(|p| p.one_line())
                        .map_err(|e| {
                            ValidationError::Malformed(vec![format!("{name}_{}: {e}", x + 1)])
                        }),
                })
                .collect()
        };
        let f = lower(&self.f, "f")?;
        let g = self.g.as_deref().map(|g| lower(g, "g")).transpose()?;
        Solution::validate(self.n, &f, g.as_deref())
    }
}

pub fn parse_solution(text: &str) -> Result<Solution, ValidationError> {
    let file: SolutionFile = serde_json::from_str(text)
        .map_err(|e| ValidationError::Malformed(vec![format!("solution file: {e}")]))?;
    file.to_solution()
}

/// One permutation per line.
pub fn render_solution(s: &Solution) -> String {
    let (f, g) = s.tables();
    let rows = |t: &[Vec<usize>]| {
        t.iter()
            .map(|r| format!("    {}", serde_json::to_string(r).expect("integers serialize")))
            .collect::<Vec<_>>()
            .join(",\n")
    };
    format!(
        "{{\n  \"n\": {},\n  \"f\": [\n{}\n  ],\n  \"g\": [\n{}\n  ]\n}}\n",
        s.size(),
        rows(&f),
        rows(&g)
    )
}

/// A replayable generalized-torsion certificate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub solution: SolutionFile,
    /// 1-based.
    pub k: usize,
    /// 1-based.
    pub i: usize,
    pub p: usize,
    pub commutator: String,
    pub conjugators: Vec<String>,
}

impl WitnessCertificate {
    pub fn new(s: &Solution, w: &TorsionWitness) -> Self {
        WitnessCertificate {
            solution: SolutionFile::from_solution(s),
            k: w.k + 1,
            i: w.i + 1,
            p: w.p,
            commutator: w.commutator.to_string(),
            conjugators: w.conjugators.iter().map(Word::to_string).collect(),
        }
    }

    /// Rebuilds the solution and words from text and re-evaluates them.
    pub fn verify(&self) -> Result<WitnessCheck> {
        let s = self.solution.to_solution()?;
        let witness = TorsionWitness {
            k: self.k.saturating_sub(1),
            i: self.i.saturating_sub(1),
            p: self.p,
            commutator: self.commutator.parse()?,
            conjugators: self
                .conjugators
                .iter()
                .map(|c| c.parse())
                .collect::<Result<_>>()?,
        };
        if witness.conjugators.is_empty() {
            return Err(Error::InvalidInput("certificate lists no conjugators".into()));
        }
        witness.verify(&s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ManifestEntry {
    pub file: String,
    pub decomposable: bool,
    pub retractable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stuck_size: Option<usize>,
    pub class: usize,
    pub presentation_digest: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusManifest {
    pub n: usize,
    pub total: usize,
    pub decomposable: usize,
    pub retractable_by_level: BTreeMap<usize, usize>,
    pub non_retractable: usize,
    pub non_retractable_indecomposable: usize,
    pub entries: Vec<ManifestEntry>,
}

pub fn entry_file_name(n: usize, index: usize) -> String {
    format!("n{n}-{:03}.sol", index + 1)
}

impl CensusManifest {
    pub fn new(n: usize, entries: &[CensusEntry], counts: &CensusCounts) -> Self {
        CensusManifest {
            n,
            total: counts.total,
            decomposable: counts.decomposable,
            retractable_by_level: counts.retractable_by_level.clone(),
            non_retractable: counts.non_retractable,
            non_retractable_indecomposable: counts.non_retractable_indecomposable,
            entries: entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let (retractable, level, stuck_size) = match e.tower {
                        TowerStatus::Retractable { level } => (true, Some(level), None),
                        TowerStatus::NonRetractable { stuck_size } => {
                            (false, None, Some(stuck_size))
                        }
                    };
                    ManifestEntry {
                        file: entry_file_name(n, i),
                        decomposable: e.decomposable,
                        retractable,
                        level,
                        stuck_size,
                        class: e.class,
                        presentation_digest: e.presentation_digest.clone(),
                    }
                })
                .collect(),
        }
    }
}
