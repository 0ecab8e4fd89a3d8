//! Search reports and their findings.

use super::complexity::ComplexityReport;
use crate::error::{Error, Result};
use crate::modpoly::ModularPairCertificate;
use crate::relations::{is_minimal_dependent, verify_relation, RelationCertificate};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    SingularDependent,
    PairProduct,
    ModularPairs,
}

/// Bounds a search ran with; unset fields do not apply to that search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational_only: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_candidates: Option<u64>,
}

/// A minimally dependent tuple of singular moduli.
///
/// `certificate` holds a relation with value exactly 1. The primitive
/// relation `primitive_exponents` has value a root of unity of order
/// `primitive_value_order` (2 means the value is −1), and the certified
/// exponents are that order times the primitive ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependentTuple {
    pub discriminants: Vec<i64>,
    pub certificate: RelationCertificate,
    #[serde(with = "crate::serde_bigint::i64s")]
    pub primitive_exponents: Vec<i64>,
    pub primitive_value_order: u64,
    pub complexity: ComplexityReport,
}

impl DependentTuple {
    pub fn reverify(&self) -> Result<bool> {
        let members = self.certificate.member_numbers()?;
        if members.len() != self.discriminants.len() || !self.complexity.is_consistent() {
            return Ok(false);
        }
        let k = self.primitive_value_order as i64;
        let scaled: Vec<i64> = self.primitive_exponents.iter().map(|&a| a * k).collect();
        let neg: Vec<i64> = scaled.iter().map(|a| -a).collect();
        if scaled != self.certificate.exponents && neg != self.certificate.exponents {
            return Ok(false);
        }
        if !self.certificate.reverify()?.holds() {
            return Ok(false);
        }
        // no smaller multiple of the primitive relation has value 1
        for t in 1..k {
            if k % t == 0 {
                let e: Vec<i64> = self.primitive_exponents.iter().map(|&a| a * t).collect();
                if verify_relation(&members, &e)?.holds() {
                    return Ok(false);
                }
            }
        }
        let bound = self.certificate.exponents.iter().map(|a| a.unsigned_abs()).max().unwrap_or(1);
        is_minimal_dependent(&members, bound)
    }
}

/// A pair of singular moduli with `σ1 σ2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPair {
    pub discriminants: [i64; 2],
    pub certificate: RelationCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Finding {
    DependentTuple(DependentTuple),
    UnitPair(UnitPair),
    ModularPair(ModularPairCertificate),
}

impl Finding {
    /// Re-check through the originating module's verifier.
    pub fn reverify(&self) -> Result<bool> {
        match self {
            Finding::DependentTuple(t) => t.reverify(),
            Finding::UnitPair(p) => Ok(p.certificate.exponents == [1, 1] && p.certificate.reverify()?.holds()),
            Finding::ModularPair(c) => c.verify(),
        }
    }
}

/// Overall outcome, used for exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Clean,
    Findings,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub kind: SearchKind,
    pub parameters: SearchParameters,
    pub findings: Vec<Finding>,
    /// candidates examined and refuted
    pub exclusions: u64,
    /// refutations grouped by the reason that settled them
    pub exclusion_reasons: BTreeMap<String, u64>,
    pub complete: bool,
    /// the range that was searched completely, per bound name
    pub completed_range: BTreeMap<String, u64>,
    pub caveats: Vec<String>,
}

impl SearchReport {
    pub fn status(&self) -> Status {
        if !self.complete {
            Status::Partial
        } else if self.findings.is_empty() {
            Status::Clean
        } else {
            Status::Findings
        }
    }

    /// Re-verify every finding.
    pub fn reverify_all(&self) -> Result<bool> {
        for f in &self.findings {
            if !f.reverify()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Certificate(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<SearchReport> {
        serde_json::from_str(s).map_err(|e| Error::Certificate(e.to_string()))
    }
}
