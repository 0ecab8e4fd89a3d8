//! Desk-scale searches: dependent tuples of singular moduli, unit pairs,
//! modular pairs of roots of unity, and the mixed pair and triple predicates.

pub mod complexity;
pub mod dependent;
pub mod product;
pub mod report;
pub mod triples;

pub use complexity::{complexity_of_tuple, Component, ComplexityKind, ComplexityReport};
pub use dependent::{singular_dependent_search, singular_dependent_search_with, SingularSearchOptions, MAX_TUPLE_SIZE};
pub use product::{pair_product_check, pair_product_check_with};
pub use report::{DependentTuple, Finding, SearchKind, SearchParameters, SearchReport, Status, UnitPair};
pub use triples::{
    modular_dependent_complexity, torsion_data, verify_isogenous_triple, verify_singular_triple, PredicateBudget,
};

use crate::error::Result;
use crate::modpoly::modular_pair_search_with;
use std::collections::BTreeMap;

/// The modular-pair search as a report.
pub fn modular_pairs_report(m_max: u64, n_max: u64, max_evaluations: u64) -> Result<SearchReport> {
    let s = modular_pair_search_with(m_max, n_max, max_evaluations)?;
    let mut completed_range = BTreeMap::new();
    completed_range.insert("m".to_string(), s.completed_m_max);
    completed_range.insert("level".to_string(), n_max);
    let exclusions = s.evaluations - s.certificates.len() as u64;
    let mut exclusion_reasons = BTreeMap::new();
    exclusion_reasons.insert("nonzero".to_string(), exclusions);
    Ok(SearchReport {
        kind: SearchKind::ModularPairs,
        parameters: SearchParameters {
            m_max: Some(m_max),
            level_max: Some(n_max),
            max_candidates: Some(max_evaluations),
            ..Default::default()
        },
        findings: s.certificates.into_iter().map(Finding::ModularPair).collect(),
        exclusions,
        exclusion_reasons,
        complete: s.complete,
        completed_range,
        caveats: s.caveats,
    })
}
