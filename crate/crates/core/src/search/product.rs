//! Pairs of singular moduli with `σ1 σ2 = 1`.

use super::report::{Finding, SearchKind, SearchParameters, SearchReport, UnitPair};
use crate::error::{Error, Result};
use crate::modfun::{class_poly, singular_moduli};
use crate::qforms::{enumerate_discriminants, Discriminant};
use crate::relations::{verify_relation, RelationCertificate, Verification};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub const DEFAULT_MAX_PAIRS: u64 = 10_000_000;

/// Nonzero moduli of one discriminant, summarized by degree and norm.
struct Group {
    d: Discriminant,
    count: u64,
    degree: usize,
    /// `|N(σ)| = 1`, i.e. `|H_D(0)| = 1`
    unit: bool,
}

fn groups(delta_max: u64) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    for d in enumerate_discriminants(delta_max)? {
        let h = class_poly(d)?;
        let c0 = h.coeff(0);
        // j = 0 is a simple root, and only for D = −3
        let count = h.degree() as u64 - u64::from(c0.is_zero());
        if count == 0 {
            continue;
        }
        out.push(Group { d, count, degree: h.degree(), unit: c0.abs().is_one() });
    }
    Ok(out)
}

pub fn pair_product_check(delta_max: u64) -> Result<SearchReport> {
    pair_product_check_with(delta_max, DEFAULT_MAX_PAIRS)
}

/// Examine every unordered pair `{σ1, σ2}` (repetition allowed) of nonzero
/// singular moduli with `|D| <= delta_max`.
///
/// `σ1 σ2 = 1` forces `σ2 = 1/σ1`, so both have the same degree and `σ1` is
/// a unit, whose norm `±H_D(0)` is `±1`. Pairs failing either condition are
/// refuted exactly; the remaining ones are checked with the relation verifier.
/// Pairs are processed by the larger discriminant; the check stops before a
/// block that would exceed `max_pairs`.
pub fn pair_product_check_with(delta_max: u64, max_pairs: u64) -> Result<SearchReport> {
    if delta_max < 3 {
        return Err(Error::Domain("delta_max must be at least 3".into()));
    }
    let gs = groups(delta_max)?;
    let mut report = SearchReport {
        kind: SearchKind::PairProduct,
        parameters: SearchParameters {
            delta_max: Some(delta_max),
            max_candidates: Some(max_pairs),
            ..Default::default()
        },
        findings: Vec::new(),
        exclusions: 0,
        exclusion_reasons: BTreeMap::new(),
        complete: true,
        completed_range: BTreeMap::new(),
        caveats: vec![format!(
            "pairs of nonzero singular moduli with |D| <= {delta_max}, repetition allowed; nothing is claimed beyond this range"
        )],
    };
    let mut examined = 0u64;
    let mut completed = 0u64;
    for (j, gj) in gs.iter().enumerate() {
        let block: u64 = gs[..j].iter().map(|gi| gi.count * gj.count).sum::<u64>() + gj.count * (gj.count + 1) / 2;
        if examined + block > max_pairs {
            report.complete = false;
            report.caveats.push(format!("pair budget {max_pairs} reached; |D| <= {completed} was searched completely"));
            break;
        }
        for (i, gi) in gs[..=j].iter().enumerate() {
            let n = if i == j { gj.count * (gj.count + 1) / 2 } else { gi.count * gj.count };
            let reason = if gi.degree != gj.degree {
                Some("degree_mismatch")
            } else if !gi.unit || !gj.unit {
                Some("not_a_unit")
            } else {
                None
            };
            if let Some(r) = reason {
                report.exclusions += n;
                *report.exclusion_reasons.entry(r.into()).or_insert(0) += n;
                continue;
            }
            let (a, b) = (singular_moduli(gi.d)?, singular_moduli(gj.d)?);
            for (x, sx) in a.iter().enumerate() {
                for (y, sy) in b.iter().enumerate() {
                    if sx.is_zero() || sy.is_zero() || (i == j && y < x) {
                        continue;
                    }
                    let members = [sx.value().clone(), sy.value().clone()];
                    match verify_relation(&members, &[1, 1])? {
                        Verification::Refuted => {
                            report.exclusions += 1;
                            *report.exclusion_reasons.entry("numeric_refutation".into()).or_insert(0) += 1;
                        }
                        v => report.findings.push(Finding::UnitPair(UnitPair {
                            discriminants: [gi.d.value(), gj.d.value()],
                            certificate: RelationCertificate::new(&members, vec![1, 1], v, true)?,
                        })),
                    }
                }
            }
        }
        examined += block;
        completed = gj.d.abs();
    }
    if report.complete {
        completed = delta_max;
    }
    if !report.findings.is_empty() {
        report.caveats.push(format!(
            "UNEXPECTED: {} pair(s) with σ1 σ2 = 1 were certified; no such pair is expected to exist",
            report.findings.len()
        ));
    }
    report.completed_range.insert("delta".into(), completed);
    Ok(report)
}

/// Number of unordered pairs with repetition among `n` objects.
pub fn pair_count(n: u64) -> BigInt {
    BigInt::from(n) * BigInt::from(n + 1) / 2
}
