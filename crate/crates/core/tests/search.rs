mod common;

use common::*;
use singmod::qforms::{class_number, enumerate_discriminants};
use singmod::search::{
    pair_product_check, singular_dependent_search_with, Finding, SearchReport, SingularSearchOptions,
};
use std::collections::{BTreeMap, BTreeSet};

/// Naive scan: every subset of size <= n_max, minimal iff dependent and every
/// proper subset independent.
fn brute_force(n_max: usize) -> BTreeSet<Vec<i64>> {
    let n = RATIONAL.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if idx.len() > n_max {
            continue;
        }
        let vals: Vec<i64> = idx.iter().map(|&i| RATIONAL[i].1).collect();
        if !dependent(&vals) {
            continue;
        }
        let minimal = (1u32..(1 << idx.len()) - 1).all(|sub| {
            let s: Vec<i64> = (0..idx.len()).filter(|i| sub >> i & 1 == 1).map(|i| vals[i]).collect();
            !dependent(&s)
        });
        if minimal {
            out.insert(idx.iter().map(|&i| RATIONAL[i].0).collect());
        }
    }
    out
}

fn rational_report(n_max: usize) -> SearchReport {
    singular_dependent_search_with(&SingularSearchOptions::new(200, n_max).rational_only()).unwrap()
}

fn tuples(r: &SearchReport) -> Vec<&singmod::search::DependentTuple> {
    r.findings
        .iter()
        .map(|f| match f {
            Finding::DependentTuple(t) => t,
            _ => panic!("unexpected finding kind"),
        })
        .collect()
}

#[test]
fn rational_search_matches_brute_force() {
    let r = rational_report(5);
    assert!(r.complete);
    let found: BTreeSet<Vec<i64>> = tuples(&r).iter().map(|t| t.discriminants.clone()).collect();
    assert_eq!(found, brute_force(5));
}

#[test]
fn worked_example_tuples_are_found() {
    let r = rational_report(5);
    let ts = tuples(&r);
    let by_ds: BTreeMap<Vec<i64>, _> = ts.iter().map(|t| (t.discriminants.clone(), *t)).collect();
    let expected: [&[i64]; 3] = [&[-4, -11, -19], &[-7, -8, -12, -27], &[-4, -11, -16, -27, -67]];
    for ds in expected {
        let t = by_ds.get(ds).unwrap_or_else(|| panic!("missing {ds:?}"));
        let vals: Vec<i64> =
            ds.iter().map(|d| RATIONAL.iter().find(|(e, _)| e == d).unwrap().1).collect();
        let kernel = nullspace(&vals);
        assert_eq!(kernel.len(), 1);
        let oracle = primitive(&kernel[0]);
        let neg: Vec<i64> = oracle.iter().map(|x| -x).collect();
        assert!(t.primitive_exponents == oracle || t.primitive_exponents == neg);
        // value of the primitive relation is the sign of Π x^a
        let negatives: i64 = oracle.iter().zip(&vals).filter(|(_, v)| **v < 0).map(|(a, _)| *a).sum();
        assert_eq!(t.primitive_value_order, if negatives % 2 == 0 { 1 } else { 2 });
        assert_eq!(t.complexity.delta, ds.iter().map(|d| d.unsigned_abs()).max().unwrap());
    }
    // with true signs the 5-tuple's primitive relation has value −1
    assert_eq!(by_ds[&vec![-4, -11, -16, -27, -67]].primitive_value_order, 2);
}

#[test]
fn no_dependent_pairs() {
    let r = rational_report(2);
    assert!(r.findings.is_empty());
    assert!(brute_force(2).is_empty());
}

#[test]
fn findings_survive_serialization() {
    let r = rational_report(5);
    let json = r.to_json().unwrap();
    assert_eq!(json, rational_report(5).to_json().unwrap());
    let back = SearchReport::from_json(&json).unwrap();
    assert_eq!(back, r);
    assert!(back.reverify_all().unwrap());
}

#[test]
fn unit_pairs_are_absent() {
    let r = pair_product_check(200).unwrap();
    assert!(r.complete);
    assert!(r.findings.is_empty());
    assert_eq!(r.exclusion_reasons.values().sum::<u64>(), r.exclusions);
    assert!(r.caveats.iter().any(|c| c.contains("200")));
    // all nonzero moduli: class numbers summed, minus j = 0
    let n: u64 = enumerate_discriminants(200).unwrap().into_iter().map(|d| class_number(d) as u64).sum::<u64>() - 1;
    assert_eq!(r.exclusions, n * (n + 1) / 2);
}
