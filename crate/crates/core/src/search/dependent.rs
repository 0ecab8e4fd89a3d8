//! Search for minimally dependent tuples of singular moduli.

use super::complexity::complexity_of_discriminants;
use super::report::{DependentTuple, Finding, SearchKind, SearchParameters, SearchReport};
use crate::error::{Error, Result};
use crate::modfun::{rational_singular_moduli, singular_moduli, AlgebraicNumber};
use crate::qforms::enumerate_discriminants;
use crate::relations::find::{exact_relation_lattice, primitive_exponents, relation_rank};
use crate::relations::lattice::normalize;
use crate::relations::{find_relation, verify_relation, FactoredRational, RelationCertificate, Verification};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Largest tuple size accepted.
pub const MAX_TUPLE_SIZE: usize = 8;
pub const DEFAULT_EXPONENT_BOUND: u64 = 24;
pub const DEFAULT_MAX_CANDIDATES: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSearchOptions {
    pub delta_max: u64,
    pub n_max: usize,
    /// only class-number-one moduli, all decided exactly
    pub rational_only: bool,
    /// exponent bound for relations among non-rational members
    pub exponent_bound: u64,
    pub max_candidates: u64,
}

impl SingularSearchOptions {
    pub fn new(delta_max: u64, n_max: usize) -> SingularSearchOptions {
        SingularSearchOptions {
            delta_max,
            n_max,
            rational_only: false,
            exponent_bound: DEFAULT_EXPONENT_BOUND,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    pub fn rational_only(mut self) -> Self {
        self.rational_only = true;
        self
    }
}

struct Item {
    d: i64,
    value: AlgebraicNumber,
    factored: Option<FactoredRational>,
}

fn items(opts: &SingularSearchOptions) -> Result<Vec<Item>> {
    let mut out = Vec::new();
    if opts.rational_only {
        for r in rational_singular_moduli()? {
            if r.discriminant.abs() > opts.delta_max {
                continue;
            }
            if let Some(f) = r.factored {
                out.push(Item { d: r.discriminant.value(), value: AlgebraicNumber::from_integer(&r.value), factored: Some(f) });
            }
        }
        return Ok(out);
    }
    for d in enumerate_discriminants(opts.delta_max)? {
        for s in singular_moduli(d)? {
            if s.is_zero() {
                continue;
            }
            let factored = match s.value().as_rational() {
                Some(q) => Some(FactoredRational::from_rational(&q)?),
                None => None,
            };
            out.push(Item { d: d.value(), value: s.value().clone(), factored });
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    r
}

/// All `r`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        out.push(c.clone());
        let mut i = r;
        while i > 0 && c[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        c[i - 1] += 1;
        for j in i..r {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Size-`k` subsets of `0..end` whose largest index is at least `start`,
/// ordered by largest index and then lexicographically.
fn block_subsets(start: usize, end: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for top in start..end {
        for mut c in combinations(top, k - 1) {
            c.push(top);
            out.push(c);
        }
    }
    out
}

fn contains(big: &[usize], small: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

enum Outcome {
    Dependent(DependentTuple),
    Independent,
    NoRelationWithinBound,
    Indeterminate,
}

fn exact_tuple(items: &[&Item], fs: &[FactoredRational]) -> Result<DependentTuple> {
    let lat = exact_relation_lattice(fs, false);
    let g = normalize(lat.first().ok_or_else(|| Error::Domain("tuple is independent".into()))?);
    let prim: Vec<i64> = g
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Budget(format!("exponent {x} does not fit in 64 bits"))))
        .collect::<Result<_>>()?;
    // Π x^g = ±1 with the sign decided by the negative members
    let odd: i64 = prim.iter().zip(fs).filter(|(_, f)| f.sign() < 0).map(|(a, _)| a).sum();
    let order = if odd.is_odd() { 2 } else { 1 };
    let nums: Vec<AlgebraicNumber> = items.iter().map(|i| i.value.clone()).collect();
    let exps: Vec<i64> = prim.iter().map(|a| a * order).collect();
    let v = verify_relation(&nums, &exps)?;
    let ds: Vec<i64> = items.iter().map(|i| i.d).collect();
    Ok(DependentTuple {
        complexity: complexity_of_discriminants(&ds),
        discriminants: ds,
        certificate: RelationCertificate::new(&nums, exps, v, true)?,
        primitive_exponents: prim,
        primitive_value_order: order as u64,
    })
}

fn numeric_tuple(items: &[&Item], cert: RelationCertificate) -> Result<DependentTuple> {
    let nums: Vec<AlgebraicNumber> = items.iter().map(|i| i.value.clone()).collect();
    let prim = primitive_exponents(&cert.exponents);
    let k = cert.exponents.iter().fold(0u64, |g, &a| g.gcd(&a.unsigned_abs()));
    let mut order = k;
    let mut v = None;
    for t in 1..=k {
        if k % t != 0 {
            continue;
        }
        let e: Vec<i64> = prim.iter().map(|&a| a * t as i64).collect();
        let r = verify_relation(&nums, &e)?;
        if r.holds() {
            order = t;
            v = Some(r);
            break;
        }
    }
    let v = v.unwrap_or(Verification::Refuted);
    let exps: Vec<i64> = prim.iter().map(|&a| a * order as i64).collect();
    let ds: Vec<i64> = items.iter().map(|i| i.d).collect();
    Ok(DependentTuple {
        complexity: complexity_of_discriminants(&ds),
        discriminants: ds,
        certificate: RelationCertificate::new(&nums, exps, v, true)?,
        primitive_exponents: prim,
        primitive_value_order: order,
    })
}

fn examine(all: &[Item], idx: &[usize], bound: u64) -> Result<Outcome> {
    let sub: Vec<&Item> = idx.iter().map(|&i| &all[i]).collect();
    let fs: Option<Vec<FactoredRational>> = sub.iter().map(|i| i.factored.clone()).collect();
    if let Some(fs) = fs {
        if relation_rank(&fs) == 0 {
            return Ok(Outcome::Independent);
        }
        return Ok(Outcome::Dependent(exact_tuple(&sub, &fs)?));
    }
    let nums: Vec<AlgebraicNumber> = sub.iter().map(|i| i.value.clone()).collect();
    match find_relation(&nums, bound) {
        Ok(Some(cert)) => Ok(Outcome::Dependent(numeric_tuple(&sub, cert)?)),
        Ok(None) => Ok(Outcome::NoRelationWithinBound),
        Err(Error::Indeterminate(_)) => Ok(Outcome::Indeterminate),
        Err(e) => Err(e),
    }
}

/// Minimally dependent tuples of nonzero singular moduli with `|D| <= delta_max`
/// and size at most `n_max`, under the default options.
pub fn singular_dependent_search(delta_max: u64, n_max: usize) -> Result<SearchReport> {
    singular_dependent_search_with(&SingularSearchOptions::new(delta_max, n_max))
}

/// Candidates are processed in blocks of equal `|D|` and, within a block, by
/// size. Since every proper subset of a candidate was examined earlier, a
/// dependent candidate is minimal iff it contains no earlier finding; those
/// containing one are excluded without testing. The search stops before a
/// block that would exceed `max_candidates`.
pub fn singular_dependent_search_with(opts: &SingularSearchOptions) -> Result<SearchReport> {
    if opts.n_max == 0 || opts.n_max > MAX_TUPLE_SIZE {
        return Err(Error::Domain(format!("tuple size must be in 1..={MAX_TUPLE_SIZE}")));
    }
    if opts.delta_max < 3 {
        return Err(Error::Domain("delta_max must be at least 3".into()));
    }
    if opts.exponent_bound == 0 {
        return Err(Error::Domain("exponent bound must be positive".into()));
    }
    let all = items(opts)?;
    let mut report = SearchReport {
        kind: SearchKind::SingularDependent,
        parameters: SearchParameters {
            delta_max: Some(opts.delta_max),
            n_max: Some(opts.n_max as u64),
            rational_only: Some(opts.rational_only),
            exponent_bound: Some(opts.exponent_bound),
            max_candidates: Some(opts.max_candidates),
            ..Default::default()
        },
        findings: Vec::new(),
        exclusions: 0,
        exclusion_reasons: BTreeMap::new(),
        complete: true,
        completed_range: BTreeMap::new(),
        caveats: vec![format!(
            "only |D| <= {} and tuples of size <= {} were searched; nothing is claimed beyond this range",
            opts.delta_max, opts.n_max
        )],
    };
    if opts.rational_only {
        report.caveats.push("restricted to rational singular moduli; j = 0 is excluded since relations need nonzero members".into());
    } else {
        report.caveats.push(format!(
            "tuples with a non-rational member are tested by a lattice search with exponents bounded by {}; relations with larger exponents are not detected",
            opts.exponent_bound
        ));
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut examined: u64 = 0;
    let mut completed_delta = 0u64;
    let mut start = 0;
    let mut indeterminate = 0u64;
    while start < all.len() {
        let mut end = start;
        while end < all.len() && all[end].d == all[start].d {
            end += 1;
        }
        let new: u128 = (1..=opts.n_max).map(|k| binomial(end, k) - binomial(start, k)).sum();
        if examined as u128 + new > opts.max_candidates as u128 {
            report.complete = false;
            report.caveats.push(format!(
                "candidate budget {} reached; |D| <= {completed_delta} was searched completely",
                opts.max_candidates
            ));
            break;
        }
        for k in 1..=opts.n_max {
            let cands = block_subsets(start, end, k);
            let outcomes: Vec<Result<Option<Outcome>>> = cands
                .par_iter()
                .map(|c| {
                    if found.iter().any(|f| contains(c, f)) {
                        return Ok(None);
                    }
                    examine(&all, c, opts.exponent_bound).map(Some)
                })
                .collect();
            for (c, o) in cands.into_iter().zip(outcomes) {
                examined += 1;
                let reason = match o? {
                    None => "contains_dependent_subset",
                    Some(Outcome::Independent) => "independent",
                    Some(Outcome::NoRelationWithinBound) => "no_relation_within_bound",
                    Some(Outcome::Indeterminate) => {
                        indeterminate += 1;
                        "indeterminate"
                    }
                    Some(Outcome::Dependent(t)) => {
                        report.findings.push(Finding::DependentTuple(t));
                        found.push(c);
                        continue;
                    }
                };
                report.exclusions += 1;
                *report.exclusion_reasons.entry(reason.to_string()).or_insert(0) += 1;
            }
        }
        completed_delta = all[start].d.unsigned_abs();
        start = end;
    }
    if report.complete {
        completed_delta = opts.delta_max;
    }
    if indeterminate > 0 {
        report.complete = false;
        report.caveats.push(format!("{indeterminate} candidates could not be decided at the maximum verification precision"));
    }
    report.completed_range.insert("delta".into(), completed_delta);
    report.completed_range.insert("n".into(), opts.n_max as u64);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_subsets_cover_new_combinations() {
        for (start, end, k) in [(0, 5, 2), (3, 6, 3), (4, 5, 1), (2, 7, 4)] {
            let s = block_subsets(start, end, k);
            assert_eq!(s.len() as u128, binomial(end, k) - binomial(start, k));
            for c in &s {
                assert!(c.windows(2).all(|w| w[0] < w[1]));
                assert!(*c.last().unwrap() >= start);
            }
            let mut u = s.clone();
            u.dedup();
            assert_eq!(u.len(), s.len());
        }
    }

    #[test]
    fn no_dependent_pairs_among_rationals() {
        let r = singular_dependent_search_with(&SingularSearchOptions::new(200, 2).rational_only()).unwrap();
        assert!(r.findings.is_empty());
        assert!(r.complete);
        // 12 nonzero values
        assert_eq!(r.exclusions, 12 + 66);
    }

    #[test]
    fn bad_options() {
        assert!(singular_dependent_search(200, 0).is_err());
        assert!(singular_dependent_search(200, 9).is_err());
        assert!(singular_dependent_search(2, 3).is_err());
    }

    #[test]
    fn budget_gives_partial_report() {
        let mut o = SingularSearchOptions::new(200, 3).rational_only();
        o.max_candidates = 50;
        let r = singular_dependent_search_with(&o).unwrap();
        assert!(!r.complete);
        assert!(r.completed_range["delta"] < 200);
    }

    #[test]
    fn small_general_search() {
        // |D| <= 20 covers a few non-rational moduli (e.g. D = −15, −20)
        let r = singular_dependent_search(20, 2).unwrap();
        assert!(r.complete);
        for f in &r.findings {
            assert!(f.reverify().unwrap());
        }
    }
}
