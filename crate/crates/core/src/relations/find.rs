//! Finding multiplicative relations: an exact kernel route for factored
//! rationals and a lattice route for arbitrary algebraic numbers.

use super::certificate::{verify_relation, RelationCertificate, Verification};
use super::factored::FactoredRational;
use super::lattice::{combine, integer_kernel, lll, normalize, short_vectors};
use crate::arith::elementary::{atan2, log, pi};
use crate::arith::{Mag, RealBall};
use crate::error::{Error, Result};
use crate::modfun::AlgebraicNumber;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Node budget for the short-vector enumeration.
pub const ENUMERATION_LIMIT: usize = 2_000_000;

/// Basis of the exponent vectors `a` with `Π x_i^{a_i} = ±1` (`with_sign =
/// false`) or `= 1` (`with_sign = true`), LLL-reduced.
pub fn exact_relation_lattice(members: &[FactoredRational], with_sign: bool) -> Vec<Vec<BigInt>> {
    let n = members.len();
    let primes: BTreeSet<BigInt> = members.iter().flat_map(|m| m.exponents().keys().cloned()).collect();
    let rows: Vec<Vec<BigInt>> =
        primes.iter().map(|p| members.iter().map(|m| BigInt::from(m.exponent(p))).collect()).collect();
    let mut basis = integer_kernel(&rows, n);
    if with_sign {
        // keep the sublattice with Σ a_i ε_i even, ε_i = 1 for negative members
        let parity = |v: &Vec<BigInt>| -> bool {
            let s: BigInt = v.iter().zip(members).filter(|(_, m)| m.sign() < 0).map(|(a, _)| a.clone()).sum();
            num_integer::Integer::is_odd(&s)
        };
        if let Some(j0) = basis.iter().position(parity) {
            let pivot = basis[j0].clone();
            for (j, b) in basis.iter_mut().enumerate() {
                if j == j0 {
                    continue;
                }
                if parity(b) {
                    for (x, y) in b.iter_mut().zip(&pivot) {
                        *x -= y;
                    }
                }
            }
            for x in basis[j0].iter_mut() {
                *x *= 2;
            }
        }
    }
    lll(&basis)
}

fn to_i64s(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Budget(format!("exponent {x} does not fit in 64 bits"))))
        .collect()
}

fn rationals(members: &[FactoredRational]) -> Vec<AlgebraicNumber> {
    members.iter().map(|m| AlgebraicNumber::from_rational(&m.to_rational())).collect()
}

/// Exponent vectors from the exact route, normalized so the first nonzero
/// entry is positive. The first basis vector is the shortest found.
pub fn exact_relation_basis(members: &[FactoredRational]) -> Result<Vec<Vec<i64>>> {
    exact_relation_lattice(members, true).iter().map(|v| to_i64s(&sign_normalize(v))).collect()
}

fn sign_normalize(v: &[BigInt]) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(f) if f.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// Exact relation among factored rationals: the integer kernel of the
/// prime-exponent matrix cut down by the sign parity condition. Returns the
/// generator when the relation lattice has rank 1, otherwise its shortest
/// reduced basis vector.
pub fn find_relation_exact(members: &[FactoredRational]) -> Result<Option<RelationCertificate>> {
    let basis = exact_relation_basis(members)?;
    let Some(first) = basis.first().cloned() else {
        return Ok(None);
    };
    let minimal = is_minimal_dependent_exact(members);
    let nums = rationals(members);
    debug_assert_eq!(verify_relation(&nums, &first).ok(), Some(Verification::Exact));
    Ok(Some(RelationCertificate::new(&nums, first, Verification::Exact, minimal)?))
}

/// Rank of the relation lattice (value exactly 1).
pub fn relation_rank(members: &[FactoredRational]) -> usize {
    exact_relation_lattice(members, true).len()
}

fn subsets_independent<F>(n: usize, dependent: F) -> Result<bool>
where
    F: Fn(&[usize]) -> Result<bool> + Sync,
{
    let full = (1u64 << n) - 1;
    let masks: Vec<u64> = (1..full).collect();
    let results: Vec<Result<bool>> = masks
        .par_iter()
        .map(|&mask| {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            dependent(&idx)
        })
        .collect();
    for r in results {
        if r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dependent, with every proper nonempty subset independent; subsets are
/// decided by the rank of their exact relation lattice.
pub fn is_minimal_dependent_exact(members: &[FactoredRational]) -> bool {
    let n = members.len();
    if n == 0 || n > 20 || relation_rank(members) == 0 {
        return false;
    }
    subsets_independent(n, |idx| {
        let sub: Vec<FactoredRational> = idx.iter().map(|&i| members[i].clone()).collect();
        Ok(relation_rank(&sub) > 0)
    })
    .unwrap_or(false)
}

/// Same, for algebraic numbers: exact when all members are rational,
/// otherwise using `find_relation` with exponent bound `bound` per subset.
pub fn is_minimal_dependent(members: &[AlgebraicNumber], bound: u64) -> Result<bool> {
    let n = members.len();
    if n == 0 {
        return Err(Error::Domain("empty member list".into()));
    }
    if n > 16 {
        return Err(Error::Budget(format!("{n} members is beyond subset enumeration")));
    }
    if members.iter().any(|m| m.is_zero()) {
        return Err(Error::Domain("relations need nonzero members".into()));
    }
    if let Some(fs) = as_factored(members)? {
        return Ok(is_minimal_dependent_exact(&fs));
    }
    if find_relation(members, bound)?.is_none() {
        return Ok(false);
    }
    subsets_independent(n, |idx| {
        let sub: Vec<AlgebraicNumber> = idx.iter().map(|&i| members[i].clone()).collect();
        Ok(find_relation(&sub, bound)?.is_some())
    })
}

fn as_factored(members: &[AlgebraicNumber]) -> Result<Option<Vec<FactoredRational>>> {
    let qs: Option<Vec<_>> = members.iter().map(|m| m.as_rational()).collect();
    match qs {
        Some(qs) => Ok(Some(qs.iter().map(FactoredRational::from_rational).collect::<Result<_>>()?)),
        None => Ok(None),
    }
}

/// `(log|α|, arg α)` as balls with radius below `2^-bits`.
fn log_and_arg(a: &AlgebraicNumber, bits: u32) -> Result<(RealBall, RealBall)> {
    let goal = Mag::pow2(-(bits as i64));
    let mut wp = bits + 32;
    for _ in 0..8 {
        let z = a.approx(wp)?;
        if !z.contains_zero() {
            let l = log(&z.norm_sqr(), wp)?.shr(1);
            let t = atan2(&z.im, &z.re, wp)?;
            if l.rad() <= goal && t.rad() <= goal {
                return Ok((l, t));
            }
        }
        wp *= 2;
    }
    Err(Error::Precision("could not resolve the logarithm of a member".into()))
}

/// Search for a nonzero `a` with `max |a_i| <= bound` and `Π α_i^{a_i} = 1`.
///
/// Every such `a`, paired with the integer `k` that absorbs the argument
/// sum modulo `2π`, is a short vector of the lattice spanned by rows
/// `(e_i, W log|α_i|, W arg α_i)` and `(0, 0, 2πW)` with entries rounded to
/// integers. All lattice vectors under the resulting norm bound are
/// enumerated and verified one by one, so `None` means no relation within
/// the bound exists.
pub fn find_relation(members: &[AlgebraicNumber], bound: u64) -> Result<Option<RelationCertificate>> {
    let n = members.len();
    if n == 0 {
        return Err(Error::Domain("empty member list".into()));
    }
    if bound == 0 {
        return Err(Error::Domain("exponent bound must be positive".into()));
    }
    if members.iter().any(|m| m.is_zero()) {
        return Err(Error::Domain("relations need nonzero members".into()));
    }
    let nb = (n as u64).saturating_mul(bound) as f64;
    let r_log2 = (2.0 * nb + 4.0).log2();
    let w = ((n as f64 + 1.0) / 2.0 * r_log2).ceil() as u32 + 32;
    let scale = |x: &RealBall| -> BigInt { x.shl(w).nearest_integer().0 };
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for (i, m) in members.iter().enumerate() {
        let (l, t) = log_and_arg(m, w + 2)?;
        let mut row = vec![BigInt::zero(); n + 2];
        row[i] = BigInt::from(1);
        row[n] = scale(&l);
        row[n + 1] = scale(&t);
        basis.push(row);
    }
    let mut last = vec![BigInt::zero(); n + 2];
    last[n + 1] = scale(&pi(w + 8).shl(1));
    basis.push(last);
    // each rounded entry is off by at most 1 from W times the true value
    let b = bound as f64;
    let r2 = (n as f64) * b * b + (nb + 1.0).powi(2) + (1.5 * nb + 2.0).powi(2);
    let r2 = BigInt::from(r2.ceil() as u128 + 1);
    let reduced = lll(&basis);
    let coeffs = short_vectors(&reduced, &r2, ENUMERATION_LIMIT)?;
    let mut cands: BTreeSet<(u64, u64, Vec<i64>)> = BTreeSet::new();
    for x in coeffs {
        let v = combine(&x, &reduced);
        let a = sign_normalize(&v[..n]);
        if a.iter().all(|c| c.is_zero()) || a.iter().any(|c| c.abs() > BigInt::from(bound)) {
            continue;
        }
        let a = to_i64s(&a)?;
        let max = a.iter().map(|c| c.unsigned_abs()).max().unwrap();
        let sum = a.iter().map(|c| c.unsigned_abs()).sum();
        cands.insert((max, sum, a));
    }
    let mut indeterminate = None;
    for (_, _, a) in cands {
        match verify_relation(members, &a) {
            Ok(Verification::Refuted) => {}
            Ok(v) => {
                let minimal = members.len() == 1 || minimal_support(members, &a, bound)?;
                return Ok(Some(RelationCertificate::new(members, a, v, minimal)?));
            }
            Err(e @ Error::Indeterminate(_)) => {
                indeterminate.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    match indeterminate {
        Some(e) => Err(e),
        None => Ok(None),
    }
}

/// Whether the whole member list is minimally dependent, given that `a` is a relation.
fn minimal_support(members: &[AlgebraicNumber], a: &[i64], bound: u64) -> Result<bool> {
    if a.iter().any(|&x| x == 0) {
        return Ok(false);
    }
    if let Some(fs) = as_factored(members)? {
        return Ok(is_minimal_dependent_exact(&fs));
    }
    if members.len() > 8 {
        return Ok(false);
    }
    subsets_independent(members.len(), |idx| {
        let sub: Vec<AlgebraicNumber> = idx.iter().map(|&i| members[i].clone()).collect();
        Ok(find_relation(&sub, bound)?.is_some())
    })
}

/// Primitive form of an exponent vector (content removed, sign normalized).
pub fn primitive_exponents(a: &[i64]) -> Vec<i64> {
    let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    normalize(&v).iter().map(|x| x.to_i64().unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfun::singular_moduli;
    use crate::qforms::Discriminant;

    fn fr(v: i64) -> FactoredRational {
        FactoredRational::from_i64(v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<AlgebraicNumber> {
        v.iter().map(|&x| AlgebraicNumber::from_i64(x)).collect()
    }

    #[test]
    fn exact_route() {
        let three = [fr(-32768), fr(-884736), fr(1728)];
        let c = find_relation_exact(&three).unwrap().unwrap();
        assert_eq!(c.exponents, vec![3, -5, 5]);
        assert!(c.minimal);
        let four = [fr(54000), fr(-12288000), fr(-3375), fr(8000)];
        let c = find_relation_exact(&four).unwrap().unwrap();
        assert_eq!(relation_rank(&four), 1);
        assert_eq!(c.reverify().unwrap(), Verification::Exact);
        assert!(find_relation_exact(&[fr(2), fr(3)]).unwrap().is_none());
    }

    #[test]
    fn lattice_route_matches_exact() {
        let c = find_relation(&ints(&[4, 8]), 10).unwrap().unwrap();
        assert_eq!(c.exponents, vec![3, -2]);
        let c = find_relation(&ints(&[-32768, -884736, 1728]), 10).unwrap().unwrap();
        assert_eq!(c.exponents, vec![3, -5, 5]);
        assert!(find_relation(&ints(&[2, 3]), 100).unwrap().is_none());
        // −2 alone: (−2)^a = 1 never holds
        assert!(find_relation(&ints(&[-2]), 50).unwrap().is_none());
        assert_eq!(find_relation(&ints(&[-1]), 5).unwrap().unwrap().exponents, vec![2]);
    }

    #[test]
    fn minimality() {
        assert!(!is_minimal_dependent(&ints(&[4, 8, 5]), 10).unwrap());
        assert!(!is_minimal_dependent(&ints(&[2]), 10).unwrap());
        assert!(is_minimal_dependent(&ints(&[4, 8]), 10).unwrap());
    }

    #[test]
    fn relation_among_conjugates() {
        let s = singular_moduli(Discriminant::new(-23).unwrap()).unwrap();
        let mut ms: Vec<AlgebraicNumber> = s.iter().map(|x| x.value().clone()).collect();
        ms.push(AlgebraicNumber::from_i64(-12771880859375));
        let c = find_relation(&ms, 3).unwrap().unwrap();
        assert_eq!(c.exponents, vec![1, 1, 1, -1]);
        assert_eq!(c.mode, super::super::certificate::Mode::CertifiedNumeric);
        // two conjugates alone are independent at this bound
        assert!(find_relation(&ms[..2], 4).unwrap().is_none());
    }
}
