//! Complexities of modular-dependent pairs and predicates for mixed triples.

use super::complexity::{counted, extra, ComplexityKind, ComplexityReport};
use crate::error::{Error, Result};
use crate::modfun::{recognize_singular_modulus, AlgebraicNumber, Source};
use crate::modpoly::is_isogenous;
use crate::relations::find_relation;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Search limits for the pair and triple predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateBudget {
    /// largest isogeny level tried
    pub level_max: u64,
    /// largest exponent in a multiplicative relation
    pub exponent_bound: u64,
    /// largest `|D|` tried when recognizing a singular modulus
    pub discriminant_budget: u64,
}

impl Default for PredicateBudget {
    fn default() -> Self {
        PredicateBudget { level_max: 6, exponent_bound: 24, discriminant_budget: 500 }
    }
}

/// `(order, k)` with `x = exp(2πi k / order)`, when `x` is a root of unity.
pub fn torsion_data(x: &AlgebraicNumber) -> Option<(u64, u64)> {
    match x.source() {
        Source::RootOfUnity { order, k } => Some((*order, *k)),
        Source::Rational(q) if q.is_one() => Some((1, 0)),
        Source::Rational(q) if (-q).is_one() => Some((2, 1)),
        _ => None,
    }
}

fn check_nonzero(xs: &[&AlgebraicNumber]) -> Result<()> {
    if xs.iter().any(|x| x.is_zero()) {
        return Err(Error::Domain("inputs must be nonzero".into()));
    }
    Ok(())
}

fn same(x: &AlgebraicNumber, y: &AlgebraicNumber) -> bool {
    x.min_poly() == y.min_poly() && x.embedding().overlaps(y.embedding())
}

fn check_distinct(xs: &[&AlgebraicNumber]) -> Result<()> {
    for i in 0..xs.len() {
        for j in 0..i {
            if same(xs[i], xs[j]) {
                return Err(Error::Domain(format!("entries {} and {} coincide", j + 1, i + 1)));
            }
        }
    }
    Ok(())
}

/// Least `max(|a|, |b|, c)` over `gcd(a, b) = 1`, `c >= 1` with `(x^a y^b)^c = 1`.
fn relation_complexity(x: &AlgebraicNumber, y: &AlgebraicNumber, bound: u64) -> Result<Option<(i64, i64, u64)>> {
    if let (Some((m1, k1)), Some((m2, k2))) = (torsion_data(x), torsion_data(y)) {
        // every (a, b) works, with c the order of x^a y^b; (1, 0) and (0, 1)
        // give min(m1, m2), so larger |a|, |b| never help
        let r = m1.min(m2) as i64;
        let l = m1.lcm(&m2) as i64;
        let mut best = (m1.min(m2), 1i64, 0i64, m1);
        if m2 < m1 {
            best = (m2, 0, 1, m2);
        }
        for a in -r..=r {
            for b in -r..=r {
                if a.gcd(&b) != 1 {
                    continue;
                }
                // x^a y^b = exp(2πi e / l)
                let e = (a * k1 as i64 * (l / m1 as i64) + b * k2 as i64 * (l / m2 as i64)).rem_euclid(l);
                let c = (l / e.gcd(&l)) as u64;
                let m = a.unsigned_abs().max(b.unsigned_abs()).max(c);
                if m < best.0 {
                    best = (m, a, b, c);
                }
            }
        }
        return Ok(Some((best.1, best.2, best.3)));
    }
    // rank at most one: every relation is a multiple of a primitive one, which
    // is the relation of least sup norm
    let Some(cert) = find_relation(&[x.clone(), y.clone()], bound)? else {
        return Ok(None);
    };
    let (p, q) = (cert.exponents[0], cert.exponents[1]);
    let g = p.gcd(&q);
    Ok(Some((p / g, q / g, g.unsigned_abs())))
}

/// Complexity of a modular-dependent pair: the least `max(N, |a|, |b|, c)`
/// with `Φ_N(x, y) = 0`, `(x^a y^b)^c = 1`, `N, c >= 1`, `gcd(a, b) = 1`.
/// `None` when no witness exists within the budget.
pub fn modular_dependent_complexity(
    x: &AlgebraicNumber,
    y: &AlgebraicNumber,
    budget: &PredicateBudget,
) -> Result<Option<ComplexityReport>> {
    check_nonzero(&[x, y])?;
    // N and (a, b, c) are independent, so each is minimized separately
    let Some(n) = is_isogenous(x, y, budget.level_max)? else {
        return Ok(None);
    };
    let Some((a, b, c)) = relation_complexity(x, y, budget.exponent_bound)? else {
        return Ok(None);
    };
    Ok(Some(ComplexityReport::new(
        ComplexityKind::ModularDependentPair,
        vec![counted("N", n as i64), counted("a", a), counted("b", b), counted("c", c as i64)],
    )))
}

/// Largest exponent of the least relation between `x1` and `x2`, if any.
fn dependence(x1: &AlgebraicNumber, x2: &AlgebraicNumber, bound: u64) -> Result<Option<i64>> {
    Ok(find_relation(&[x1.clone(), x2.clone()], bound)?
        .map(|c| c.exponents.iter().map(|a| a.abs()).max().unwrap_or(0)))
}

/// Triple with `x3` a root of unity, `x1, x2` multiplicatively dependent and
/// all three pairwise isogenous. The complexity is the max of the order `M`
/// of `x3` and the least isogeny degrees `N1`, `N2` from `x3` to `x1`, `x2`.
pub fn verify_isogenous_triple(
    x1: &AlgebraicNumber,
    x2: &AlgebraicNumber,
    x3: &AlgebraicNumber,
    budget: &PredicateBudget,
) -> Result<Option<ComplexityReport>> {
    check_nonzero(&[x1, x2, x3])?;
    check_distinct(&[x1, x2, x3])?;
    let Some((m, _)) = torsion_data(x3) else {
        return Ok(None);
    };
    let Some(n1) = is_isogenous(x3, x1, budget.level_max)? else {
        return Ok(None);
    };
    let Some(n2) = is_isogenous(x3, x2, budget.level_max)? else {
        return Ok(None);
    };
    let Some(n12) = is_isogenous(x1, x2, budget.level_max)? else {
        return Ok(None);
    };
    let Some(b) = dependence(x1, x2, budget.exponent_bound)? else {
        return Ok(None);
    };
    Ok(Some(ComplexityReport::new(
        ComplexityKind::IsogenousTriple,
        vec![counted("M", m as i64), counted("N1", n1 as i64), counted("N2", n2 as i64), extra("N12", n12 as i64), extra("B", b)],
    )))
}

/// Triple with `x1` a singular modulus, `x2, x3` isogenous, `x3` a root of
/// unity and `x1, x2` multiplicatively dependent; complexity `max(|D|, M, N)`.
/// Singular moduli are recognized only for `|D| <= discriminant_budget`.
pub fn verify_singular_triple(
    x1: &AlgebraicNumber,
    x2: &AlgebraicNumber,
    x3: &AlgebraicNumber,
    budget: &PredicateBudget,
) -> Result<Option<ComplexityReport>> {
    check_nonzero(&[x1, x2, x3])?;
    check_distinct(&[x1, x2, x3])?;
    let Some((m, _)) = torsion_data(x3) else {
        return Ok(None);
    };
    let Some(d) = recognize_singular_modulus(x1, budget.discriminant_budget)? else {
        return Ok(None);
    };
    let Some(n) = is_isogenous(x2, x3, budget.level_max)? else {
        return Ok(None);
    };
    let Some(b) = dependence(x1, x2, budget.exponent_bound)? else {
        return Ok(None);
    };
    Ok(Some(ComplexityReport::new(
        ComplexityKind::SingularTriple,
        vec![counted("D", d.value()), counted("M", m as i64), counted("N", n as i64), extra("B", b)],
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_i64(v)
    }

    fn root(m: u64, k: u64) -> AlgebraicNumber {
        AlgebraicNumber::root_of_unity(m, k).unwrap()
    }

    #[test]
    fn diagonal_pair_has_complexity_one() {
        let b = PredicateBudget::default();
        let r = modular_dependent_complexity(&int(1728), &int(1728), &b).unwrap().unwrap();
        assert_eq!(r.delta, 1);
        let z = root(5, 2);
        let r = modular_dependent_complexity(&z, &z, &b).unwrap().unwrap();
        assert_eq!(r.delta, 1);
        assert!(r.is_consistent());
    }

    #[test]
    fn isogenous_but_independent_pair() {
        let b = PredicateBudget { level_max: 3, exponent_bound: 6, discriminant_budget: 50 };
        assert_eq!(modular_dependent_complexity(&int(1728), &int(287496), &b).unwrap(), None);
        assert!(modular_dependent_complexity(&int(0), &int(1), &b).is_err());
    }

    #[test]
    fn isogenous_triple_rejections() {
        let b = PredicateBudget::default();
        assert_eq!(verify_isogenous_triple(&int(2), &int(3), &int(5), &b).unwrap(), None);
        assert!(verify_isogenous_triple(&int(1728), &int(287496), &int(1728), &b).is_err());
    }

    #[test]
    fn singular_triple_rejections() {
        let b = PredicateBudget { level_max: 3, exponent_bound: 8, discriminant_budget: 50 };
        assert_eq!(verify_singular_triple(&int(1728), &int(7), &int(-1), &b).unwrap(), None);
        assert_eq!(verify_singular_triple(&int(7), &int(1728), &int(-1), &b).unwrap(), None);
    }

    #[test]
    fn recognition() {
        let d = recognize_singular_modulus(&int(287496), 500).unwrap().unwrap();
        assert_eq!(d.abs(), 16);
        assert_eq!(recognize_singular_modulus(&int(7), 500).unwrap(), None);
    }

    #[test]
    fn torsion_orders() {
        assert_eq!(torsion_data(&int(-1)), Some((2, 1)));
        assert_eq!(torsion_data(&root(12, 5)), Some((12, 5)));
        assert_eq!(torsion_data(&int(2)), None);
    }
}
