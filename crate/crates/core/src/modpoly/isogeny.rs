//! Deciding `Φ_N(x, y) = 0` for algebraic `x`, `y`.

use super::construct::{modular_polynomial_bounded, ModularPolynomial};
use crate::arith::BigComplex;
use crate::error::{Error, Result};
use crate::modfun::{AlgebraicNumber, Source};
use crate::nt::lcm_u64;
use crate::relations::{weil_height, MAX_VERIFY_BITS};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::f64::consts::LN_2;

/// How a zero test was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// exact rational or cyclotomic arithmetic
    Exact(bool),
    /// ball evaluation away from zero
    NumericNonzero { precision: u32 },
    /// ball evaluation below the separation bound
    CertifiedZero { precision: u32 },
}

impl ZeroTest {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroTest::Exact(true) | ZeroTest::CertifiedZero { .. })
    }
}

/// Rational number or root of unity, as needed for exact evaluation.
enum Cyclo {
    Rational(BigInt, BigInt),
    Root { order: u64, k: u64 },
}

fn as_cyclo(a: &AlgebraicNumber) -> Option<Cyclo> {
    match a.source() {
        Source::Rational(q) => Some(Cyclo::Rational(q.numer().clone(), q.denom().clone())),
        Source::RootOfUnity { order, k } => Some(Cyclo::Root { order: *order, k: *k }),
        _ => None,
    }
}

/// Exact evaluation when both inputs are rational or roots of unity: clear
/// denominators and reduce modulo the cyclotomic polynomial of the common order.
fn exact_zero(phi: &ModularPolynomial, x: &Cyclo, y: &Cyclo) -> bool {
    let psi = phi.degree() as u32;
    let order = match (x, y) {
        (Cyclo::Root { order: a, .. }, Cyclo::Root { order: b, .. }) => lcm_u64(*a, *b),
        (Cyclo::Root { order, .. }, _) | (_, Cyclo::Root { order, .. }) => *order,
        _ => 1,
    };
    // (numerator, denominator, exponent of ζ_order) of x^i, cleared to degree psi
    let part = |c: &Cyclo, i: u32| -> (BigInt, i64) {
        match c {
            Cyclo::Rational(p, q) => (num_traits::pow(p.clone(), i as usize) * num_traits::pow(q.clone(), (psi - i) as usize), 0),
            Cyclo::Root { order: m, k } => (BigInt::from(1), (i as u64 * k * (order / m)) as i64),
        }
    };
    let mut s = crate::cyclotomic::CyclotomicSum::new(order);
    for (i, j, c) in phi.terms() {
        let (a, ea) = part(x, i as u32);
        let (b, eb) = part(y, j as u32);
        s.add_term(&(c * a * b), ea + eb);
    }
    s.is_zero()
}

/// `log2` of a bound for `|Φ(x, y)|`-scale terms, used to size precision.
fn magnitude_log2(phi: &ModularPolynomial, x: &BigComplex, y: &BigComplex) -> f64 {
    let l1: BigInt = phi.terms().map(|(_, _, c)| c.abs()).sum();
    let lx = x.abs_upper().to_f64().max(1.0).log2();
    let ly = y.abs_upper().to_f64().max(1.0).log2();
    l1.bits() as f64 + phi.degree() as f64 * (lx + ly)
}

/// Decide `Φ(x, y) = 0`.
///
/// Rationals and roots of unity are handled exactly. Otherwise `Φ(x, y)` is
/// an algebraic number of degree at most `deg x · deg y` and height at most
/// `log L(Φ) + ψ (h(x) + h(y))`; it vanishes iff its modulus is below
/// `exp(−degree · height)`.
pub fn phi_zero_test(phi: &ModularPolynomial, x: &AlgebraicNumber, y: &AlgebraicNumber) -> Result<ZeroTest> {
    if let (Some(cx), Some(cy)) = (as_cyclo(x), as_cyclo(y)) {
        return Ok(ZeroTest::Exact(exact_zero(phi, &cx, &cy)));
    }
    let mut sep: Option<f64> = None;
    let mut prec = 128u32;
    loop {
        let ax = x.approx(64)?;
        let ay = y.approx(64)?;
        let wp = prec + magnitude_log2(phi, &ax, &ay).ceil() as u32 + 32;
        let v = phi.eval_complex(&x.approx(wp)?, &y.approx(wp)?);
        if !v.contains_zero() {
            return Ok(ZeroTest::NumericNonzero { precision: prec });
        }
        let sep = match sep {
            Some(s) => s,
            None => {
                let l1: BigInt = phi.terms().map(|(_, _, c)| c.abs()).sum();
                let h = l1.bits() as f64 * LN_2
                    + phi.degree() as f64 * (weil_height(x)?.upper() + weil_height(y)?.upper());
                let d = (x.degree() * y.degree()) as f64;
                let s = -d * h / LN_2;
                sep = Some(s);
                s
            }
        };
        let up = v.abs_upper();
        if up.is_zero() || (up.log2_ceil() as f64) < sep {
            return Ok(ZeroTest::CertifiedZero { precision: prec });
        }
        if prec >= MAX_VERIFY_BITS {
            return Err(Error::Indeterminate(format!(
                "Φ_{}(x, y) is within 2^{} of zero but separation needs 2^{sep:.0}",
                phi.level(),
                up.log2_ceil()
            )));
        }
        prec = (prec * 2).max((-sep) as u32 + 64).min(MAX_VERIFY_BITS);
    }
}

/// The least `N <= n_max` with `Φ_N(x, y) = 0`, if any.
pub fn is_isogenous(x: &AlgebraicNumber, y: &AlgebraicNumber, n_max: u64) -> Result<Option<u64>> {
    for n in 1..=n_max {
        let phi = modular_polynomial_bounded(n, n_max)?;
        if phi_zero_test(&phi, x, y)?.is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Like [`is_isogenous`] but for integers, evaluated exactly.
pub fn is_isogenous_int(x: &BigInt, y: &BigInt, n_max: u64) -> Result<Option<u64>> {
    for n in 1..=n_max {
        if modular_polynomial_bounded(n, n_max)?.eval_int(x, y).is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfun::singular_moduli;
    use crate::qforms::Discriminant;

    fn int(x: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_i64(x)
    }

    #[test]
    fn rational_cases() {
        assert_eq!(is_isogenous(&int(1728), &int(1728), 5).unwrap(), Some(1));
        assert_eq!(is_isogenous(&int(1728), &int(287496), 5).unwrap(), Some(2));
        assert_eq!(is_isogenous(&int(287496), &int(1728), 5).unwrap(), Some(2));
        assert_eq!(is_isogenous(&int(0), &int(1), 5).unwrap(), None);
        // j(ρ) = 0 and j(3ρ) = −12288000 (D = −27)
        assert_eq!(is_isogenous_int(&BigInt::from(0), &BigInt::from(-12288000), 5).unwrap(), Some(3));
    }

    #[test]
    fn roots_of_unity_exact() {
        let z = AlgebraicNumber::root_of_unity(3, 1).unwrap();
        let w = AlgebraicNumber::root_of_unity(3, 2).unwrap();
        let phi = modular_polynomial_bounded(1, 1).unwrap();
        assert_eq!(phi_zero_test(&phi, &z, &z).unwrap(), ZeroTest::Exact(true));
        assert_eq!(phi_zero_test(&phi, &z, &w).unwrap(), ZeroTest::Exact(false));
        let half = AlgebraicNumber::from_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        let phi2 = modular_polynomial_bounded(2, 2).unwrap();
        assert_eq!(phi_zero_test(&phi2, &half, &z).unwrap(), ZeroTest::Exact(false));
    }

    #[test]
    fn cm_values_of_one_class() {
        // the two roots of H_{−15} are 2-isogenous (the forms (1,1,4) and (2,1,2))
        let s = singular_moduli(Discriminant::new(-15).unwrap()).unwrap();
        let (a, b) = (s[0].value(), s[1].value());
        let n = is_isogenous(a, b, 4).unwrap();
        assert_eq!(n, Some(2));
        assert_eq!(is_isogenous(b, a, 4).unwrap(), Some(2));
        assert_eq!(is_isogenous(a, a, 4).unwrap(), Some(1));
        assert_eq!(is_isogenous(a, &int(1728), 3).unwrap(), None);
    }
}
