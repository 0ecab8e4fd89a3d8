//! Relation certificates and their verification.

use super::bounds::liouville_separation_log2;
use super::height::weil_height;
use crate::arith::BigComplex;
use crate::error::{Error, Result};
use crate::modfun::{AlgebraicNumber, AlgebraicRecord, Source};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Highest precision tried before a numeric check gives up.
pub const MAX_VERIFY_BITS: u32 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    CertifiedNumeric,
}

/// Outcome of checking `Π α_i^{a_i} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Verification {
    Exact,
    CertifiedNumeric { precision: u32 },
    Refuted,
}

impl Verification {
    pub fn holds(&self) -> bool {
        !matches!(self, Verification::Refuted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub members: Vec<AlgebraicRecord>,
    #[serde(with = "crate::serde_bigint::i64s")]
    pub exponents: Vec<i64>,
    pub mode: Mode,
    pub numeric_precision: Option<u32>,
    pub minimal: bool,
}

impl RelationCertificate {
    pub fn new(members: &[AlgebraicNumber], exponents: Vec<i64>, v: Verification, minimal: bool) -> Result<Self> {
        let (mode, numeric_precision) = match v {
            Verification::Exact => (Mode::Exact, None),
            Verification::CertifiedNumeric { precision } => (Mode::CertifiedNumeric, Some(precision)),
            Verification::Refuted => return Err(Error::Certificate("refuted relation cannot be certified".into())),
        };
        Ok(RelationCertificate {
            members: members.iter().map(|m| m.to_record()).collect(),
            exponents,
            mode,
            numeric_precision,
            minimal,
        })
    }

    pub fn member_numbers(&self) -> Result<Vec<AlgebraicNumber>> {
        self.members.iter().map(AlgebraicNumber::from_record).collect()
    }

    /// Rebuild the members from their records and check the identity again.
    pub fn reverify(&self) -> Result<Verification> {
        verify_relation(&self.member_numbers()?, &self.exponents)
    }
}

/// Decide `Π α^a = 1` symbolically when every member is rational or a root
/// of unity: the product is `r · exp(2πi s)` with `r` rational and `s` mod 1.
fn exact_product_is_one(members: &[AlgebraicNumber], exps: &[i64]) -> Option<bool> {
    let mut r = BigRational::one();
    let mut s = BigRational::zero();
    for (m, &a) in members.iter().zip(exps) {
        if a == 0 {
            continue;
        }
        match m.source() {
            Source::Rational(q) => {
                let p = num_traits::pow(q.clone(), a.unsigned_abs() as usize);
                r *= if a < 0 { p.recip() } else { p };
            }
            Source::RootOfUnity { order, k } => {
                s += BigRational::new(BigInt::from(*k) * a, BigInt::from(*order));
            }
            _ => return None,
        }
    }
    let s = &s - s.floor();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Some((r.is_one() && s.is_zero()) || (r == -BigRational::one() && s == half))
}

/// `Π α_i^{a_i}` as a ball with absolute error about `2^-prec`.
pub fn product_ball(members: &[AlgebraicNumber], exps: &[i64], prec: u32) -> Result<BigComplex> {
    // magnitude bookkeeping: each factor contributes |a| · |log2 |α||
    let mut extra = 0f64;
    for (m, &a) in members.iter().zip(exps) {
        if a != 0 {
            let z = m.approx(64)?;
            let lo = z.abs_lower().to_f64().max(1e-300).log2();
            let hi = z.abs_upper().to_f64().max(1e-300).log2();
            extra += (a.unsigned_abs() as f64) * lo.abs().max(hi.abs());
        }
    }
    let wp = prec + extra.ceil() as u32 + 32 + 8 * members.len() as u32;
    let mut acc = BigComplex::one(wp);
    for (m, &a) in members.iter().zip(exps) {
        if a != 0 {
            acc = &acc * &m.approx(wp)?.powi(a)?;
        }
    }
    Ok(acc)
}

/// Check `Π members_i^{exponents_i} = 1`.
///
/// Exact when every member is rational or a root of unity. Otherwise the
/// product is evaluated in ball arithmetic: excluding 1 refutes, and being
/// closer to 1 than the separation bound for an algebraic number of the
/// product's degree and height certifies.
pub fn verify_relation(members: &[AlgebraicNumber], exponents: &[i64]) -> Result<Verification> {
    if members.len() != exponents.len() {
        return Err(Error::Domain("members and exponents differ in length".into()));
    }
    if exponents.iter().all(|&a| a == 0) {
        return Err(Error::Domain("exponent vector is zero".into()));
    }
    if members.iter().zip(exponents).any(|(m, &a)| a != 0 && m.is_zero()) {
        return Err(Error::Domain("relations need nonzero members".into()));
    }
    if let Some(ok) = exact_product_is_one(members, exponents) {
        return Ok(if ok { Verification::Exact } else { Verification::Refuted });
    }
    let mut degree: u64 = 1;
    let mut height = 0f64;
    for (m, &a) in members.iter().zip(exponents) {
        if a != 0 {
            degree = degree.saturating_mul(m.degree() as u64);
            height += a.unsigned_abs() as f64 * weil_height(m)?.upper();
        }
    }
    let sep = liouville_separation_log2(degree, height);
    let mut prec = 128u32;
    loop {
        let p = product_ball(members, exponents, prec)?;
        let d = &p - &BigComplex::one(p.prec());
        if !d.contains_zero() {
            return Ok(Verification::Refuted);
        }
        let up = d.abs_upper();
        if up.is_zero() || (up.log2_ceil() as f64) < sep {
            return Ok(Verification::CertifiedNumeric { precision: prec });
        }
        if prec >= MAX_VERIFY_BITS {
            return Err(Error::Indeterminate(format!(
                "product within 2^{} of 1 but separation needs 2^{sep:.0}",
                up.log2_ceil()
            )));
        }
        prec = (prec * 2).max(((-sep) as u32).saturating_add(64)).min(MAX_VERIFY_BITS);
    }
}

/// Smallest `L > 0` with `x^L = 1` for a root of unity given by order and
/// exponent, used in reports.
pub fn order_of(order: u64, k: u64) -> u64 {
    order / k.gcd(&order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modfun::singular_moduli;
    use crate::qforms::Discriminant;

    fn ints(v: &[i64]) -> Vec<AlgebraicNumber> {
        v.iter().map(|&x| AlgebraicNumber::from_i64(x)).collect()
    }

    #[test]
    fn exact_checks() {
        assert_eq!(verify_relation(&ints(&[4, 8]), &[3, -2]).unwrap(), Verification::Exact);
        assert_eq!(verify_relation(&ints(&[2, 3]), &[1, 1]).unwrap(), Verification::Refuted);
        let i = AlgebraicNumber::root_of_unity(4, 1).unwrap();
        // i^2 · (−1) = 1
        let ms = vec![i, AlgebraicNumber::from_i64(-1)];
        assert_eq!(verify_relation(&ms, &[2, 1]).unwrap(), Verification::Exact);
        assert_eq!(verify_relation(&ms, &[1, 1]).unwrap(), Verification::Refuted);
        assert!(verify_relation(&ints(&[0, 2]), &[1, 1]).is_err());
    }

    #[test]
    fn numeric_checks_on_conjugates() {
        // the three roots of H_{-23} multiply to −12771880859375
        let s = singular_moduli(Discriminant::new(-23).unwrap()).unwrap();
        let mut ms: Vec<AlgebraicNumber> = s.iter().map(|x| x.value().clone()).collect();
        ms.push(AlgebraicNumber::from_i64(12771880859375));
        ms.push(AlgebraicNumber::from_i64(-1));
        let v = verify_relation(&ms, &[1, 1, 1, -1, 1]).unwrap();
        assert!(matches!(v, Verification::CertifiedNumeric { .. }));
        assert_eq!(verify_relation(&ms, &[1, 1, 1, -1, 0]).unwrap(), Verification::Refuted);
    }

    #[test]
    fn certificate_round_trip() {
        let ms = ints(&[4, 8]);
        let c = RelationCertificate::new(&ms, vec![3, -2], Verification::Exact, true).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: RelationCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.reverify().unwrap(), Verification::Exact);
    }
}
