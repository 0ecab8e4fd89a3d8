//! Singular moduli as exact algebraic numbers.

use super::algebraic::AlgebraicNumber;
use super::hilbert::class_poly;
use super::jeval::j_of_form;
use crate::error::{Error, Result};
use crate::qforms::{class_number, cm_point, enumerate_discriminants, reduced_forms, CMPoint, Discriminant};
use crate::relations::factored::FactoredRational;
use crate::roots::isolate_roots;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct SingularModulus {
    value: AlgebraicNumber,
    discriminant: Discriminant,
    cm: CMPoint,
}

impl SingularModulus {
    pub fn value(&self) -> &AlgebraicNumber {
        &self.value
    }

    pub fn discriminant(&self) -> Discriminant {
        self.discriminant
    }

    pub fn cm(&self) -> CMPoint {
        self.cm
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The value as an integer when the class number is 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.value.as_rational().map(|q| q.to_integer())
    }
}

/// One singular modulus per reduced form of discriminant `d`, in form order.
pub fn singular_moduli(d: Discriminant) -> Result<Vec<SingularModulus>> {
    let h = class_poly(d)?;
    let forms = reduced_forms(d);
    let mut prec = 64;
    'outer: for _ in 0..8 {
        let roots = isolate_roots(&h, prec)?;
        let mut out = Vec::with_capacity(forms.len());
        let mut used = vec![false; roots.len()];
        for f in &forms {
            let j = j_of_form(f, prec)?;
            let hits: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].overlaps(&j)).collect();
            if hits.len() != 1 || used[hits[0]] {
                prec *= 2;
                continue 'outer;
            }
            used[hits[0]] = true;
            let cm = cm_point(f)?;
            let value = if h.degree() == 1 {
                AlgebraicNumber::from_integer(&-h.coeff(0))
            } else {
                AlgebraicNumber::from_cm_parts(*f, h.clone(), roots[hits[0]].clone())
            };
            out.push(SingularModulus { value, discriminant: d, cm });
        }
        return Ok(out);
    }
    Err(Error::Precision(format!("could not match CM points to roots of the class polynomial for D = {d}")))
}

/// A class-number-one singular modulus with its factorization (`None` for zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSingularModulus {
    pub discriminant: Discriminant,
    #[serde(with = "crate::serde_bigint")]
    pub value: BigInt,
    pub factored: Option<FactoredRational>,
}

/// Bound on `|D|` for the class-number-one scan.
pub const RATIONAL_SCAN_BOUND: u64 = 200;

/// All rational singular moduli, found by scanning `|D| <= 200` for class number 1.
pub fn rational_singular_moduli() -> Result<Vec<RationalSingularModulus>> {
    let mut out = Vec::new();
    for d in enumerate_discriminants(RATIONAL_SCAN_BOUND)? {
        if class_number(d) != 1 {
            continue;
        }
        let value = -class_poly(d)?.coeff(0);
        let factored = if value.is_zero() { None } else { Some(FactoredRational::from_integer(&value)?) };
        out.push(RationalSingularModulus { discriminant: d, value, factored });
    }
    Ok(out)
}

/// The discriminant `D` with `|D| <= budget` whose class polynomial is the
/// minimal polynomial of `x`, if any. Only discriminants whose class number
/// equals the degree of `x` are tried.
pub fn recognize_singular_modulus(x: &AlgebraicNumber, budget: u64) -> Result<Option<Discriminant>> {
    let mp = x.min_poly();
    if !mp.is_monic() {
        return Ok(None);
    }
    for d in enumerate_discriminants(budget.max(3))? {
        if class_number(d) != x.degree() {
            continue;
        }
        if &class_poly(d)? == mp {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn class_number_one_values() {
        let s = singular_moduli(d(-11)).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].as_integer().unwrap(), BigInt::from(-32768));
        assert_eq!(singular_moduli(d(-16)).unwrap()[0].as_integer().unwrap(), BigInt::from(287496));
        assert!(singular_moduli(d(-3)).unwrap()[0].is_zero());
    }

    #[test]
    fn cubic_conjugates_are_separated() {
        let s = singular_moduli(d(-23)).unwrap();
        assert_eq!(s.len(), 3);
        for i in 0..3 {
            assert_eq!(s[i].value().min_poly(), &class_poly(d(-23)).unwrap());
            for k in i + 1..3 {
                assert!(!s[i].value().embedding().overlaps(s[k].value().embedding()));
            }
        }
        // the principal form gives the real root
        let z = s[0].value().approx(80).unwrap();
        assert!(z.im.contains_zero() && z.re.to_f64() < -3.4e6);
    }

    #[test]
    fn rational_scan() {
        let r = rational_singular_moduli().unwrap();
        assert_eq!(r.len(), 13);
        let get = |v: i64| r.iter().find(|x| x.discriminant.value() == v).unwrap();
        assert_eq!(get(-11).factored.as_ref().unwrap().to_string(), "-2^15");
        assert_eq!(get(-4).factored.as_ref().unwrap().to_string(), "2^6*3^3");
        assert_eq!(get(-27).factored.as_ref().unwrap().to_string(), "-2^15*3*5^3");
        assert!(get(-3).factored.is_none());
    }

    #[test]
    fn recognition() {
        let x = AlgebraicNumber::from_i64(287496);
        assert_eq!(recognize_singular_modulus(&x, 100).unwrap(), Some(d(-16)));
        assert_eq!(recognize_singular_modulus(&AlgebraicNumber::from_i64(7), 500).unwrap(), None);
    }
}
