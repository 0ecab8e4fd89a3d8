//! Nonzero rationals stored as a sign and a prime-exponent map.

use crate::error::{Error, Result};
use crate::nt::factor_bigint;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Trial-division limit used when factoring inputs.
pub const TRIAL_LIMIT: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredRational {
    /// `1` or `-1`.
    sign: i8,
    /// Prime to nonzero exponent; primes are kept as decimal-ordered big integers.
    #[serde(with = "exp_map")]
    exponents: BTreeMap<BigInt, i64>,
}

mod exp_map {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<BigInt, i64>, s: S) -> Result<S::Ok, S::Error> {
        // pairs in numeric order; a string-keyed map would sort "13" before "2"
        let ordered: Vec<(String, i64)> = m.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        ordered.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<BigInt, i64>, D::Error> {
        let v: Vec<(String, i64)> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|(p, e)| p.parse::<BigInt>().map(|p| (p, e)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl FactoredRational {
    pub fn one() -> FactoredRational {
        FactoredRational { sign: 1, exponents: BTreeMap::new() }
    }

    pub fn from_parts(sign: i8, exponents: BTreeMap<BigInt, i64>) -> Result<FactoredRational> {
        if sign != 1 && sign != -1 {
            return Err(Error::Domain("sign must be 1 or -1".into()));
        }
        for (p, e) in &exponents {
            if *e == 0 || !crate::nt::is_probable_prime(p) {
                return Err(Error::Domain(format!("bad prime power {p}^{e}")));
            }
        }
        Ok(FactoredRational { sign, exponents })
    }

    pub fn from_integer(n: &BigInt) -> Result<FactoredRational> {
        FactoredRational::from_rational(&BigRational::from_integer(n.clone()))
    }

    pub fn from_i64(n: i64) -> Result<FactoredRational> {
        FactoredRational::from_integer(&BigInt::from(n))
    }

    pub fn from_rational(q: &BigRational) -> Result<FactoredRational> {
        if q.is_zero() {
            return Err(Error::Domain("zero has no prime factorization".into()));
        }
        let mut exponents = BTreeMap::new();
        for (part, sgn) in [(q.numer(), 1i64), (q.denom(), -1i64)] {
            if part.abs().is_one() {
                continue;
            }
            let f = factor_bigint(part, TRIAL_LIMIT)
                .ok_or_else(|| Error::Domain(format!("could not factor {part}")))?;
            for (p, e) in f {
                *exponents.entry(p).or_insert(0) += sgn * e as i64;
            }
        }
        exponents.retain(|_, e| *e != 0);
        Ok(FactoredRational { sign: if q.is_negative() { -1 } else { 1 }, exponents })
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn exponents(&self) -> &BTreeMap<BigInt, i64> {
        &self.exponents
    }

    pub fn exponent(&self, p: &BigInt) -> i64 {
        self.exponents.get(p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.exponents.is_empty()
    }

    pub fn mul(&self, o: &FactoredRational) -> FactoredRational {
        let mut exponents = self.exponents.clone();
        for (p, e) in &o.exponents {
            *exponents.entry(p.clone()).or_insert(0) += e;
        }
        exponents.retain(|_, e| *e != 0);
        FactoredRational { sign: self.sign * o.sign, exponents }
    }

    pub fn pow(&self, k: i64) -> FactoredRational {
        let mut exponents: BTreeMap<BigInt, i64> =
            self.exponents.iter().map(|(p, e)| (p.clone(), e * k)).collect();
        exponents.retain(|_, e| *e != 0);
        let sign = if self.sign < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
        FactoredRational { sign, exponents }
    }

    pub fn to_rational(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, &e) in &self.exponents {
            if e > 0 {
                num *= p.pow(e as u32);
            } else {
                den *= p.pow((-e) as u32);
            }
        }
        if self.sign < 0 {
            num = -num;
        }
        BigRational::new(num, den)
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.exponents.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredRational({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_rebuild() {
        let x = FactoredRational::from_i64(-12288000).unwrap();
        assert_eq!(x.to_string(), "-2^15*3*5^3");
        assert_eq!(x.to_rational(), BigRational::from_integer(BigInt::from(-12288000)));
        let q = BigRational::new(BigInt::from(-9), BigInt::from(20));
        let f = FactoredRational::from_rational(&q).unwrap();
        assert_eq!(f.to_string(), "-2^-2*3^2*5^-1");
        assert!(f.mul(&f.pow(-1)).is_one());
        assert_eq!(f.pow(2).sign(), 1);
        assert!(FactoredRational::from_i64(0).is_err());
        let s = serde_json::to_string(&x).unwrap();
        let back: FactoredRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
