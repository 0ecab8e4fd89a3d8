//! Pairs of distinct roots of unity related by a modular polynomial.

use super::construct::{modular_polynomial_bounded, ModularPolynomial};
use crate::error::{Error, Result};
use crate::modfun::algebraic::root_of_unity_ball;
use crate::nt::lcm_u64;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// `Φ_level(ζ1, ζ2) = 0` for `ζ1 = e^{2πi k1/order1}` and
/// `ζ2 = e^{2πi k2/order2}`, checked modulo the cyclotomic polynomial of
/// `common_order`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModularPairCertificate {
    pub order1: u64,
    pub k1: u64,
    pub order2: u64,
    pub k2: u64,
    pub level: u64,
    pub common_order: u64,
}

impl ModularPairCertificate {
    /// Recompute the cyclotomic evaluation from scratch.
    pub fn verify(&self) -> Result<bool> {
        if (self.order1, self.k1) == (self.order2, self.k2) {
            return Ok(false);
        }
        let phi = modular_polynomial_bounded(self.level, self.level)?;
        Ok(cyclotomic_zero(&phi, (self.order1, self.k1), (self.order2, self.k2)).1)
    }
}

/// Exact test of `Φ(ζ1, ζ2) = 0`; returns the common order used.
fn cyclotomic_zero(phi: &ModularPolynomial, z1: (u64, u64), z2: (u64, u64)) -> (u64, bool) {
    let l = lcm_u64(z1.0, z2.0);
    let e1 = (z1.1 * (l / z1.0)) as i64;
    let e2 = (z2.1 * (l / z2.0)) as i64;
    (l, phi.eval_cyclotomic(l, e1, e2).is_zero())
}

/// Outcome of a search, possibly cut short by the evaluation budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularPairSearch {
    pub m_max: u64,
    pub n_max: u64,
    /// every pair with both orders at most this was examined
    pub completed_m_max: u64,
    pub complete: bool,
    pub evaluations: u64,
    pub certificates: Vec<ModularPairCertificate>,
    pub caveats: Vec<String>,
}

/// Roots of unity of exact order `m`, as `(m, k)` with `gcd(k, m) = 1`.
fn primitive_roots(m: u64) -> impl Iterator<Item = (u64, u64)> {
    (0..m).filter(move |k| k.gcd(&m) == 1).map(move |k| (m, k))
}

/// Ball pre-screen: `false` only when `Φ(ζ1, ζ2)` is certainly nonzero.
fn may_vanish(phi: &ModularPolynomial, z1: (u64, u64), z2: (u64, u64), wp: u32) -> Result<bool> {
    let a = root_of_unity_ball(z1.0, z1.1, wp)?;
    let b = root_of_unity_ball(z2.0, z2.1, wp)?;
    Ok(phi.eval_complex(&a, &b).contains_zero())
}

/// Search all unordered pairs of distinct roots of unity with orders at most
/// `m_max` and levels `2..=n_max` (`Φ_1` only vanishes on the diagonal, and
/// `Φ_N` is symmetric for `N >= 2`). Pairs are processed in blocks of equal
/// larger order; the search stops before a block that would exceed
/// `max_evaluations`.
pub fn modular_pair_search_with(m_max: u64, n_max: u64, max_evaluations: u64) -> Result<ModularPairSearch> {
    if m_max == 0 || n_max == 0 {
        return Err(Error::Domain("orders and levels start at 1".into()));
    }
    let phis: Vec<Arc<ModularPolynomial>> =
        (2..=n_max).map(|n| modular_polynomial_bounded(n, n_max)).collect::<Result<_>>()?;
    let precs: Vec<u32> = phis
        .iter()
        .map(|p| p.terms().map(|(_, _, c)| c.abs()).sum::<BigInt>().bits() as u32 + 64)
        .collect();
    let mut out = ModularPairSearch {
        m_max,
        n_max,
        completed_m_max: 0,
        complete: true,
        evaluations: 0,
        certificates: Vec::new(),
        caveats: vec![format!(
            "levels are searched only up to {n_max}; a level bound of the form c·max(M1, M2)^5 has no known constant, so the result is not exhaustive in N"
        )],
    };
    let mut earlier: Vec<(u64, u64)> = Vec::new();
    for m in 1..=m_max {
        let current: Vec<(u64, u64)> = primitive_roots(m).collect();
        let mut tasks = Vec::new();
        for (idx, &z2) in current.iter().enumerate() {
            for &z1 in earlier.iter().chain(&current[..idx]) {
                for li in 0..phis.len() {
                    tasks.push((z1, z2, li));
                }
            }
        }
        if out.evaluations + tasks.len() as u64 > max_evaluations {
            out.complete = false;
            out.caveats.push(format!(
                "evaluation budget {max_evaluations} reached; orders up to {} were searched completely",
                out.completed_m_max
            ));
            break;
        }
        let found: Vec<Option<ModularPairCertificate>> = tasks
            .par_iter()
            .map(|&(z1, z2, li)| -> Result<Option<ModularPairCertificate>> {
                let phi = &phis[li];
                if !may_vanish(phi, z1, z2, precs[li])? {
                    return Ok(None);
                }
                let (l, zero) = cyclotomic_zero(phi, z1, z2);
                Ok(zero.then_some(ModularPairCertificate {
                    order1: z1.0,
                    k1: z1.1,
                    order2: z2.0,
                    k2: z2.1,
                    level: phi.level(),
                    common_order: l,
                }))
            })
            .collect::<Result<_>>()?;
        out.evaluations += tasks.len() as u64;
        out.certificates.extend(found.into_iter().flatten());
        out.completed_m_max = m;
        earlier.extend(current);
    }
    out.certificates.sort();
    Ok(out)
}

pub fn modular_pair_search(m_max: u64, n_max: u64) -> Result<ModularPairSearch> {
    modular_pair_search_with(m_max, n_max, u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_search_is_consistent() {
        let s = modular_pair_search(6, 3).unwrap();
        assert!(s.complete);
        assert_eq!(s.completed_m_max, 6);
        // 12 roots of order <= 6: 66 unordered pairs, two levels
        assert_eq!(s.evaluations, 66 * 2);
        for c in &s.certificates {
            assert!((c.order1, c.k1) != (c.order2, c.k2));
            assert!(c.verify().unwrap());
        }
        assert_eq!(modular_pair_search(6, 3).unwrap(), s);
    }

    #[test]
    fn budget_stops_between_blocks() {
        let s = modular_pair_search_with(12, 3, 100).unwrap();
        assert!(!s.complete);
        assert!(s.completed_m_max < 12);
        assert!(s.evaluations <= 100);
        assert_eq!(s.caveats.len(), 2);
    }

    #[test]
    fn forged_certificate_fails() {
        let c = ModularPairCertificate { order1: 3, k1: 1, order2: 4, k2: 1, level: 2, common_order: 12 };
        assert!(!c.verify().unwrap());
    }
}
