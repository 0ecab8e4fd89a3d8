//! Exact integer q-expansion coefficients of `j`.
//!
//! `q·j(q) = E4(q)^3 · Π (1 − q^n)^(−24)`, with the product inverted through
//! the recurrence `b(n) = (24/n) Σ_{m=1..n} σ(m) b(n − m)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{OnceLock, RwLock};

fn sigma(n: u64, k: u32) -> BigInt {
    crate::nt::divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `q·j`: entry `k` is the coefficient of `q^(k−1)` in `j`.
fn compute(len: usize) -> Vec<BigInt> {
    let e4: Vec<BigInt> = (0..len)
        .map(|n| if n == 0 { BigInt::one() } else { BigInt::from(240) * sigma(n as u64, 3) })
        .collect();
    let sig: Vec<BigInt> = (0..len).map(|n| if n == 0 { BigInt::zero() } else { sigma(n as u64, 1) }).collect();
    let mut inv = vec![BigInt::zero(); len];
    inv[0] = BigInt::one();
    for n in 1..len {
        let s: BigInt = (1..=n).map(|m| &sig[m] * &inv[n - m]).sum();
        inv[n] = s * 24 / BigInt::from(n);
    }
    let e4sq = mul_trunc(&e4, &e4, len);
    let e4cu = mul_trunc(&e4sq, &e4, len);
    mul_trunc(&e4cu, &inv, len)
}

fn cache() -> &'static RwLock<Vec<BigInt>> {
    static C: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(Vec::new()))
}

/// Coefficients `c(-1), c(0), c(1), …, c(n_max)` of `j = Σ c(n) q^n`,
/// returned as a vector indexed by `n + 1`.
pub fn j_coefficients(n_max: usize) -> Vec<BigInt> {
    let len = n_max + 2;
    {
        let c = cache().read().unwrap();
        if c.len() >= len {
            return c[..len].to_vec();
        }
    }
    let target = len.max(64).next_power_of_two();
    let v = compute(target);
    let mut c = cache().write().unwrap();
    if c.len() < v.len() {
        *c = v;
    }
    c[..len].to_vec()
}

/// `c(n)` for `n >= -1`.
pub fn j_coefficient(n: i64) -> BigInt {
    assert!(n >= -1, "j has no q^n term below n = -1");
    j_coefficients(n.max(0) as usize)[(n + 1) as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_coefficients() {
        let c = j_coefficients(4);
        let expect = ["1", "744", "196884", "21493760", "864299970", "20245856256"];
        for (x, e) in c.iter().zip(expect) {
            assert_eq!(x.to_string(), e);
        }
        assert_eq!(j_coefficient(10).to_string(), "22567393309593600");
    }

    #[test]
    fn coefficient_growth_bound() {
        // c(n) <= exp(4π√n), used for series tail bounds
        let c = j_coefficients(300);
        for n in 1..=300usize {
            let l = crate::roots::log2_abs(&c[n + 1]);
            let bound = 4.0 * std::f64::consts::PI * (n as f64).sqrt() / std::f64::consts::LN_2;
            assert!(l < bound, "n = {n}");
        }
    }
}
