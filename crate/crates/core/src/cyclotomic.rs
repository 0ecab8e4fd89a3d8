//! Cyclotomic polynomials and exact arithmetic in `Z[ζ_L]`.

use crate::nt::{divisors, euler_phi, mobius};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static C: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_m(x) = Π_{d | m} (x^d - 1)^{μ(m/d)}`.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = IntPoly::from_i64s(&[1]);
    let mut den = IntPoly::from_i64s(&[1]);
    for d in divisors(m) {
        match mobius(m / d) {
            1 => num = num.mul(&IntPoly::x_pow_minus_one(d as usize)),
            -1 => den = den.mul(&IntPoly::x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    let p = num.exact_div(&den).expect("cyclotomic quotient is exact");
    cache().lock().unwrap().insert(m, p.clone());
    p
}

/// Orders `m` with `φ(m) = d`. Uses `φ(m) >= sqrt(m/2)`, so `m <= 2d^2`.
pub fn orders_with_phi(d: u64) -> Vec<u64> {
    (1..=2 * d * d + 2).filter(|&m| euler_phi(m) == d).collect()
}

/// If `p` (up to sign and content) is a cyclotomic polynomial, its index.
pub fn cyclotomic_index(p: &IntPoly) -> Option<u64> {
    if p.degree() == 0 || p.is_zero() {
        return None;
    }
    let q = p.primitive();
    if !q.is_monic() || !q.coeff(0).magnitude().eq(&num_bigint::BigUint::from(1u32)) {
        return None;
    }
    orders_with_phi(q.degree() as u64).into_iter().find(|&m| cyclotomic_poly(m) == q)
}

/// A formal sum `Σ c_e ζ^e` with `ζ = e^{2πi/L}`; zero-testing reduces modulo `Φ_L`.
#[derive(Clone, Debug)]
pub struct CyclotomicSum {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CyclotomicSum {
    pub fn new(order: u64) -> CyclotomicSum {
        assert!(order >= 1);
        CyclotomicSum { order, coeffs: vec![BigInt::zero(); order as usize] }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Add `c · ζ^e` (any integer exponent).
    pub fn add_term(&mut self, c: &BigInt, e: i64) {
        let k = e.rem_euclid(self.order as i64) as usize;
        self.coeffs[k] += c;
    }

    /// The representative of degree `< φ(L)`.
    pub fn reduced(&self) -> IntPoly {
        let p = IntPoly::new(self.coeffs.clone());
        p.divrem_monic(&cyclotomic_poly(self.order)).1
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64s(&[1, 1]));
        assert_eq!(cyclotomic_poly(5), IntPoly::from_i64s(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient -2
        assert!(cyclotomic_poly(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
        for m in 1..60u64 {
            assert_eq!(cyclotomic_poly(m).degree() as u64, euler_phi(m));
        }
    }

    #[test]
    fn index_recognition() {
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[1, 1, 1, 1, 1])), Some(5));
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[-2, -2])), Some(2));
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[1, -1, 1])), Some(6));
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[-1, -1, 1])), None);
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[-1728, 1])), None);
        for m in 1..40 {
            assert_eq!(cyclotomic_index(&cyclotomic_poly(m)), Some(m));
        }
    }

    #[test]
    fn sums_vanish_exactly() {
        // 1 + ζ3 + ζ3^2 = 0
        let mut s = CyclotomicSum::new(3);
        for e in 0..3 {
            s.add_term(&BigInt::from(1), e);
        }
        assert!(s.is_zero());
        // ζ4^2 + 1 = 0, written with a negative exponent
        let mut t = CyclotomicSum::new(4);
        t.add_term(&BigInt::from(1), -2);
        t.add_term(&BigInt::from(1), 0);
        assert!(t.is_zero());
        t.add_term(&BigInt::from(1), 1);
        assert!(!t.is_zero());
    }
}
