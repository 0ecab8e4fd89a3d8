//! Height comparisons and isogeny-degree bounds used to size searches.

use crate::arith::elementary::log;
use crate::arith::RealBall;
use crate::error::{Error, Result};
use crate::relations::HeightValue;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

/// Interval for the semistable Faltings height of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaltingsWindow {
    pub lower: f64,
    pub upper: f64,
}

impl FaltingsWindow {
    pub fn center(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Window for `h_F(E)` from `|h(j_E) − h_F(E)/12| <= c log max(2, h(j_E))`,
/// i.e. `h_F ∈ 12 (h ± c log max(2, h))`, widened by the error of `h_j`.
/// `c` is a surrogate constant and the window only guides searches.
pub fn faltings_window(h_j: HeightValue, c: f64) -> FaltingsWindow {
    let slack = |h: f64| c * h.max(2.0).ln();
    let lo = h_j.value - h_j.error_bound;
    let hi = h_j.upper();
    FaltingsWindow { lower: 12.0 * (lo - slack(hi)), upper: 12.0 * (hi + slack(hi)) }
}

/// Bound `(1/2) log N` on how far a cyclic `N`-isogeny moves the Faltings height.
pub fn isogeny_height_drift(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("isogeny degree must be positive".into()));
    }
    Ok(0.5 * (n as f64).ln())
}

const BOUND_PREC: u32 = 256;

/// `⌈10^78 d^4 max(1, log d)^2 max(1, h)^2⌉` (rounded up from a ball
/// enclosure, so possibly one too large), bounding the least degree of an
/// isogeny between isogenous curves over a field of degree `d` with Faltings
/// height at most `h_f_upper`.
pub fn pellarin_degree_bound(d: u64, h_f_upper: f64) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::Domain(format!("degree {d} is below 2")));
    }
    if !h_f_upper.is_finite() {
        return Err(Error::Domain("height bound must be finite".into()));
    }
    let p = BOUND_PREC;
    let ld = log(&RealBall::from_int(&BigInt::from(d), p), p)?;
    let ld = if ld.is_positive() && (&ld - &RealBall::one(p)).is_positive() { ld } else { RealBall::one(p) };
    let h = RealBall::from_f64(h_f_upper.max(1.0), p);
    let d4 = BigInt::from(d).pow(4u32) * BigInt::from(10u32).pow(78u32);
    let v = (&ld.sqr() * &h.sqr()).mul_int(&d4);
    // ceiling of the upper end of the ball
    let top = v.mid() + v.rad().to_ulps_ceil(v.prec());
    let (q, r) = top.div_rem(&(BigInt::one() << v.prec() as usize));
    Ok(if r > BigInt::from(0) { q + 1 } else { q })
}

/// Desk-scale stand-in `c · d^4 max(1, log d)^2 max(1, h)^2` for sizing level
/// searches; the true constant is far too large to enumerate.
pub fn practical_degree_bound(d: u64, h_f_upper: f64, c: f64) -> u64 {
    let d = d.max(2) as f64;
    let v = c * d.powi(4) * d.ln().max(1.0).powi(2) * h_f_upper.max(1.0).powi(2);
    if !v.is_finite() || v >= u64::MAX as f64 {
        u64::MAX
    } else {
        v.ceil().max(1.0) as u64
    }
}

/// `c · max(M1, M2)^5`, the level bound for modular pairs of roots of unity
/// of orders `M1`, `M2`; `c` is unknown and supplied by the caller.
pub fn modular_pair_level_bound(m1: u64, m2: u64, c: f64) -> f64 {
    c * (m1.max(m2) as f64).powi(5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn hv(x: f64) -> HeightValue {
        HeightValue { value: x, error_bound: 0.0 }
    }

    #[test]
    fn windows() {
        let w = faltings_window(hv(0.0), 1.0);
        assert!(w.center().abs() < 1e-12);
        assert!((w.upper - 12.0 * LN_2).abs() < 1e-12);
        let w = faltings_window(hv(12.0), 1.0);
        assert!((w.center() - 144.0).abs() < 1e-9);
        let widths: Vec<f64> = (2..40).map(|h| faltings_window(hv(h as f64), 0.7).width()).collect();
        assert!(widths.windows(2).all(|p| p[1] >= p[0]));
        assert!(faltings_window(hv(5.0), 1.0).contains(60.0));
    }

    #[test]
    fn drift() {
        assert_eq!(isogeny_height_drift(1).unwrap(), 0.0);
        assert!((isogeny_height_drift(4).unwrap() - LN_2).abs() < 1e-15);
        assert!((isogeny_height_drift(9).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(isogeny_height_drift(0).is_err());
    }

    #[test]
    fn pellarin() {
        // d = 2: max(1, log 2) = 1, so the bound is exactly 16 · 10^78
        let b = pellarin_degree_bound(2, 0.5).unwrap();
        let exact = BigInt::from(16) * BigInt::from(10).pow(78u32);
        assert!(b >= exact && b <= &exact + 1);
        // d = 3: 81 · log(3)^2 · 10^78
        let b3 = pellarin_degree_bound(3, 1.0).unwrap();
        let approx = 81.0 * 3f64.ln().powi(2);
        let lead: f64 = (&b3 / BigInt::from(10).pow(70u32)).to_string().parse::<f64>().unwrap() / 1e8;
        assert!((lead - approx).abs() < 1e-6);
        let ds: Vec<BigInt> = (2..20).map(|d| pellarin_degree_bound(d, 3.0).unwrap()).collect();
        assert!(ds.windows(2).all(|w| w[1] > w[0]));
        let hs: Vec<BigInt> = (1..20).map(|h| pellarin_degree_bound(5, h as f64).unwrap()).collect();
        assert!(hs.windows(2).all(|w| w[1] >= w[0]));
        assert!(pellarin_degree_bound(1, 1.0).is_err());
        assert_eq!(practical_degree_bound(2, 1.0, 1.0), 16);
    }
}
