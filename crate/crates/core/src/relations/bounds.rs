//! Explicit lower bounds and search-sizing formulas.

use crate::error::{Error, Result};

/// Lower bound `1 / (37 d^2 log d)` for the height of a non-root-of-unity of degree `d`.
pub fn bound_lehmer(d: u64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain(format!("degree {d} is below 2")));
    }
    let df = d as f64;
    Ok(1.0 / (37.0 * df * df * df.ln()))
}

/// Search radius `c7 · d^n · log d · Π h_j / min_j h_j` for exponent vectors
/// of `n` numbers of degree at most `d` with the given heights. `c7` stands
/// in for an unspecified constant and only sizes searches.
pub fn exponent_search_radius(n: usize, d: u64, heights: &[f64], c7: f64) -> Result<u64> {
    if n < 2 || d < 2 {
        return Err(Error::Domain(format!("need n >= 2 and d >= 2, got n = {n}, d = {d}")));
    }
    if heights.len() != n {
        return Err(Error::Domain(format!("expected {n} heights, got {}", heights.len())));
    }
    if heights.iter().any(|&h| !(h > 0.0) || !h.is_finite()) {
        return Err(Error::Domain("heights must be positive and finite".into()));
    }
    if !(c7 > 0.0) || !c7.is_finite() {
        return Err(Error::Domain("surrogate constant must be positive".into()));
    }
    let min = heights.iter().cloned().fold(f64::INFINITY, f64::min);
    let prod: f64 = heights.iter().product();
    let r = c7 * (d as f64).powi(n as i32) * (d as f64).ln() * prod / min;
    if !r.is_finite() || r >= u64::MAX as f64 {
        return Ok(u64::MAX);
    }
    Ok((r.ceil() as u64).max(1))
}

/// Real-valued version of the search radius, before rounding up.
pub fn exponent_search_radius_raw(n: usize, d: u64, heights: &[f64], c7: f64) -> f64 {
    let min = heights.iter().cloned().fold(f64::INFINITY, f64::min);
    c7 * (d as f64).powi(n as i32) * (d as f64).ln() * heights.iter().product::<f64>() / min
}

/// `log2` of a lower bound for `|β − 1|` when `β ≠ 1` is algebraic of degree
/// at most `degree` and height at most `height`: every nonzero algebraic `γ`
/// of degree `D` has `|γ| >= exp(−D h(γ))`, and `h(β − 1) <= h(β) + log 2`.
pub fn liouville_separation_log2(degree: u64, height: f64) -> f64 {
    -(degree as f64) * (height + std::f64::consts::LN_2) / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn lehmer_values() {
        assert_eq!(bound_lehmer(2).unwrap(), 1.0 / (37.0 * 4.0 * LN_2));
        assert_eq!(bound_lehmer(3).unwrap(), 1.0 / (37.0 * 9.0 * 3f64.ln()));
        let v: Vec<f64> = (2..50).map(|d| bound_lehmer(d).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]));
        assert!(bound_lehmer(1).is_err());
    }

    #[test]
    fn radius_formula_and_scaling() {
        let l3 = 3f64.ln();
        let r = exponent_search_radius_raw(2, 2, &[LN_2, l3], 1.0);
        assert!((r - 4.0 * LN_2 * l3).abs() < 1e-12);
        assert_eq!(exponent_search_radius(2, 2, &[LN_2, l3], 1.0).unwrap(), 4);
        // homogeneous of degree n − 1 in the heights
        for n in 2..6usize {
            let h: Vec<f64> = (0..n).map(|i| 0.3 + i as f64).collect();
            let h2: Vec<f64> = h.iter().map(|x| 2.0 * x).collect();
            let ratio = exponent_search_radius_raw(n, 3, &h2, 1.0) / exponent_search_radius_raw(n, 3, &h, 1.0);
            assert!((ratio - 2f64.powi(n as i32 - 1)).abs() < 1e-9);
        }
        assert!(exponent_search_radius(2, 2, &[0.0, 1.0], 1.0).is_err());
    }
}
