//! Absolute logarithmic Weil height and the root-of-unity test.

use crate::arith::elementary::log;
use crate::arith::{Mag, RealBall};
use crate::cyclotomic::cyclotomic_index;
use crate::error::{Error, Result};
use crate::modfun::{AlgebraicNumber, Source};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

/// Working precision for height evaluation.
const HEIGHT_PREC: u32 = 96;

/// A height with an error bound; `value` is within `error_bound` of the truth.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightValue {
    pub value: f64,
    pub error_bound: f64,
}

impl HeightValue {
    pub const ZERO: HeightValue = HeightValue { value: 0.0, error_bound: 0.0 };

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.error_bound).max(0.0)
    }

    /// Certified positive.
    pub fn is_positive(&self) -> bool {
        self.value > self.error_bound
    }

    fn from_ball(b: &RealBall) -> HeightValue {
        let v = b.to_f64().max(0.0);
        // f64 rounding of the midpoint plus the ball radius
        let err = b.rad().to_f64() * (1.0 + 1e-12) + v.abs() * 4.0 * f64::EPSILON + f64::MIN_POSITIVE;
        HeightValue { value: v, error_bound: err }
    }
}

/// True iff `α^m = 1` for some `m >= 1`, decided by matching the minimal
/// polynomial against cyclotomic polynomials of the right degree.
pub fn is_root_of_unity(a: &AlgebraicNumber) -> bool {
    match a.source() {
        Source::RootOfUnity { .. } => true,
        Source::Rational(q) => q.abs() == num_rational::BigRational::from_integer(BigInt::from(1)),
        _ => cyclotomic_index(a.min_poly()).is_some(),
    }
}

/// `log max(1, |x|)` for a nonnegative ball `x`.
fn log_plus(x: &RealBall, prec: u32) -> Result<RealBall> {
    let one = RealBall::one(prec);
    let lower = (x - &one).is_positive();
    if lower {
        return log(x, prec);
    }
    let d = x - &one;
    if d.is_negative() {
        return Ok(RealBall::zero(prec));
    }
    // straddles 1: the value lies in [0, |x − 1|]
    Ok(RealBall::zero(prec).add_error(d.abs_upper()))
}

/// `h(α) = (log|lead| + Σ log max(1, |α_i|)) / deg`, as a ball.
pub fn weil_height_ball(a: &AlgebraicNumber, prec: u32) -> Result<RealBall> {
    if a.is_zero() {
        return Err(Error::Domain("the height of zero is not defined here".into()));
    }
    if is_root_of_unity(a) {
        return Ok(RealBall::zero(prec));
    }
    if let Some(q) = a.as_rational() {
        let m = q.numer().abs().max(q.denom().abs());
        return log(&RealBall::from_int(&m, prec), prec);
    }
    let mut wp = prec + 16;
    let goal = Mag::pow2(-(prec as i64));
    for _ in 0..5 {
        let conj = a.conjugates(wp)?;
        let mut sum = log(&RealBall::from_int(&a.min_poly().lead().abs(), wp), wp)?;
        for z in &conj {
            sum = &sum + &log_plus(&z.abs(), wp)?;
        }
        let h = sum.div_u64(a.degree() as u64);
        if h.rad() <= goal {
            return Ok(h);
        }
        wp *= 2;
    }
    Err(Error::Precision("height did not reach the requested accuracy".into()))
}

pub fn weil_height(a: &AlgebraicNumber) -> Result<HeightValue> {
    if is_root_of_unity(a) {
        return Ok(HeightValue::ZERO);
    }
    Ok(HeightValue::from_ball(&weil_height_ball(a, HEIGHT_PREC)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::BigComplex;
    use crate::poly::IntPoly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn basic_heights() {
        assert_eq!(weil_height(&AlgebraicNumber::from_i64(1)).unwrap(), HeightValue::ZERO);
        let h2 = weil_height(&AlgebraicNumber::from_i64(2)).unwrap();
        assert!((h2.value - std::f64::consts::LN_2).abs() <= h2.error_bound + 1e-15);
        let q = AlgebraicNumber::from_rational(&BigRational::new(BigInt::from(-7), BigInt::from(30)));
        assert!((weil_height(&q).unwrap().value - 30f64.ln()).abs() < 1e-14);
        let phi = AlgebraicNumber::from_parts(
            &IntPoly::from_i64s(&[-1, -1, 1]),
            &BigComplex::from_f64(1.6, 0.0, 64).add_error(Mag::pow2(-3)),
        )
        .unwrap();
        let h = weil_height(&phi).unwrap();
        assert!((h.value - 0.5 * ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-14);
        assert!(weil_height(&AlgebraicNumber::from_i64(0)).is_err());
    }

    #[test]
    fn roots_of_unity() {
        assert!(is_root_of_unity(&AlgebraicNumber::from_i64(-1)));
        assert!(!is_root_of_unity(&AlgebraicNumber::from_i64(1728)));
        let z = AlgebraicNumber::from_parts(
            &IntPoly::from_i64s(&[1, 1, 1, 1, 1]),
            &BigComplex::from_f64(0.309, 0.951, 64).add_error(Mag::pow2(-6)),
        )
        .unwrap();
        assert!(is_root_of_unity(&z));
        assert_eq!(weil_height(&z).unwrap(), HeightValue::ZERO);
        // on the unit circle but not a root of unity: (x^2 - 6/5 x + 1) -> 5x^2 - 6x + 5
        let w = AlgebraicNumber::from_parts(
            &IntPoly::from_i64s(&[5, -6, 5]),
            &BigComplex::from_f64(0.6, 0.8, 64).add_error(Mag::pow2(-6)),
        )
        .unwrap();
        assert!(!is_root_of_unity(&w));
        let h = weil_height(&w).unwrap();
        assert!((h.value - 0.5 * 5f64.ln()).abs() <= h.error_bound + 1e-12);
    }
}
