//! Real balls: a fixed-point midpoint with an upper-bounded radius.

use super::mag::{is_negative, Mag};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The interval `[mid·2^-prec − rad, mid·2^-prec + rad]`.
///
/// `prec` is an absolute precision: the midpoint is a multiple of `2^-prec`.
/// Binary operations work at the larger of the two precisions.
#[derive(Clone, PartialEq, Eq)]
pub struct RealBall {
    mid: BigInt,
    rad: Mag,
    prec: u32,
}

fn align(x: &BigInt, from: u32, to: u32) -> BigInt {
    debug_assert!(to >= from);
    if to == from {
        x.clone()
    } else {
        x << (to - from) as usize
    }
}

impl RealBall {
    pub fn new(mid: BigInt, rad: Mag, prec: u32) -> RealBall {
        RealBall { mid, rad, prec }
    }

    pub fn zero(prec: u32) -> RealBall {
        RealBall { mid: BigInt::zero(), rad: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> RealBall {
        RealBall::from_int(&BigInt::one(), prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> RealBall {
        RealBall { mid: n << prec as usize, rad: Mag::ZERO, prec }
    }

    pub fn from_i64(n: i64, prec: u32) -> RealBall {
        RealBall::from_int(&BigInt::from(n), prec)
    }

    /// `n/d` rounded to `prec` bits, with the rounding error in the radius.
    pub fn from_ratio(n: &BigInt, d: &BigInt, prec: u32) -> RealBall {
        assert!(!d.is_zero(), "zero denominator");
        let num: BigInt = n << prec as usize;
        let (q, r) = num.div_mod_floor(d);
        let rad = if r.is_zero() { Mag::ZERO } else { Mag::pow2(-(prec as i64)) };
        RealBall { mid: q, rad, prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> RealBall {
        RealBall::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Exact conversion of a finite `f64`, rounded to `prec` bits.
    pub fn from_f64(x: f64, prec: u32) -> RealBall {
        let q = BigRational::from_float(x).expect("finite f64");
        RealBall::from_rational(&q, prec)
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same ball with the radius replaced by zero.
    pub fn midpoint(&self) -> RealBall {
        RealBall { mid: self.mid.clone(), rad: Mag::ZERO, prec: self.prec }
    }

    pub fn add_error(&self, e: Mag) -> RealBall {
        RealBall { mid: self.mid.clone(), rad: self.rad.add(e), prec: self.prec }
    }

    fn ulp(&self) -> Mag {
        Mag::pow2(-(self.prec as i64))
    }

    /// Re-express at precision `prec`, rounding if precision is lost.
    pub fn with_prec(&self, prec: u32) -> RealBall {
        if prec >= self.prec {
            RealBall { mid: align(&self.mid, self.prec, prec), rad: self.rad, prec }
        } else {
            let sh = (self.prec - prec) as usize;
            let mid: BigInt = &self.mid >> sh;
            let exact = (&mid << sh) == self.mid;
            let rad = if exact { self.rad } else { self.rad.add(Mag::pow2(-(prec as i64))) };
            RealBall { mid, rad, prec }
        }
    }

    /// Exact division by `2^k` for `k >= 0`, done by raising the precision.
    pub fn shr(&self, k: u32) -> RealBall {
        RealBall { mid: self.mid.clone(), rad: self.rad.mul_2exp(-(k as i64)), prec: self.prec + k }
    }

    /// Exact multiplication by `2^k`.
    pub fn shl(&self, k: u32) -> RealBall {
        RealBall { mid: &self.mid << k as usize, rad: self.rad.mul_2exp(k as i64), prec: self.prec }
    }

    /// Upper bound for `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_bigint(&self.mid, -(self.prec as i64)).add(self.rad)
    }

    /// Lower bound for `|x|` over the ball (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Mag {
        let lo = Mag::from_bigint_lower(&self.mid, -(self.prec as i64));
        if lo <= self.rad {
            return Mag::ZERO;
        }
        // lo - rad, rounded down: compute through ulps at a working precision.
        let p = self.prec.max(64) + 64;
        let m = self.mid.abs() << (p - self.prec) as usize;
        let r = self.rad.to_ulps_ceil(p);
        let diff = m - r;
        if diff.is_positive() {
            Mag::from_bigint_lower(&diff, -(p as i64))
        } else {
            Mag::ZERO
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !is_negative(&self.mid) && !self.mid.is_zero() && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        is_negative(&self.mid) && !self.contains_zero()
    }

    /// True if `x` certainly lies in the ball.
    pub fn contains_rational(&self, x: &BigRational) -> bool {
        let p = self.prec + 64;
        let scaled = x * BigRational::from_integer(BigInt::one() << p as usize);
        let mid = BigRational::from_integer(align(&self.mid, self.prec, p));
        let diff = (scaled - mid).abs();
        // compare against rad rounded down to p bits
        let r = self.rad.to_ulps_ceil(p) - BigInt::one();
        diff <= BigRational::from_integer(r.max(BigInt::zero()))
    }

    /// True if the two balls share a point (conservatively: may report overlap
    /// for disjoint balls closer than one ulp).
    pub fn overlaps(&self, o: &RealBall) -> bool {
        (self - o).contains_zero()
    }

    pub fn mul_int(&self, k: &BigInt) -> RealBall {
        RealBall {
            mid: &self.mid * k,
            rad: self.rad.mul(Mag::from_bigint(k, 0)),
            prec: self.prec,
        }
    }

    pub fn div_u64(&self, k: u64) -> RealBall {
        assert!(k != 0, "division by zero");
        let (q, r) = self.mid.div_mod_floor(&BigInt::from(k));
        let mut rad = self.rad.div_lower(Mag::from_u64(k));
        if !r.is_zero() {
            rad = rad.add(self.ulp());
        }
        RealBall { mid: q, rad, prec: self.prec }
    }

    pub fn sqr(&self) -> RealBall {
        self * self
    }

    /// Quotient; fails if the divisor ball contains zero.
    pub fn div(&self, o: &RealBall) -> Result<RealBall> {
        let p = self.prec.max(o.prec);
        let lower = o.abs_lower();
        if lower.is_zero() {
            return Err(Error::Precision("division by a ball containing zero".into()));
        }
        let a = align(&self.mid, self.prec, p);
        let b = align(&o.mid, o.prec, p);
        let num: BigInt = &a << p as usize;
        let (q, r) = num.div_mod_floor(&b);
        let res_mid = RealBall { mid: q, rad: Mag::ZERO, prec: p };
        let mut rad = if r.is_zero() { Mag::ZERO } else { Mag::pow2(-(p as i64)) };
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let qa = res_mid.abs_upper().add(Mag::pow2(-(p as i64)));
            rad = rad.add(self.rad.add(qa.mul(o.rad)).div_lower(lower));
        }
        Ok(RealBall { rad, ..res_mid })
    }

    pub fn inv(&self) -> Result<RealBall> {
        RealBall::one(self.prec).div(self)
    }

    /// Square root of a ball whose points are nonnegative (negative parts are
    /// clipped at zero, which is only meaningful when the caller knows `x >= 0`).
    pub fn sqrt(&self) -> Result<RealBall> {
        if self.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        let p = self.prec;
        let m = if is_negative(&self.mid) { BigInt::zero() } else { self.mid.clone() };
        let s = (m << p as usize).sqrt();
        let mut rad = Mag::pow2(-(p as i64));
        if !self.rad.is_zero() {
            let root_lower = Mag::from_bigint_lower(&s, -(p as i64));
            if root_lower.is_zero() || root_lower.mul(root_lower) <= self.rad {
                rad = rad.add(mag_sqrt(self.rad).mul_u64(2));
            } else {
                rad = rad.add(self.rad.div_lower(root_lower));
            }
        }
        Ok(RealBall { mid: s, rad, prec: p })
    }

    /// Midpoint as an `f64` (ignoring the radius).
    pub fn to_f64(&self) -> f64 {
        let sh = self.mid.bits().saturating_sub(64);
        let top = (&self.mid >> sh as usize).to_f64().unwrap_or(f64::NAN);
        ldexp(top, sh as i64 - self.prec as i64)
    }

    /// Nearest integer to the midpoint together with an upper bound for the
    /// distance from any point of the ball to that integer.
    pub fn nearest_integer(&self) -> (BigInt, Mag) {
        let half = if self.prec == 0 { BigInt::zero() } else { BigInt::one() << (self.prec - 1) as usize };
        let n: BigInt = (&self.mid + half) >> self.prec as usize;
        let diff = &self.mid - (&n << self.prec as usize);
        (n, Mag::from_bigint(&diff, -(self.prec as i64)).add(self.rad))
    }

    /// Midpoint as an exact rational.
    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(self.mid.clone(), BigInt::one() << self.prec as usize)
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let v = self.mid_rational() * BigRational::from_integer(scale);
        let r = v.round().to_integer();
        let neg = r.is_negative();
        let s = r.abs().to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

/// `x * 2^e` without intermediate overflow.
pub fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Upper bound for `sqrt(m)`.
pub fn mag_sqrt(m: Mag) -> Mag {
    if m.is_zero() {
        return m;
    }
    let e = m.log2_ceil();
    let e2 = if e % 2 == 0 { e } else { e + 1 };
    // m <= 2^e2, so sqrt(m) <= 2^(e2/2); refine through f64 on the scaled value.
    let scaled = m.mul_2exp(-e2).to_f64();
    Mag::from_f64(scaled.sqrt() * (1.0 + 1e-12)).mul_2exp(e2 / 2)
}

fn binop_add(a: &RealBall, b: &RealBall, negate_b: bool) -> RealBall {
    let p = a.prec.max(b.prec);
    let x = align(&a.mid, a.prec, p);
    let y = align(&b.mid, b.prec, p);
    let mid = if negate_b { x - y } else { x + y };
    RealBall { mid, rad: a.rad.add(b.rad), prec: p }
}

impl Add for &RealBall {
    type Output = RealBall;
    fn add(self, o: &RealBall) -> RealBall {
        binop_add(self, o, false)
    }
}

impl Sub for &RealBall {
    type Output = RealBall;
    fn sub(self, o: &RealBall) -> RealBall {
        binop_add(self, o, true)
    }
}

impl Mul for &RealBall {
    type Output = RealBall;
    fn mul(self, o: &RealBall) -> RealBall {
        let p = self.prec.max(o.prec);
        let prod = &self.mid * &o.mid;
        let total = (self.prec + o.prec) as usize;
        let drop = total - p as usize;
        let mid = &prod >> drop;
        let mut rad = if drop > 0 && (&mid << drop) != prod { Mag::pow2(-(p as i64)) } else { Mag::ZERO };
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let am = Mag::from_bigint(&self.mid, -(self.prec as i64));
            let bm = Mag::from_bigint(&o.mid, -(o.prec as i64));
            rad = rad.add(am.mul(o.rad)).add(bm.mul(self.rad)).add(self.rad.mul(o.rad));
        }
        RealBall { mid, rad, prec: p }
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall { mid: -&self.mid, rad: self.rad, prec: self.prec }
    }
}

macro_rules! owned_ops {
    ($t:ident, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                (&self).$m(o)
            }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(RealBall, Add, add);
owned_ops!(RealBall, Sub, sub);
owned_ops!(RealBall, Mul, mul);

impl Neg for RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        -&self
    }
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:e}]", self.to_f64(), self.rad.to_f64())
    }
}
