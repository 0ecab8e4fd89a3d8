//! Upper bounds for nonnegative reals with a short mantissa and a wide exponent.
//!
//! A [`Mag`] is used for error radii. Every operation rounds upward, so the
//! stored value always dominates the exact result of the operation it models.

use num_bigint::{BigInt, Sign};
use std::cmp::Ordering;
use std::fmt;

const MAN_BITS: u32 = 30;
const MAN_LO: u64 = 1 << (MAN_BITS - 1);

/// `man * 2^exp`, with `man` normalized into `[2^29, 2^30)` or zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn ceil_shr(m: u64, s: u32) -> u64 {
    if s == 0 {
        m
    } else if s >= 64 {
        u64::from(m != 0)
    } else {
        (m >> s) + u64::from(m & ((1u64 << s) - 1) != 0)
    }
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn normalize_up(man: u64, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 64 - man.leading_zeros();
        if bits > MAN_BITS {
            let sh = bits - MAN_BITS;
            let m = ceil_shr(man, sh);
            if m >> MAN_BITS != 0 {
                Mag { man: m >> 1, exp: exp + i64::from(sh) + 1 }
            } else {
                Mag { man: m, exp: exp + i64::from(sh) }
            }
        } else {
            let sh = MAN_BITS - bits;
            Mag { man: man << sh, exp: exp - i64::from(sh) }
        }
    }

    pub fn from_u64(x: u64) -> Mag {
        Mag::normalize_up(x, 0)
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: MAN_LO, exp: e - i64::from(MAN_BITS - 1) }
    }

    /// Upper bound for `2^l` given as a real exponent.
    pub fn from_log2(l: f64) -> Mag {
        assert!(!l.is_nan(), "NaN exponent");
        Mag::pow2(l.ceil().clamp(-1e15, 1e15) as i64)
    }

    /// Upper bound for `|x| * 2^shift`.
    pub fn from_bigint(x: &BigInt, shift: i64) -> Mag {
        let bits = x.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= u64::from(MAN_BITS) {
            let m = x.magnitude().iter_u64_digits().next().unwrap_or(0);
            return Mag::normalize_up(m, shift);
        }
        let sh = bits - u64::from(MAN_BITS);
        let top = (x.magnitude() >> sh).iter_u64_digits().next().unwrap_or(0);
        Mag::normalize_up(top + 1, shift + sh as i64)
    }

    /// Lower bound for `|x| * 2^shift`.
    pub fn from_bigint_lower(x: &BigInt, shift: i64) -> Mag {
        let bits = x.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= u64::from(MAN_BITS) {
            let m = x.magnitude().iter_u64_digits().next().unwrap_or(0);
            // exact, so rounding direction is irrelevant
            return Mag::normalize_up(m, shift);
        }
        let sh = bits - u64::from(MAN_BITS);
        let top = (x.magnitude() >> sh).iter_u64_digits().next().unwrap_or(0);
        Mag { man: top, exp: shift + sh as i64 }
    }

    /// Upper bound for a nonnegative finite `f64`.
    pub fn from_f64(x: f64) -> Mag {
        assert!(x.is_finite() && x >= 0.0, "Mag::from_f64 needs a finite nonnegative value");
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Mag::normalize_up(m, e)
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn add(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let d = hi.exp - lo.exp;
        let shifted = if d >= 63 { 1 } else { ceil_shr(lo.man, d as u32) };
        Mag::normalize_up(hi.man + shifted, hi.exp)
    }

    pub fn mul(self, o: Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalize_up(self.man * o.man, self.exp + o.exp)
    }

    pub fn mul_u64(self, k: u64) -> Mag {
        self.mul(Mag::from_u64(k))
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + k }
        }
    }

    /// Upper bound for `self / lower`, where `lower` is a lower bound of the divisor.
    pub fn div_lower(self, lower: Mag) -> Mag {
        assert!(!lower.is_zero(), "division by a zero lower bound");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = self.man << 32;
        let q = num / lower.man + u64::from(num % lower.man != 0);
        Mag::normalize_up(q, self.exp - 32 - lower.exp)
    }

    /// Smallest `e` with `self <= 2^e` (a large negative value for zero).
    pub fn log2_ceil(self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else if self.man == MAN_LO {
            self.exp + i64::from(MAN_BITS - 1)
        } else {
            self.exp + i64::from(MAN_BITS)
        }
    }

    /// `ceil(self * 2^prec)` as an integer.
    pub fn to_ulps_ceil(self, prec: u32) -> BigInt {
        if self.is_zero() {
            return BigInt::from(0);
        }
        let e = self.exp + i64::from(prec);
        if e >= 0 {
            BigInt::from(self.man) << (e as u64)
        } else {
            BigInt::from(ceil_shr(self.man, (-e).min(64) as u32))
        }
    }

    /// Nearest `f64` (may be `inf` or `0.0` outside the `f64` range).
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        (self.man as f64) * 2f64.powi(e)
    }

    pub fn max(self, o: Mag) -> Mag {
        if self >= o {
            self
        } else {
            o
        }
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "Mag(0)")
        } else {
            write!(f, "Mag({}*2^{} ~ 2^{})", self.man, self.exp, self.log2_ceil())
        }
    }
}

/// Sign helper shared by the ball types.
pub(crate) fn is_negative(x: &BigInt) -> bool {
    x.sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_upward() {
        let third = Mag::from_u64(1).div_lower(Mag::from_u64(3));
        assert!(third.to_f64() >= 1.0 / 3.0);
        assert!(third.to_f64() < 1.0 / 3.0 * (1.0 + 1e-8));
        let s = Mag::from_f64(0.1).add(Mag::from_f64(0.2));
        assert!(s.to_f64() >= 0.1 + 0.2);
    }

    #[test]
    fn bigint_bounds_bracket() {
        let x = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let up = Mag::from_bigint(&x, -10).to_f64();
        let lo = Mag::from_bigint_lower(&x, -10).to_f64();
        let v = 123456789012345678901234567890f64 / 1024.0;
        assert!(lo <= v * (1.0 + 1e-15) && up >= v * (1.0 - 1e-15));
        assert!(lo <= up);
    }

    #[test]
    fn ordering_and_log2() {
        assert!(Mag::pow2(-5) < Mag::pow2(-4));
        assert_eq!(Mag::pow2(7).log2_ceil(), 7);
        assert_eq!(Mag::from_u64(9).log2_ceil(), 4);
        assert_eq!(Mag::pow2(3).to_ulps_ceil(2), BigInt::from(32));
        assert_eq!(Mag::from_u64(3).mul_2exp(-4).to_ulps_ceil(2), BigInt::from(1));
    }
}
