//! Complex balls as pairs of real balls.

use super::ball::{mag_sqrt, RealBall};
use super::mag::Mag;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A rectangle `re + i·im` of real balls.
#[derive(Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: RealBall,
    pub im: RealBall,
}

impl BigComplex {
    pub fn new(re: RealBall, im: RealBall) -> BigComplex {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> BigComplex {
        BigComplex { re: RealBall::zero(prec), im: RealBall::zero(prec) }
    }

    pub fn one(prec: u32) -> BigComplex {
        BigComplex::from_real(RealBall::one(prec))
    }

    pub fn from_real(re: RealBall) -> BigComplex {
        let p = re.prec();
        BigComplex { re, im: RealBall::zero(p) }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> BigComplex {
        BigComplex::from_real(RealBall::from_int(n, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> BigComplex {
        BigComplex { re: RealBall::from_f64(re, prec), im: RealBall::from_f64(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Upper bound for the distance from the midpoint to any point of the box.
    pub fn error_radius(&self) -> Mag {
        let (a, b) = (self.re.rad(), self.im.rad());
        mag_sqrt(a.mul(a).add(b.mul(b)))
    }

    pub fn with_prec(&self, p: u32) -> BigComplex {
        BigComplex { re: self.re.with_prec(p), im: self.im.with_prec(p) }
    }

    pub fn midpoint(&self) -> BigComplex {
        BigComplex { re: self.re.midpoint(), im: self.im.midpoint() }
    }

    /// Enlarge both components by `e`.
    pub fn add_error(&self, e: Mag) -> BigComplex {
        BigComplex { re: self.re.add_error(e), im: self.im.add_error(e) }
    }

    pub fn conj(&self) -> BigComplex {
        BigComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn mul_real(&self, x: &RealBall) -> BigComplex {
        BigComplex { re: &self.re * x, im: &self.im * x }
    }

    pub fn mul_int(&self, k: &BigInt) -> BigComplex {
        BigComplex { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    /// Exact multiplication by `2^k`.
    pub fn shl(&self, k: u32) -> BigComplex {
        BigComplex { re: self.re.shl(k), im: self.im.shl(k) }
    }

    pub fn shr(&self, k: u32) -> BigComplex {
        BigComplex { re: self.re.shr(k), im: self.im.shr(k) }
    }

    pub fn sqr(&self) -> BigComplex {
        self * self
    }

    /// `|z|^2` as a real ball.
    pub fn norm_sqr(&self) -> RealBall {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> RealBall {
        self.norm_sqr().sqrt().expect("norm is nonnegative")
    }

    pub fn abs_upper(&self) -> Mag {
        let a = self.re.abs_upper();
        let b = self.im.abs_upper();
        mag_sqrt(a.mul(a).add(b.mul(b)))
    }

    /// Lower bound for `|z|` over the box.
    pub fn abs_lower(&self) -> Mag {
        let a = self.re.abs_lower();
        let b = self.im.abs_lower();
        // max(|re|,|im|) >= |z|/sqrt(2) is too lossy near the axes; use the larger lower bound
        let n = a.mul(a).add(b.mul(b));
        if n.is_zero() {
            return Mag::ZERO;
        }
        // sqrt(a^2+b^2) >= max(a, b)
        a.max(b).max(lower_sqrt_sum(a, b))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &BigComplex) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn div(&self, o: &BigComplex) -> Result<BigComplex> {
        let n = o.norm_sqr();
        if n.contains_zero() {
            return Err(Error::Precision("complex division by a box containing zero".into()));
        }
        let num = self * &o.conj();
        Ok(BigComplex { re: num.re.div(&n)?, im: num.im.div(&n)? })
    }

    pub fn inv(&self) -> Result<BigComplex> {
        BigComplex::one(self.prec()).div(self)
    }

    /// `z^k` for `k >= 0` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> BigComplex {
        let mut base = self.clone();
        let mut acc = BigComplex::one(self.prec());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn powi(&self, k: i64) -> Result<BigComplex> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            self.pow(k.unsigned_abs()).inv()
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// A lower bound for `sqrt(a^2 + b^2)` using `f64` with a safety factor.
fn lower_sqrt_sum(a: Mag, b: Mag) -> Mag {
    let e = a.max(b).log2_ceil();
    let x = a.mul_2exp(-e).to_f64();
    let y = b.mul_2exp(-e).to_f64();
    let v = (x * x + y * y).sqrt() * (1.0 - 1e-12);
    // convert back down; from_f64 rounds up, so shave one more relative ulp of the mantissa
    let m = Mag::from_f64(v * (1.0 - 1e-8));
    m.mul_2exp(e)
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        BigComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        BigComplex { re, im }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -&self.re, im: -&self.im }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, o: &BigComplex) -> BigComplex {
                (&self).$m(o)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, o: BigComplex) -> BigComplex {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + i{:?})", self.re, self.im)
    }
}
