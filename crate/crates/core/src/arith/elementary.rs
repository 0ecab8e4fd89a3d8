//! Elementary functions on balls: pi, log 2, exp, log, cos/sin, atan2.
//!
//! Each routine evaluates on the midpoint with a few guard bits, adds the
//! series truncation bound, then accounts for the input radius through a
//! derivative bound.

use super::ball::RealBall;
use super::complex::BigComplex;
use super::mag::Mag;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::sync::Mutex;

const GUARD: u32 = 40;

/// `sum_{k>=0} (-1)^k x^(2k+1)/(2k+1)` (alternating) or the plain sum for
/// `x = 1/n`, evaluated in fixed point with `wp` fractional bits.
fn arctan_recip(n: u64, wp: u32, hyperbolic: bool) -> RealBall {
    let one = BigInt::from(1) << wp as usize;
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut power = &one / BigInt::from(n); // 1/n^(2k+1)
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    let mut terms: u64 = 0;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * k + 1);
        if !hyperbolic && k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        power /= &n2;
        k += 1;
        terms += 1;
    }
    // each term and each power carries at most one ulp of truncation; the tail is below one ulp
    RealBall::new(sum, Mag::from_u64(2 * terms + 2).mul_2exp(-(wp as i64)), wp)
}

struct ConstCache {
    pi: Option<RealBall>,
    ln2: Option<RealBall>,
}

static CONSTS: Mutex<ConstCache> = Mutex::new(ConstCache { pi: None, ln2: None });

pub fn pi(prec: u32) -> RealBall {
    {
        let c = CONSTS.lock().unwrap();
        if let Some(p) = &c.pi {
            if p.prec() >= prec {
                return p.with_prec(prec);
            }
        }
    }
    let wp = prec.max(64) + 32;
    let a = arctan_recip(5, wp, false).shl(4);
    let b = arctan_recip(239, wp, false).shl(2);
    let v = &a - &b;
    CONSTS.lock().unwrap().pi = Some(v.clone());
    v.with_prec(prec)
}

pub fn ln2(prec: u32) -> RealBall {
    {
        let c = CONSTS.lock().unwrap();
        if let Some(p) = &c.ln2 {
            if p.prec() >= prec {
                return p.with_prec(prec);
            }
        }
    }
    let wp = prec.max(64) + 32;
    let v = arctan_recip(3, wp, true).shl(1);
    CONSTS.lock().unwrap().ln2 = Some(v.clone());
    v.with_prec(prec)
}

/// Upper bound for `e^r - 1` with `r >= 0` given as a magnitude.
fn expm1_upper(r: Mag) -> Mag {
    let x = r.to_f64();
    if x <= 0.5 {
        // e^r - 1 <= r + r^2 for r <= 1/2... and r + r^2 <= 2r
        r.mul_u64(2)
    } else {
        Mag::from_f64(x.exp_m1() * (1.0 + 1e-9) + 1e-300)
    }
}

/// Taylor sum of `e^t` for a small midpoint ball `t` (|t| < 1/128).
fn exp_taylor(t: &RealBall, wp: u32) -> RealBall {
    let mut sum = RealBall::one(wp);
    let mut term = RealBall::one(wp);
    let tu = t.abs_upper();
    let mut n = 1u64;
    loop {
        term = (&term * t).div_u64(n);
        sum = &sum + &term;
        n += 1;
        if negligible(&term, wp) {
            break;
        }
    }
    // tail <= |term| * |t| * 2
    sum.add_error(term.abs_upper().mul(tu).mul_u64(2).add(Mag::pow2(-(wp as i64))))
}

/// Value of `e^x` with an absolute error around `2^-prec`.
pub fn exp(x: &RealBall, prec: u32) -> Result<RealBall> {
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e12 {
        return Err(Error::Domain(format!("exp argument out of range: {xf:e}")));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    if k < -(prec as i64) - 64 {
        // e^x below 2^-(prec+60): return a ball around zero
        let up = Mag::pow2(k + 2).mul(expm1_upper(x.rad()).add(Mag::from_u64(1)));
        return Ok(RealBall::zero(prec).add_error(up));
    }
    let wp = prec + GUARD + k.max(0) as u32 + bits_of(xf.abs());
    let xm = x.midpoint().with_prec(wp);
    let r = &xm - &ln2(wp + 8).mul_int(&BigInt::from(k)).with_prec(wp);
    let t = r.shr(10);
    let mut e = exp_taylor(&t, wp + 10);
    for _ in 0..10 {
        e = e.sqr();
    }
    let e = e.with_prec(wp);
    let scaled = if k >= 0 { e.shl(k as u32) } else { e.shr((-k) as u32) };
    let mut out = scaled.with_prec(prec + 8);
    if !x.rad().is_zero() {
        out = out.add_error(out.abs_upper().mul(expm1_upper(x.rad())));
    }
    Ok(out)
}

/// Series stop test on the midpoint alone (the radius never shrinks below an ulp).
fn negligible(term: &RealBall, wp: u32) -> bool {
    Mag::from_bigint(term.mid(), -(term.prec() as i64)).log2_ceil() < -(wp as i64) + 3
}

fn bits_of(v: f64) -> u32 {
    if v < 2.0 {
        1
    } else {
        v.log2().ceil() as u32 + 1
    }
}

/// Natural logarithm of a positive ball.
pub fn log(x: &RealBall, prec: u32) -> Result<RealBall> {
    if !x.is_positive() {
        return Err(Error::Precision("logarithm of a ball not known to be positive".into()));
    }
    let wp = prec + GUARD;
    // x = 2^e * m with m in [0.75, 1.5)
    let mid = x.mid();
    let bits = mid.bits() as i64 - x.prec() as i64; // x in [2^(bits-1), 2^bits)
    let mut e = bits - 1;
    let xm = x.midpoint();
    let mut m = if e >= 0 { xm.shr(e as u32) } else { xm.shl((-e) as u32) };
    if m.to_f64() >= 1.5 {
        m = m.shr(1);
        e += 1;
    }
    let m = m.with_prec(wp);
    let one = RealBall::one(wp);
    let s = (&m - &one).div(&(&m + &one))?;
    let s2 = s.sqr();
    let mut term = s.clone();
    let mut sum = s.clone();
    let mut k = 1u64;
    loop {
        term = &term * &s2;
        let t = term.div_u64(2 * k + 1);
        sum = &sum + &t;
        k += 1;
        if negligible(&term, wp) {
            break;
        }
    }
    // tail <= |term| * s^2 / (1 - s^2) <= 2|term| for |s| <= 1/5
    sum = sum.add_error(term.abs_upper().mul_u64(2));
    let mut out = &sum.shl(1) + &ln2(wp).mul_int(&BigInt::from(e));
    if !x.rad().is_zero() {
        out = out.add_error(x.rad().div_lower(x.abs_lower()));
    }
    Ok(out.with_prec(prec + 8))
}

/// `(cos θ, sin θ)`.
pub fn cos_sin(theta: &RealBall, prec: u32) -> Result<(RealBall, RealBall)> {
    let tf = theta.to_f64();
    if !tf.is_finite() || tf.abs() > 1e15 {
        return Err(Error::Domain(format!("trigonometric argument out of range: {tf:e}")));
    }
    let wp = prec + GUARD + bits_of(tf.abs());
    let two_pi = pi(wp + 8).shl(1);
    let n = (tf / std::f64::consts::TAU).round() as i64;
    let r = &theta.midpoint().with_prec(wp) - &two_pi.mul_int(&BigInt::from(n)).with_prec(wp);
    let t = r.shr(10);
    let w = wp + 10;
    let t2 = t.sqr();
    // cos t = sum (-1)^k t^2k/(2k)!, sin t = sum (-1)^k t^(2k+1)/(2k+1)!
    let mut c = RealBall::one(w);
    let mut s = t.clone();
    let mut ct = RealBall::one(w);
    let mut st = t.clone();
    let mut k = 1u64;
    loop {
        ct = -(&ct * &t2).div_u64((2 * k - 1) * (2 * k));
        st = -(&st * &t2).div_u64((2 * k) * (2 * k + 1));
        c = &c + &ct;
        s = &s + &st;
        k += 1;
        if negligible(&ct, w) && negligible(&st, w) {
            break;
        }
    }
    let tail = ct.abs_upper().add(st.abs_upper()).add(Mag::pow2(-(w as i64)));
    c = c.add_error(tail);
    s = s.add_error(tail);
    let one = RealBall::one(w);
    for _ in 0..10 {
        let s2 = (&s * &c).shl(1);
        let c2 = &one - &s.sqr().shl(1);
        s = s2;
        c = c2;
    }
    let mut c = c.with_prec(prec + 8);
    let mut s = s.with_prec(prec + 8);
    if !theta.rad().is_zero() {
        c = c.add_error(theta.rad());
        s = s.add_error(theta.rad());
    }
    Ok((c, s))
}

/// `atan(u)` for a midpoint ball with `|u| <= 1`.
fn atan_small(u: &RealBall, wp: u32) -> Result<RealBall> {
    let one = RealBall::one(wp);
    // two half-angle reductions: atan(u) = 2 atan(u / (1 + sqrt(1 + u^2)))
    let mut v = u.clone();
    for _ in 0..2 {
        let d = &one + &(&one + &v.sqr()).sqrt()?;
        v = v.div(&d)?;
    }
    let v2 = v.sqr();
    let mut term = v.clone();
    let mut sum = v.clone();
    let mut k = 1u64;
    loop {
        term = -(&term * &v2);
        sum = &sum + &term.div_u64(2 * k + 1);
        k += 1;
        if negligible(&term, wp) {
            break;
        }
    }
    Ok(sum.add_error(term.abs_upper()).shl(2))
}

/// Argument of `x + iy` in `(-π, π]`, with the radius accounting for the
/// input box. Fails when the box may contain zero.
pub fn atan2(y: &RealBall, x: &RealBall, prec: u32) -> Result<RealBall> {
    let z = BigComplex::new(x.clone(), y.clone());
    let lower = z.abs_lower();
    if lower.is_zero() {
        return Err(Error::Precision("argument of a box containing zero".into()));
    }
    let wp = prec + GUARD;
    let xm = x.midpoint().with_prec(wp);
    let ym = y.midpoint().with_prec(wp);
    let pi_w = pi(wp);
    let ax = xm.mid().abs();
    let ay = ym.mid().abs();
    let val = if ax >= ay {
        let a = atan_small(&ym.div(&xm)?, wp)?;
        if !xm.mid().is_negative() {
            a
        } else if ym.mid().is_negative() {
            &a - &pi_w
        } else {
            &a + &pi_w
        }
    } else {
        let a = atan_small(&xm.div(&ym)?, wp)?;
        let half_pi = pi_w.shr(1);
        if ym.mid().is_negative() {
            -(&half_pi + &a)
        } else {
            &half_pi - &a
        }
    };
    let mut out = val.with_prec(prec + 8);
    let r = x.rad().add(y.rad());
    if !r.is_zero() {
        out = out.add_error(r.div_lower(lower));
    }
    Ok(out)
}

/// `e^z` for a complex ball.
pub fn cexp(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    let m = exp(&z.re, prec + 8)?;
    let mbits = m.abs_upper().log2_ceil().max(0) as u32;
    let (c, s) = cos_sin(&z.im, prec + 8 + mbits)?;
    Ok(BigComplex::new(&m * &c, &m * &s).with_prec(prec + 8))
}

/// Principal logarithm `log|z| + i arg z`.
pub fn clog(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    let n = z.norm_sqr();
    let l = log(&n, prec + 2)?.shr(1);
    Ok(BigComplex::new(l, atan2(&z.im, &z.re, prec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn close(b: &RealBall, v: f64, tol: f64) -> bool {
        (b.to_f64() - v).abs() <= tol * v.abs().max(1.0)
    }

    #[test]
    fn constants() {
        let p = pi(200);
        assert!(close(&p, PI, 1e-15));
        assert!(p.rad().to_f64() < 1e-55);
        // digits of pi past double precision
        assert_eq!(p.to_decimal(30), "3.141592653589793238462643383280");
        assert!(close(&ln2(100), LN_2, 1e-15));
        assert_eq!(ln2(150).to_decimal(25), "0.6931471805599453094172321");
    }

    #[test]
    fn exp_log_roundtrip() {
        for &v in &[-30.5, -1.0, 0.0, 0.3, 2.0, 57.25] {
            let x = RealBall::from_f64(v, 120);
            let e = exp(&x, 120).unwrap();
            assert!(close(&e, v.exp(), 1e-14), "exp({v})");
            let l = log(&e, 100).unwrap();
            assert!(l.overlaps(&x), "log(exp({v}))");
        }
    }

    #[test]
    fn trig_identities() {
        for &v in &[-7.0, -0.5, 0.0, 1.0, 3.0, 100.0] {
            let x = RealBall::from_f64(v, 110);
            let (c, s) = cos_sin(&x, 110).unwrap();
            assert!(close(&c, v.cos(), 1e-14) && close(&s, v.sin(), 1e-14));
            let one = &c.sqr() + &s.sqr();
            assert!(one.overlaps(&RealBall::one(110)));
            assert!(one.rad().to_f64() < 1e-28);
            let a = atan2(&s, &c, 100).unwrap();
            let expect = v.sin().atan2(v.cos());
            assert!(close(&a, expect, 1e-14), "atan2 for {v}");
        }
    }

    #[test]
    fn complex_exp_log() {
        let z = BigComplex::from_f64(0.7, -2.5, 120);
        let e = cexp(&z, 120).unwrap();
        let back = clog(&e, 110).unwrap();
        assert!(back.overlaps(&z));
        assert!(back.error_radius().to_f64() < 1e-30);
    }
}
