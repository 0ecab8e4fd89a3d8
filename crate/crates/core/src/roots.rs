//! Certified isolation of the complex roots of a squarefree integer polynomial.
//!
//! Approximations come from simultaneous (Aberth) iteration in multiprecision;
//! each approximation `z_i` is then certified with the Weierstrass correction
//! `W_i = p(z_i) / (lead · Π_{j≠i} (z_i − z_j))`: the disks `D(z_i, n|W_i|)`
//! cover all roots and every connected component of their union holds as many
//! roots as disks, so pairwise disjoint disks isolate one root each.

use crate::arith::{BigComplex, Mag, RealBall};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// `log2 |x|` as an `f64` (minus infinity for zero).
pub fn log2_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let sh = bits.saturating_sub(53);
    let top = (x.abs() >> sh as usize).to_f64().unwrap_or(1.0);
    top.log2() + sh as f64
}

/// Initial approximations spread on circles whose radii follow the Newton
/// polygon of `log |a_k|`.
fn initial_guesses(p: &IntPoly, wp: u32) -> Vec<BigComplex> {
    let pts: Vec<(usize, f64)> =
        p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, log2_abs(c))).collect();
    // upper convex hull
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as f64 - x1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - x1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::new();
    for (edge, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let cnt = j - i;
        let log_r = (li - lj) / cnt as f64;
        let e = log_r.floor();
        let frac = log_r - e;
        for m in 0..cnt {
            let theta = std::f64::consts::TAU * (m as f64 + 0.25) / cnt as f64 + 0.7 + 0.3 * edge as f64;
            let r = frac.exp2();
            let z = BigComplex::from_f64(r * theta.cos(), r * theta.sin(), wp + 64);
            let z = if e >= 0.0 { z.shl(e as u32) } else { z.shr((-e) as u32) };
            out.push(z.with_prec(wp).midpoint());
        }
    }
    // zero coefficients at the bottom give roots at the origin (not squarefree beyond one)
    let zeros = pts.first().map_or(0, |&(k, _)| k);
    for _ in 0..zeros {
        out.push(BigComplex::zero(wp));
    }
    out
}

fn mid(z: BigComplex, wp: u32) -> BigComplex {
    z.with_prec(wp).midpoint()
}

fn eval_mid(p: &IntPoly, z: &BigComplex, wp: u32) -> BigComplex {
    let mut acc = BigComplex::zero(wp);
    for c in p.coeffs().iter().rev() {
        acc = mid(&(&acc * z) + &BigComplex::from_int(c, wp), wp);
    }
    acc
}

fn aberth(p: &IntPoly, zs: &mut [BigComplex], wp: u32, max_iter: usize) {
    let dp = p.derivative();
    let n = zs.len();
    let target = -(wp as f64) + 8.0;
    let mut stalled = 0;
    let mut best = f64::INFINITY;
    for _ in 0..max_iter {
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let pv = eval_mid(p, &zs[i], wp);
            if pv.re.mid().is_zero() && pv.im.mid().is_zero() {
                continue;
            }
            let dv = eval_mid(&dp, &zs[i], wp);
            let Ok(newton) = pv.div(&dv) else {
                zs[i] = mid(&zs[i] + &BigComplex::from_f64(1e-3, 1e-3, wp), wp);
                worst = f64::INFINITY;
                continue;
            };
            let newton = mid(newton, wp);
            let mut s = BigComplex::zero(wp);
            for j in 0..n {
                if j != i {
                    if let Ok(t) = (&zs[i] - &zs[j]).inv() {
                        s = mid(&s + &t, wp);
                    }
                }
            }
            let denom = &BigComplex::one(wp) - &mid(&newton * &s, wp);
            let w = match newton.div(&denom) {
                Ok(w) => mid(w, wp),
                Err(_) => newton,
            };
            let (a, b) = (log2_abs(w.re.mid()), log2_abs(w.im.mid()));
            let lw = a.max(b) - w.prec() as f64;
            worst = worst.max(lw);
            zs[i] = mid(&zs[i] - &w, wp);
        }
        if worst < target {
            break;
        }
        if worst < best - 1.0 {
            best = worst;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled > 8 && best < target / 2.0 {
                break;
            }
        }
    }
}

/// Certified radii, or `None` when the disks are not pairwise disjoint.
fn certify(p: &IntPoly, zs: &[BigComplex]) -> Option<Vec<Mag>> {
    let n = zs.len();
    let lead = p.lead();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let pv = p.eval_complex(&zs[i]);
        let mut den = BigComplex::from_int(&lead, zs[i].prec());
        for j in 0..n {
            if j != i {
                den = &den * &(&zs[i] - &zs[j]);
            }
        }
        let lo = den.abs_lower();
        if lo.is_zero() {
            return None;
        }
        radii.push(pv.abs_upper().div_lower(lo).mul_u64(n as u64));
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (&zs[i] - &zs[j]).abs_lower();
            if d <= radii[i].add(radii[j]) {
                return None;
            }
        }
    }
    Some(radii)
}

/// Isolating boxes for all complex roots of a squarefree polynomial, each
/// containing exactly one root. Real roots are reported with an exact zero
/// imaginary part.
pub fn isolate_roots(p: &IntPoly, prec: u32) -> Result<Vec<BigComplex>> {
    let n = p.degree();
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    if p.gcd(&p.derivative()).degree() > 0 {
        return Err(Error::Domain("root isolation needs a squarefree polynomial".into()));
    }
    if n == 1 {
        let r = RealBall::from_ratio(&-p.coeff(0), &p.coeff(1), prec);
        return Ok(vec![BigComplex::from_real(r)]);
    }
    let lead_log = log2_abs(&p.lead());
    let root_bits = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| log2_abs(c) - lead_log)
        .fold(0.0f64, f64::max)
        .ceil() as u32
        + 2;
    let first = p.coeffs().iter().find(|c| !c.is_zero()).map(log2_abs).unwrap_or(0.0);
    let low_bits = p.coeffs().iter().filter(|c| !c.is_zero()).map(|c| log2_abs(c) - first).fold(0.0f64, f64::max).ceil()
        as u32;
    let mut wp = prec + 2 * root_bits + low_bits + 64 + 4 * n as u32;
    let mut zs = initial_guesses(p, wp);
    for _attempt in 0..8 {
        aberth(p, &mut zs, wp, 400 + 20 * n);
        if let Some(radii) = certify(p, &zs) {
            return Ok(mark_real(zs, radii));
        }
        wp *= 2;
        zs = zs.into_iter().map(|z| z.with_prec(wp)).collect();
    }
    Err(Error::Precision(format!("root isolation did not certify at {wp} bits")))
}

/// Attach radii; a disk that meets the real axis and meets no other disk's
/// mirror image holds a real root (roots of real polynomials come in
/// conjugate pairs), so its imaginary part is set to exactly zero.
fn mark_real(zs: Vec<BigComplex>, radii: Vec<Mag>) -> Vec<BigComplex> {
    let n = zs.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let boxed = zs[i].add_error(radii[i]);
        let meets_axis = boxed.im.contains_zero();
        let alone = (0..n).filter(|&j| j != i).all(|j| {
            let mirror = zs[j].conj();
            (&zs[i] - &mirror).abs_lower() > radii[i].add(radii[j])
        });
        if meets_axis && alone {
            let p = boxed.prec();
            out.push(BigComplex::new(boxed.re, RealBall::zero(p)));
        } else {
            out.push(boxed);
        }
    }
    out
}
