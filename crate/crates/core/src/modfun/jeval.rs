//! Evaluation of the modular function `j` on the upper half-plane.

use super::series::j_coefficients;
use crate::arith::elementary::{cos_sin, exp, pi};
use crate::arith::{BigComplex, Mag, RealBall};
use crate::error::{Error, Result};
use crate::qforms::{mat_mul, translation, Mat2, QuadForm, IDENTITY, S_MATRIX};
use num_bigint::BigInt;
use std::f64::consts::{LN_2, PI};

/// Default cap on the number of q-expansion terms.
pub const DEFAULT_MAX_TERMS: usize = 4096;

/// Möbius action `(az + b)/(cz + d)` on a complex ball.
pub fn mobius(g: &Mat2, z: &BigComplex) -> Result<BigComplex> {
    let p = z.prec();
    let c = |v: i64| BigComplex::from_int(&BigInt::from(v), p);
    let num = &z.mul_int(&BigInt::from(g[0][0])) + &c(g[0][1]);
    let den = &z.mul_int(&BigInt::from(g[1][0])) + &c(g[1][1]);
    num.div(&den)
}

/// Reduce `z` into the closed fundamental domain of `SL2(Z)`.
///
/// The matrix is found on midpoints; the returned ball is `γ·z` evaluated
/// with the full input radius, so it encloses the exact image.
pub fn reduce_to_fundamental_domain(z: &BigComplex) -> Result<(BigComplex, Mat2)> {
    if !z.im.is_positive() {
        return Err(Error::Domain("point is not in the upper half-plane".into()));
    }
    let wp = z.prec().max(64) + 64;
    let mut w = z.midpoint().with_prec(wp);
    let mut g = IDENTITY;
    let one = RealBall::one(wp);
    for _ in 0..100_000 {
        if w.im.to_f64() < (-(wp as f64) / 2.0).exp2() {
            return Err(Error::Precision("imaginary part too small for the working precision".into()));
        }
        let k = w.re.to_f64().round();
        if k.abs() > 1e15 {
            return Err(Error::Precision("real part too large to reduce".into()));
        }
        let k = k as i64;
        if k != 0 {
            w = BigComplex::new(&w.re - &RealBall::from_i64(k, wp), w.im.clone());
            g = checked_mul(&translation(-k), &g)?;
        }
        let n = w.norm_sqr();
        if (&n - &one).to_f64() < -1e-30 {
            w = (-&w.conj()).div(&BigComplex::from_real(n)).map_err(|_| Error::Precision("reduction lost the point".into()))?;
            w = w.with_prec(wp).midpoint();
            g = checked_mul(&S_MATRIX, &g)?;
        } else {
            let image = mobius(&g, &z.with_prec(wp))?;
            if !image.im.is_positive() {
                return Err(Error::Precision("reduced point not certified in the upper half-plane".into()));
            }
            return Ok((image, g));
        }
    }
    Err(Error::Precision("fundamental-domain reduction did not terminate".into()))
}

fn checked_mul(x: &Mat2, y: &Mat2) -> Result<Mat2> {
    let big = x.iter().chain(y.iter()).flatten().any(|v| v.unsigned_abs() > 1 << 30);
    if big {
        return Err(Error::Precision("reduction matrix entries overflow".into()));
    }
    Ok(mat_mul(x, y))
}

/// `log2` of an upper bound for `Σ_{n>N} e^{4π√n} |q|^n`, where `ln_q = ln |q|`.
fn tail_log2(n: usize, ln_q: f64) -> f64 {
    let nf = n as f64;
    let r_ln = ln_q + 2.0 * PI / nf.sqrt();
    if r_ln >= -1e-3 {
        return f64::INFINITY;
    }
    let r = r_ln.exp();
    (4.0 * PI * nf.sqrt() + nf * ln_q + (r / (1.0 - r)).ln()) / LN_2
}

/// `q = e^{2πiz}` and `1/q`, for `z` with positive imaginary part.
fn q_and_inverse(z: &BigComplex, wp: u32) -> Result<(BigComplex, BigComplex)> {
    let two_pi = pi(wp + 16).shl(1);
    let theta = &two_pi * &z.re;
    let t = &two_pi * &z.im;
    let (c, s) = cos_sin(&theta, wp + 16)?;
    let big = exp(&t, wp + 16)?;
    let small = exp(&-&t, wp + 16)?;
    let q = BigComplex::new(&small * &c, &small * &s);
    let qinv = BigComplex::new(&big * &c, -(&big * &s));
    Ok((q, qinv))
}

/// `j(z)` for `z` already in (or near) the fundamental domain.
fn j_series(z: &BigComplex, wp: u32, max_terms: usize) -> Result<BigComplex> {
    let y = z.im.to_f64();
    let ln_q_upper = -2.0 * PI * (y - y.abs() * 1e-12 - z.im.rad().to_f64());
    let mut n = 8usize;
    while tail_log2(n, ln_q_upper) > -(wp as f64) - 4.0 {
        n += 1 + n / 8;
        if n > max_terms {
            return Err(Error::Truncation { needed: n, limit: max_terms });
        }
    }
    let tail = Mag::from_log2(tail_log2(n, ln_q_upper));
    let coeffs = j_coefficients(n);
    let extra = (2.0 * PI * y / LN_2).ceil().max(0.0) as u32;
    let (q, qinv) = q_and_inverse(z, wp + extra + 16)?;
    let p = wp + 16;
    let mut acc = BigComplex::zero(p);
    for k in (1..=n).rev() {
        acc = (&(&acc * &q) + &BigComplex::from_int(&coeffs[k + 1], p)).with_prec(p);
    }
    acc = &acc * &q;
    let j = &(&qinv + &BigComplex::from_int(&coeffs[1], p)) + &acc;
    Ok(j.add_error(tail))
}

/// `j(z)` with error radius at most `2^-target`.
pub fn j_eval(z: &BigComplex, target: u32) -> Result<BigComplex> {
    j_eval_with(z, target, DEFAULT_MAX_TERMS)
}

pub fn j_eval_with(z: &BigComplex, target: u32, max_terms: usize) -> Result<BigComplex> {
    if target < 32 {
        return Err(Error::Domain(format!("target precision {target} is below 32 bits")));
    }
    if !z.im.is_positive() {
        return Err(Error::Domain("j is only defined on the upper half-plane".into()));
    }
    let (w, _) = reduce_to_fundamental_domain(z)?;
    let goal = Mag::pow2(-(target as i64) - 1);
    let mut guard = 24u32;
    for _ in 0..4 {
        let j = j_series(&w, target + guard, max_terms)?;
        if j.error_radius() <= goal {
            return Ok(j.with_prec(target + 8));
        }
        guard = guard * 2 + 32;
    }
    Err(Error::Precision(format!("could not reach 2^-{target} for j(z); the input ball is too wide")))
}

/// `j` at the upper-half-plane root of a positive definite form, with the
/// reduction done exactly on the form first.
pub fn j_of_form(f: &QuadForm, target: u32) -> Result<BigComplex> {
    let (r, _) = f.reduce();
    let extra = (PI * (-(r.disc() as f64)).sqrt() / r.a as f64 / LN_2) as u32;
    let tau = r.root(target + extra + 64);
    j_eval(&tau, target)
}

/// Independent route: `j = E4^3 / Δ` with `E4 = 1 + 240 Σ σ3(n) q^n` and
/// `Δ = q Π (1 − q^n)^24`, the product taken from Euler's pentagonal series.
pub fn j_eval_eisenstein(z: &BigComplex, target: u32) -> Result<BigComplex> {
    if !z.im.is_positive() {
        return Err(Error::Domain("j is only defined on the upper half-plane".into()));
    }
    let (w, _) = reduce_to_fundamental_domain(z)?;
    let y = w.im.to_f64() - w.im.rad().to_f64();
    let extra = (2.0 * PI * y / LN_2).ceil() as u32;
    let wp = target + 3 * extra + 64;
    let (q, _) = q_and_inverse(&w, wp)?;
    let ln_q = -2.0 * PI * y * (1.0 - 1e-12);
    // E4: terms 240 σ3(n)|q|^n <= 240 n^4 |q|^n
    let mut n_e4 = 4usize;
    let e4_tail = |n: usize| -> f64 {
        let nf = (n + 1) as f64;
        let r = (ln_q + 4.0 / nf).exp();
        ((240.0f64).ln() + 4.0 * nf.ln() + nf * ln_q - (1.0 - r).ln()) / LN_2
    };
    while e4_tail(n_e4) > -(wp as f64) {
        n_e4 += 4;
    }
    let mut e4 = BigComplex::zero(wp);
    for n in (1..=n_e4).rev() {
        let s3: BigInt = crate::nt::divisors(n as u64).into_iter().map(|d| BigInt::from(d).pow(3)).sum();
        e4 = (&(&e4 + &BigComplex::from_int(&(s3 * 240), wp)) * &q).with_prec(wp);
    }
    let e4 = (&e4 + &BigComplex::one(wp)).add_error(Mag::from_log2(e4_tail(n_e4)));
    // Π (1 − q^n) = Σ_k (−1)^k q^{k(3k−1)/2}, k over all integers
    let mut eta = BigComplex::one(wp);
    let mut k = 1i64;
    loop {
        let e1 = (k * (3 * k - 1) / 2) as u64;
        let e2 = (k * (3 * k + 1) / 2) as u64;
        if (e1 as f64) * ln_q / LN_2 < -(wp as f64) - 8.0 {
            // remaining exponents exceed e1; bound by a geometric tail
            let tail = (e1 as f64 * ln_q - (1.0 - ln_q.exp()).ln() + 1.0) / LN_2;
            eta = eta.add_error(Mag::from_log2(tail));
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let t = &q.pow(e1) + &q.pow(e2);
        eta = if sign > 0 { &eta + &t } else { &eta - &t };
        k += 1;
    }
    let eta24 = eta.pow(24);
    let delta = &q * &eta24;
    let num = e4.sqr() * &e4;
    let j = num.div(&delta)?;
    if j.error_radius() > Mag::pow2(-(target as i64)) {
        return Err(Error::Precision("Eisenstein route lost too much precision".into()));
    }
    Ok(j.with_prec(target + 8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn int(s: &str) -> BigRational {
        BigRational::from_integer(s.parse().unwrap())
    }

    #[test]
    fn special_values() {
        let zeta = QuadForm { a: 1, b: 1, c: 1 }.root(200);
        let j = j_eval(&zeta, 100).unwrap();
        assert!(j.re.contains_rational(&int("0")) && j.im.contains_rational(&int("0")));
        let i = QuadForm { a: 1, b: 0, c: 1 }.root(200);
        let j = j_eval(&i, 100).unwrap();
        assert!(j.re.contains_rational(&int("1728")));
        let j2 = j_eval_eisenstein(&i, 100).unwrap();
        assert!(j2.re.contains_rational(&int("1728")));
        let t = QuadForm { a: 1, b: 1, c: 41 }.root(300);
        let j = j_eval(&t, 64).unwrap();
        assert!(j.re.contains_rational(&int("-262537412640768000")));
        assert!(j.error_radius().to_f64() < 2f64.powi(-64));
    }

    #[test]
    fn reduction_examples() {
        let z = BigComplex::from_f64(5.0, 1.0, 80);
        let (w, g) = reduce_to_fundamental_domain(&z).unwrap();
        assert_eq!(g, translation(-5));
        assert!((w.re.to_f64()).abs() < 1e-20 && (w.im.to_f64() - 1.0).abs() < 1e-20);
        let z = BigComplex::from_f64(0.0, 0.25, 80);
        let (w, g) = reduce_to_fundamental_domain(&z).unwrap();
        assert_eq!(g, S_MATRIX);
        assert!((w.im.to_f64() - 4.0).abs() < 1e-20);
        let tiny = BigComplex::from_f64(0.3, 1e-50, 200);
        assert!(matches!(reduce_to_fundamental_domain(&tiny), Err(Error::Precision(_))));
        assert!(matches!(j_eval(&BigComplex::from_f64(0.0, -1.0, 64), 64), Err(Error::Domain(_))));
    }

    #[test]
    fn truncation_is_reported() {
        let z = BigComplex::from_f64(0.1, 1.2, 4000);
        assert!(matches!(j_eval_with(&z, 3000, 10), Err(Error::Truncation { .. })));
    }

    #[test]
    fn two_routes_agree() {
        for &(x, y) in &[(0.1, 1.2), (-0.4, 0.95), (0.5, 3.0), (0.37, 1.0), (2.3, 0.2)] {
            let z = BigComplex::from_f64(x, y, 160);
            let a = j_eval(&z, 100).unwrap();
            let b = j_eval_eisenstein(&z, 100).unwrap();
            assert!(a.overlaps(&b), "z = {x} + {y}i: {a:?} vs {b:?}");
        }
    }
}
