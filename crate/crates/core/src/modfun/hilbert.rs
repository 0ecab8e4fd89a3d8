//! Hilbert class polynomials by multiplying out `Π (X − j(τ_f))` in ball
//! arithmetic and rounding the coefficients.

use super::jeval::j_of_form;
use crate::arith::{BigComplex, Mag, RealBall};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::qforms::{reduced_forms, Discriminant, QuadForm};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::sync::{Mutex, OnceLock};

/// How many bits to start with and how many doublings to allow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// Starting working precision; `None` uses the a-priori size estimate.
    pub initial_bits: Option<u32>,
    pub max_retries: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { initial_bits: None, max_retries: 6 }
    }
}

/// Rounding residuals are accepted strictly below this value.
pub const INTEGRALITY_THRESHOLD: f64 = 0.25;

/// The polynomial together with the precision that produced it.
#[derive(Clone, Debug)]
pub struct ClassPolyReport {
    pub poly: IntPoly,
    pub bits: u32,
    /// Largest `|coefficient ball − nearest integer|` upper bound over all coefficients.
    pub max_residual: f64,
    pub attempts: u32,
}

/// `log2` estimate of `Π |j(τ_f)|`, from `|j(τ)| ≈ e^{π√|D|/a}`.
pub fn size_estimate_bits(d: Discriminant) -> u32 {
    let s: f64 = reduced_forms(d).iter().map(|f| 1.0 / f.a as f64).sum();
    (PI * (d.abs() as f64).sqrt() * s / LN_2).ceil() as u32
}

fn ball_product(forms: &[QuadForm], bits: u32) -> Result<Vec<RealBall>> {
    let p = bits;
    // real polynomial, constant term first
    let mut poly: Vec<RealBall> = vec![RealBall::one(p)];
    let mul_by = |poly: &Vec<RealBall>, factor: &[RealBall]| -> Vec<RealBall> {
        let mut out = vec![RealBall::zero(p); poly.len() + factor.len() - 1];
        for (i, a) in poly.iter().enumerate() {
            for (k, b) in factor.iter().enumerate() {
                out[i + k] = &out[i + k] + &(a * b);
            }
        }
        out
    };
    let mut done = vec![false; forms.len()];
    for i in 0..forms.len() {
        if done[i] {
            continue;
        }
        done[i] = true;
        let f = forms[i];
        let j = j_of_form(&f, p)?;
        let partner = forms.iter().position(|g| g.a == f.a && g.c == f.c && g.b == -f.b && g.b != f.b);
        match partner {
            Some(k) if !done[k] => {
                done[k] = true;
                // (X − j)(X − conj j) = X^2 − 2 Re j X + |j|^2
                let quad = [j.norm_sqr(), -(j.re.shl(1)), RealBall::one(p)];
                poly = mul_by(&poly, &quad);
            }
            _ => {
                // an ambiguous form: its j value is real
                if !j.im.contains_zero() {
                    return Err(Error::Precision("imaginary part of a real singular modulus not resolved".into()));
                }
                let lin = [-&j.re, RealBall::one(p)];
                poly = mul_by(&poly, &lin);
            }
        }
    }
    Ok(poly)
}

fn round_all(poly: &[RealBall]) -> Option<(IntPoly, f64)> {
    let mut coeffs = Vec::with_capacity(poly.len());
    let mut worst = 0.0f64;
    for c in poly {
        let (n, r) = c.nearest_integer();
        let rf = r.to_f64();
        if !(r < Mag::from_f64(INTEGRALITY_THRESHOLD)) {
            return None;
        }
        worst = worst.max(rf);
        coeffs.push(n);
    }
    Some((IntPoly::new(coeffs), worst))
}

fn cache() -> &'static Mutex<HashMap<i64, IntPoly>> {
    static C: OnceLock<Mutex<HashMap<i64, IntPoly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `H_D` with the rounding report.
pub fn hilbert_class_poly_report(d: Discriminant, policy: PrecisionPolicy) -> Result<ClassPolyReport> {
    let forms = reduced_forms(d);
    let h = forms.len() as u32;
    let mut bits = policy.initial_bits.unwrap_or(size_estimate_bits(d) + 64 + 4 * h);
    for attempt in 0..=policy.max_retries {
        let poly = ball_product(&forms, bits)?;
        if let Some((p, worst)) = round_all(&poly) {
            return Ok(ClassPolyReport { poly: p, bits, max_residual: worst, attempts: attempt + 1 });
        }
        bits *= 2;
    }
    Err(Error::Precision(format!(
        "class polynomial for D = {d} not integral after {} attempts (last {} bits)",
        policy.max_retries + 1,
        bits / 2
    )))
}

/// `H_D(X) = Π_f (X − j(τ_f))`, cached per discriminant.
pub fn hilbert_class_poly(d: Discriminant, policy: PrecisionPolicy) -> Result<IntPoly> {
    if let Some(p) = cache().lock().unwrap().get(&d.value()) {
        return Ok(p.clone());
    }
    let p = hilbert_class_poly_report(d, policy)?.poly;
    cache().lock().unwrap().insert(d.value(), p.clone());
    Ok(p)
}

/// `H_D` with the default policy.
pub fn class_poly(d: Discriminant) -> Result<IntPoly> {
    hilbert_class_poly(d, PrecisionPolicy::default())
}

/// Evaluate `H_D` at a ball and report whether zero is enclosed.
pub fn vanishes_at(poly: &IntPoly, z: &BigComplex) -> bool {
    poly.eval_complex(z).contains_zero()
}
