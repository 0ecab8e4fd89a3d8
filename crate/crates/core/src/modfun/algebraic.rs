//! Exact algebraic numbers: a primitive irreducible integer polynomial plus
//! a complex box that contains exactly one of its roots.

use super::jeval::j_of_form;
use crate::arith::{BigComplex, Mag, RealBall};
use crate::cyclotomic::cyclotomic_poly;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::qforms::QuadForm;
use crate::roots::{isolate_roots, log2_abs};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Subsets examined before the factor search gives up.
const SUBSET_BUDGET: usize = 1 << 16;

/// Where a number came from; selects the fastest way to refine it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Rational(BigRational),
    /// `exp(2πi k / order)` with `gcd(k, order) = 1`.
    RootOfUnity { order: u64, k: u64 },
    /// `j` at the root of a (reduced) positive definite form.
    Cm(QuadForm),
    Generic,
}

#[derive(Clone)]
pub struct AlgebraicNumber {
    min_poly: IntPoly,
    embedding: BigComplex,
    source: Source,
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> AlgebraicNumber {
        let min_poly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        let embedding = BigComplex::from_real(RealBall::from_rational(q, 128));
        AlgebraicNumber { min_poly, embedding, source: Source::Rational(q.clone()) }
    }

    pub fn from_integer(n: &BigInt) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(&BigRational::from_integer(n.clone()))
    }

    pub fn from_i64(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_integer(&BigInt::from(n))
    }

    /// `exp(2πi k / order)`; `k` is taken mod `order` and must be coprime to it.
    pub fn root_of_unity(order: u64, k: u64) -> Result<AlgebraicNumber> {
        if order == 0 {
            return Err(Error::Domain("root of unity of order 0".into()));
        }
        let k = k % order;
        if k.gcd(&order) != 1 {
            return Err(Error::Domain(format!("exponent {k} is not coprime to the order {order}")));
        }
        if order <= 2 {
            return Ok(AlgebraicNumber::from_i64(if order == 1 { 1 } else { -1 }));
        }
        let min_poly = cyclotomic_poly(order);
        let embedding = root_of_unity_ball(order, k, 128)?;
        Ok(AlgebraicNumber { min_poly, embedding, source: Source::RootOfUnity { order, k } })
    }

    /// `j(τ)` for the root `τ` of `f`, with `min_poly` the class polynomial
    /// of its discriminant. The caller supplies the isolating box.
    pub(crate) fn from_cm_parts(f: QuadForm, min_poly: IntPoly, embedding: BigComplex) -> AlgebraicNumber {
        AlgebraicNumber { min_poly, embedding, source: Source::Cm(f) }
    }

    /// Validate a user-supplied polynomial and box: the polynomial must be
    /// irreducible and the box must hold exactly one of its roots.
    pub fn from_parts(poly: &IntPoly, embedding: &BigComplex) -> Result<AlgebraicNumber> {
        if poly.degree() == 0 {
            return Err(Error::Domain("minimal polynomial must have positive degree".into()));
        }
        let p = poly.primitive();
        let (factor, root) = minimal_factor(&p, embedding)?;
        if factor.degree() != p.degree() {
            return Err(Error::Domain(format!("{p} is reducible: {factor} divides it")));
        }
        Ok(AlgebraicNumber::generic(factor, root))
    }

    /// The root of `poly` inside `near`, with `poly` replaced by its
    /// irreducible factor vanishing there.
    pub fn from_poly_root(poly: &IntPoly, near: &BigComplex) -> Result<AlgebraicNumber> {
        if poly.degree() == 0 {
            return Err(Error::Domain("constant polynomial has no roots".into()));
        }
        let (factor, root) = minimal_factor(&poly.squarefree_part(), near)?;
        Ok(AlgebraicNumber::generic(factor, root))
    }

    fn generic(min_poly: IntPoly, root: BigComplex) -> AlgebraicNumber {
        if min_poly.degree() == 1 {
            let q = BigRational::new(-min_poly.coeff(0), min_poly.coeff(1));
            return AlgebraicNumber::from_rational(&q);
        }
        if let Some(order) = crate::cyclotomic::cyclotomic_index(&min_poly) {
            if let Some(k) = (1..=order).filter(|k| k.gcd(&order) == 1).find(|&k| {
                root_of_unity_ball(order, k, root.prec().max(64)).map(|z| z.overlaps(&root)).unwrap_or(false)
            }) {
                return AlgebraicNumber::root_of_unity(order, k).expect("coprime exponent");
            }
        }
        AlgebraicNumber { min_poly, embedding: root, source: Source::Generic }
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn embedding(&self) -> &BigComplex {
        &self.embedding
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.min_poly.coeff(0).is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.source {
            Source::Rational(q) => Some(q.clone()),
            _ => None,
        }
    }

    /// The number to within `2^-prec`.
    pub fn approx(&self, prec: u32) -> Result<BigComplex> {
        let goal = Mag::pow2(-(prec as i64));
        match &self.source {
            Source::Rational(q) => Ok(BigComplex::from_real(RealBall::from_rational(q, prec + 8))),
            Source::RootOfUnity { order, k } => root_of_unity_ball(*order, *k, prec + 8),
            Source::Cm(f) => j_of_form(f, prec.max(32) + 2),
            Source::Generic => {
                if self.embedding.error_radius() <= goal {
                    return Ok(self.embedding.clone());
                }
                let mut wp = prec + 16;
                for _ in 0..6 {
                    let hits: Vec<BigComplex> = isolate_roots(&self.min_poly, wp)?
                        .into_iter()
                        .filter(|z| z.overlaps(&self.embedding))
                        .collect();
                    if hits.len() == 1 && hits[0].error_radius() <= goal {
                        return Ok(hits.into_iter().next().unwrap());
                    }
                    if hits.is_empty() {
                        return Err(Error::Certificate("isolating box lost its root".into()));
                    }
                    wp *= 2;
                }
                Err(Error::Precision("could not separate the embedded root from its conjugates".into()))
            }
        }
    }

    /// All roots of the minimal polynomial (including this one), each to within `2^-prec`.
    pub fn conjugates(&self, prec: u32) -> Result<Vec<BigComplex>> {
        match &self.source {
            Source::Rational(_) => Ok(vec![self.approx(prec)?]),
            Source::RootOfUnity { order, .. } => (1..=*order)
                .filter(|k| k.gcd(order) == 1)
                .map(|k| root_of_unity_ball(*order, k, prec + 8))
                .collect(),
            _ => isolate_roots(&self.min_poly, prec),
        }
    }

    /// `self^k` for nonzero `self`, with its minimal polynomial computed from
    /// `lead^|k| · Π (X − α_i^|k|)` over all conjugates.
    pub fn pow(&self, k: i64) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return if k > 0 {
                Ok(self.clone())
            } else {
                Err(Error::Domain("zero has no nonpositive powers".into()))
            };
        }
        if k == 0 {
            return Ok(AlgebraicNumber::from_i64(1));
        }
        if let Source::Rational(q) = &self.source {
            let mut r = num_traits::pow(q.clone(), k.unsigned_abs() as usize);
            if k < 0 {
                r = r.recip();
            }
            return Ok(AlgebraicNumber::from_rational(&r));
        }
        if let Source::RootOfUnity { order, k: e } = &self.source {
            let order = *order as i128;
            let ek = (*e as i128 * k as i128).rem_euclid(order);
            let g = (ek as u64).gcd(&(order as u64));
            let new_order = order as u64 / g;
            return AlgebraicNumber::root_of_unity(new_order, ek as u64 / g);
        }
        let m = k.unsigned_abs();
        let d = self.degree();
        let lead = self.min_poly.lead();
        // coefficients of lead^m Π(X − α_i^m) are bounded by lead^m · 2^d · Π max(1,|α_i|)^m
        let size = (m as f64) * (log2_abs(&lead) + mahler_log2_upper(&self.min_poly)) + d as f64 + 64.0;
        let mut wp = size.ceil() as u32 + 64;
        for _ in 0..6 {
            let conj = isolate_roots(&self.min_poly, wp)?;
            let powers: Vec<BigComplex> = conj.iter().map(|z| z.pow(m)).collect();
            let mut prod = product_of_linears(&powers, wp);
            let lm = num_traits::pow(lead.clone(), m as usize);
            prod = prod.into_iter().map(|c| c.mul_int(&lm)).collect();
            if let Some(char_poly) = round_poly(&prod) {
                let sf = char_poly.squarefree_part();
                let min = if k < 0 { sf.reversed().primitive() } else { sf };
                let target = self.approx(wp)?.pow(m);
                let target = if k < 0 { target.inv()? } else { target };
                let roots = isolate_roots(&min, 64)?;
                let root = roots
                    .into_iter()
                    .filter(|z| z.overlaps(&target))
                    .collect::<Vec<_>>();
                if root.len() == 1 {
                    return Ok(AlgebraicNumber::generic(min, root.into_iter().next().unwrap()));
                }
                let r = AlgebraicNumber { min_poly: min, embedding: target, source: Source::Generic };
                return r.refine_generic();
            }
            wp *= 2;
        }
        Err(Error::Precision("power's characteristic polynomial did not round".into()))
    }

    fn refine_generic(self) -> Result<AlgebraicNumber> {
        let mut wp = 128;
        for _ in 0..8 {
            let hits: Vec<BigComplex> =
                isolate_roots(&self.min_poly, wp)?.into_iter().filter(|z| z.overlaps(&self.embedding)).collect();
            if hits.len() == 1 {
                return Ok(AlgebraicNumber::generic(self.min_poly, hits.into_iter().next().unwrap()));
            }
            wp *= 2;
        }
        Err(Error::Precision("could not isolate the target root".into()))
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &AlgebraicNumber) -> bool {
        self.min_poly == o.min_poly && self.embedding.overlaps(&o.embedding) && {
            // boxes hold exactly one root each; if they overlap and the
            // polynomials match, refine until the question is settled
            let mut p = 64;
            loop {
                match (self.approx(p), o.approx(p)) {
                    (Ok(a), Ok(b)) => {
                        if !a.overlaps(&b) {
                            break false;
                        }
                        let roots = match isolate_roots(&self.min_poly, p) {
                            Ok(r) => r,
                            Err(_) => break false,
                        };
                        if roots.iter().filter(|z| z.overlaps(&a) || z.overlaps(&b)).count() == 1 {
                            break true;
                        }
                    }
                    _ => break false,
                }
                p *= 2;
                if p > 1 << 14 {
                    break false;
                }
            }
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.embedding.to_f64_pair();
        write!(f, "AlgebraicNumber({} ≈ {re:e} + {im:e}i)", self.min_poly)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Rational(q) => write!(f, "{q}"),
            Source::RootOfUnity { order, k } => write!(f, "exp(2πi·{k}/{order})"),
            _ => {
                let (re, im) = self.embedding.to_f64_pair();
                write!(f, "root of {} near {re:.6e}{:+.6e}i", self.min_poly, im)
            }
        }
    }
}

/// `exp(2πi k / n)` as a ball of radius about `2^-prec`.
pub fn root_of_unity_ball(n: u64, k: u64, prec: u32) -> Result<BigComplex> {
    use crate::arith::elementary::{cos_sin, pi};
    let wp = prec + 16;
    let k = k % n;
    // exact values on the axes keep real and imaginary parts exact where they vanish
    if 4 * k % n == 0 {
        let one = || RealBall::one(wp);
        let zero = || RealBall::zero(wp);
        return Ok(match 4 * k / n {
            0 => BigComplex::new(one(), zero()),
            1 => BigComplex::new(zero(), one()),
            2 => BigComplex::new(-one(), zero()),
            _ => BigComplex::new(zero(), -one()),
        });
    }
    let theta = pi(wp).shl(1).mul_int(&BigInt::from(k)).div_u64(n);
    let (c, s) = cos_sin(&theta, wp)?;
    Ok(BigComplex::new(c, s))
}

/// Upper bound for `log2 Π max(1, |α_i|)` from the coefficient sizes
/// (Landau: `M(p) <= ||p||_2`), with the leading coefficient divided out.
pub(crate) fn mahler_log2_upper(p: &IntPoly) -> f64 {
    let l2: f64 = p.coeffs().iter().map(|c| 2f64.powf(2.0 * log2_abs(c) - 2.0 * log2_abs(&p.lead()))).sum();
    l2.log2() / 2.0 + 1.0
}

/// Coefficients of `Π (X − z_i)`, constant term first.
pub(crate) fn product_of_linears(zs: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let mut out = vec![BigComplex::one(prec)];
    for z in zs {
        let mut next = vec![BigComplex::zero(prec); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * z);
        }
        out = next;
    }
    out
}

/// Round a ball polynomial to integers; `None` if any coefficient is not
/// within 1/4 of a unique integer or has a nonzero imaginary part.
pub(crate) fn round_poly(cs: &[BigComplex]) -> Option<IntPoly> {
    let quarter = Mag::pow2(-2);
    let mut out = Vec::with_capacity(cs.len());
    for c in cs {
        let (n, r) = c.re.nearest_integer();
        let (m, s) = c.im.nearest_integer();
        if !(r < quarter) || !(s < quarter) || !m.is_zero() {
            return None;
        }
        out.push(n);
    }
    Some(IntPoly::new(out))
}

/// The irreducible factor of the squarefree polynomial `p` that vanishes
/// at the unique root inside `near`, plus that root's isolating box.
///
/// Tries subsets of roots containing the target in order of size; a subset
/// `S` is a factor when `lead(p) · Π_{S} (X − α)` rounds to an integer
/// polynomial whose primitive part divides `p` exactly.
fn minimal_factor(p: &IntPoly, near: &BigComplex) -> Result<(IntPoly, BigComplex)> {
    let n = p.degree();
    let size = log2_abs(&p.lead()) + mahler_log2_upper(p) + n as f64;
    let mut wp = (size.ceil() as u32 + 96).max(near.prec());
    for _ in 0..6 {
        let roots = isolate_roots(p, wp)?;
        let hits: Vec<usize> = (0..n).filter(|&i| roots[i].overlaps(near)).collect();
        if hits.is_empty() {
            return Err(Error::Domain("the box holds no root of the polynomial".into()));
        }
        if hits.len() > 1 {
            if near.error_radius() >= roots[hits[0]].error_radius().mul_u64(1 << 20) {
                return Err(Error::Domain("the box holds more than one root".into()));
            }
            wp *= 2;
            continue;
        }
        let t = hits[0];
        if n == 1 {
            return Ok((p.primitive(), roots[t].clone()));
        }
        let partner = conjugate_partners(&roots);
        let others: Vec<usize> = (0..n).filter(|&i| i != t).collect();
        let lead = p.lead();
        let mut tried = 0usize;
        for size in 0..n - 1 {
            let mut found = None;
            for_each_subset(others.len(), size, &mut |sel: &[usize]| {
                if found.is_some() {
                    return false;
                }
                tried += 1;
                if tried > SUBSET_BUDGET {
                    return false;
                }
                let mut set: Vec<usize> = sel.iter().map(|&j| others[j]).collect();
                set.push(t);
                // a real factor is closed under conjugation
                if set.iter().any(|&i| !set.contains(&partner[i])) {
                    return true;
                }
                let zs: Vec<BigComplex> = set.iter().map(|&i| roots[i].clone()).collect();
                let prod: Vec<BigComplex> = product_of_linears(&zs, wp).into_iter().map(|c| c.mul_int(&lead)).collect();
                if let Some(g) = round_poly(&prod) {
                    let g = g.primitive();
                    if g.degree() == set.len() && p.exact_div(&g).is_some() {
                        found = Some(g);
                        return false;
                    }
                }
                true
            });
            if tried > SUBSET_BUDGET {
                return Err(Error::Budget(format!("factor search over {n} roots exceeded {SUBSET_BUDGET} subsets")));
            }
            if let Some(g) = found {
                return Ok((g, roots[t].clone()));
            }
        }
        return Ok((p.primitive(), roots[t].clone()));
    }
    Err(Error::Precision("could not single out the root inside the box".into()))
}

/// For each root, the index of its complex conjugate (itself when real).
fn conjugate_partners(roots: &[BigComplex]) -> Vec<usize> {
    (0..roots.len())
        .map(|i| {
            if roots[i].im.mid().is_zero() && roots[i].im.rad().is_zero() {
                return i;
            }
            let c = roots[i].conj();
            (0..roots.len()).find(|&j| j != i && roots[j].overlaps(&c)).unwrap_or(i)
        })
        .collect()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it returns false.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return;
            }
        }
    }
}

/// Serialized form of an algebraic number: minimal polynomial plus the
/// box as decimal strings. Box centers are `mid · 2^-scale`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicRecord {
    pub min_poly: IntPoly,
    pub scale: u32,
    pub re_mid: String,
    pub im_mid: String,
    /// Upper bound on the box radius, as a decimal float string.
    pub radius: String,
}

impl AlgebraicNumber {
    pub fn to_record(&self) -> AlgebraicRecord {
        let e = self.embedding.with_prec(self.embedding.prec().min(512));
        AlgebraicRecord {
            min_poly: self.min_poly.clone(),
            scale: e.prec(),
            re_mid: e.re.mid().to_string(),
            im_mid: e.im.mid().to_string(),
            radius: format!("{:e}", e.error_radius().to_f64()),
        }
    }

    pub fn from_record(r: &AlgebraicRecord) -> Result<AlgebraicNumber> {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|e| Error::Domain(format!("bad integer {s:?}: {e}")));
        let rad: f64 = r.radius.parse().map_err(|e| Error::Domain(format!("bad radius {:?}: {e}", r.radius)))?;
        if !(rad >= 0.0) || !rad.is_finite() {
            return Err(Error::Domain("radius must be finite and nonnegative".into()));
        }
        let rad = Mag::from_f64(rad);
        let z = BigComplex::new(
            RealBall::new(parse(&r.re_mid)?, rad, r.scale),
            RealBall::new(parse(&r.im_mid)?, rad, r.scale),
        );
        AlgebraicNumber::from_parts(&r.min_poly, &z)
    }
}

/// Sign of a real algebraic number, or `None` when it is not real.
pub fn real_sign(a: &AlgebraicNumber) -> Result<Option<i32>> {
    if let Some(q) = a.as_rational() {
        return Ok(Some(if q.is_zero() { 0 } else if q.is_positive() { 1 } else { -1 }));
    }
    let z = a.approx(64)?;
    if !(z.im.mid().is_zero() && z.im.rad().is_zero()) {
        let roots = isolate_roots(a.min_poly(), 64)?;
        let r = roots.iter().find(|r| r.overlaps(&z));
        match r {
            Some(r) if r.im.mid().is_zero() && r.im.rad().is_zero() => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(if z.re.is_positive() { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rationals_and_roots_of_unity() {
        let a = AlgebraicNumber::from_rational(&BigRational::new(BigInt::from(-3), BigInt::from(4)));
        assert_eq!(a.min_poly(), &IntPoly::from_i64s(&[3, 4]));
        assert_eq!(a.pow(-2).unwrap().as_rational().unwrap(), BigRational::new(BigInt::from(16), BigInt::from(9)));
        let z = AlgebraicNumber::root_of_unity(12, 5).unwrap();
        assert_eq!(z.min_poly(), &cyclotomic_poly(12));
        assert_eq!(z.pow(3).unwrap().source(), &Source::RootOfUnity { order: 4, k: 1 });
        assert_eq!(z.pow(6).unwrap().as_rational().unwrap(), -BigRational::one());
        assert_eq!(z.pow(12).unwrap().as_rational().unwrap(), BigRational::one());
        assert!(AlgebraicNumber::root_of_unity(12, 4).is_err());
    }

    #[test]
    fn factor_search_finds_the_right_piece() {
        // (x^2 - 2)(x^2 + x + 1)(x - 3)
        let p = IntPoly::from_i64s(&[-2, 0, 1]).mul(&IntPoly::from_i64s(&[1, 1, 1])).mul(&IntPoly::from_i64s(&[-3, 1]));
        let a = AlgebraicNumber::from_poly_root(&p, &BigComplex::from_f64(1.414, 0.0, 64).add_error(Mag::pow2(-6)))
            .unwrap();
        assert_eq!(a.min_poly(), &IntPoly::from_i64s(&[-2, 0, 1]));
        let w = AlgebraicNumber::from_poly_root(&p, &BigComplex::from_f64(-0.5, 0.866, 64).add_error(Mag::pow2(-6)))
            .unwrap();
        assert_eq!(w.source(), &Source::RootOfUnity { order: 3, k: 1 });
        let t = AlgebraicNumber::from_poly_root(&p, &BigComplex::from_f64(3.0, 0.0, 64).add_error(Mag::pow2(-6)))
            .unwrap();
        assert_eq!(t.as_rational().unwrap(), BigRational::from_integer(BigInt::from(3)));
        assert!(AlgebraicNumber::from_parts(&p, &BigComplex::from_f64(3.0, 0.0, 64)).is_err());
    }

    #[test]
    fn powers_of_a_quadratic() {
        let phi = AlgebraicNumber::from_parts(&IntPoly::from_i64s(&[-1, -1, 1]), &BigComplex::from_f64(1.618, 0.0, 64).add_error(Mag::pow2(-6)))
            .unwrap();
        // φ^2 = φ + 1 has minimal polynomial x^2 − 3x + 1
        assert_eq!(phi.pow(2).unwrap().min_poly(), &IntPoly::from_i64s(&[1, -3, 1]));
        let inv = phi.pow(-1).unwrap();
        assert_eq!(inv.min_poly(), &IntPoly::from_i64s(&[-1, 1, 1]));
        assert!((inv.approx(64).unwrap().re.to_f64() - 0.618033988749895).abs() < 1e-14);
        let half = AlgebraicNumber::from_parts(&IntPoly::from_i64s(&[-1, 0, 2]), &BigComplex::from_f64(0.7, 0.0, 64).add_error(Mag::pow2(-4)))
            .unwrap();
        assert_eq!(half.pow(2).unwrap().as_rational().unwrap(), BigRational::new(BigInt::one(), BigInt::from(2)));
    }

    #[test]
    fn record_round_trip() {
        let phi = AlgebraicNumber::from_parts(&IntPoly::from_i64s(&[-1, -1, 1]), &BigComplex::from_f64(-0.6, 0.0, 64).add_error(Mag::pow2(-4)))
            .unwrap();
        let rec = phi.to_record();
        let back = AlgebraicNumber::from_record(&serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap())
            .unwrap();
        assert_eq!(back, phi);
        assert_eq!(real_sign(&back).unwrap(), Some(-1));
    }
}
