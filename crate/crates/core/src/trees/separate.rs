//! Finding `z` with `j(g_i z) = 0` for exactly one of finitely many cosets.
//!
//! Points are `z = g_s^{-1} γ ζ` with `ζ = e^{2πi/3}` and `γ ∈ SL2(Z)`.
//! `j(M ζ) = 0` exactly when the row lattice of `M` (in the basis `(ζ, 1)`)
//! is stable under multiplication by `ζ`, which acts on row vectors as
//! `(x, y) ↦ (y − x, −x)`. Locally at `p` the stable classes near `Z_p^2`
//! are the eigenlines of that map modulo `p`.

use super::lattice::{
    mod_inverse, primitive_integer, qmat_inv, qmat_mul, val_p, zmat_to_q, GL2QElement, LatticeClass, QMat, ZMat,
};
use crate::arith::{BigComplex, Mag, RealBall};
use crate::error::{Error, Result};
use crate::modfun::algebraic::root_of_unity_ball;
use crate::modfun::j_eval;
use crate::nt::{factor_bigint, is_prime_u64};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Neighbor indices of the base node of `T_p` (numbered as in
/// [`LatticeClass::neighbors`]) whose lattices are stable under `ζ`:
/// the lines `(1, k)` with `k^2 − k + 1 ≡ 0 (mod p)`.
pub fn bad_directions(p: u64) -> Result<Vec<usize>> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok((0..p).filter(|&k| (k * k + 1 + p - k % p) % p == 0).map(|k| k as usize).collect())
}

fn reduce_form(mut a: BigInt, mut b: BigInt, mut c: BigInt) -> (BigInt, BigInt, BigInt) {
    loop {
        // b into (−a, a]
        let two_a = &a * 2;
        let k = (&b + &a - BigInt::one()).div_floor(&two_a);
        if !k.is_zero() {
            let nb = &b - &k * &two_a;
            c = &c - &k * &b + &k * &k * &a;
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b.is_negative() {
            b = -b;
        }
        return (a, b, c);
    }
}

/// Reduced primitive form whose upper-half-plane root is `SL2(Z)`-equivalent
/// to `M ζ`: that point is a root of `f(d x − b y, −c x + a y)` with
/// `f = x^2 + xy + y^2`.
fn point_form(m: &QMat) -> Result<(BigInt, BigInt, BigInt)> {
    let z = primitive_integer(m);
    let [[a, b], [c, d]] = &z;
    if (a * d - b * c).is_zero() {
        return Err(Error::Domain("singular matrix".into()));
    }
    let fa = d * d - c * d + c * c;
    let fb = a * d + b * c - 2 * b * d - 2 * a * c;
    let fc = b * b - a * b + a * a;
    let g = fa.gcd(&fb).gcd(&fc);
    Ok(reduce_form(&fa / &g, &fb / &g, &fc / &g))
}

/// Exactly decide `j(M ζ) = 0` for a rational `M` with positive determinant:
/// `j` vanishes iff the reduced form of the point is `(1, 1, 1)`.
pub fn j_vanishes_at(m: &QMat) -> Result<bool> {
    Ok(point_form(m)? == (BigInt::one(), BigInt::one(), BigInt::one()))
}

/// `j(g γ ζ) = 0`, decided exactly.
pub fn exact_j_zero_test(g: &GL2QElement, gamma: &ZMat) -> Result<bool> {
    j_vanishes_at(&qmat_mul(&g.matrix(), &zmat_to_q(gamma)))
}

/// Numeric counterpart: `|j(M ζ)| < 2^-64`, with `j` evaluated to 128 bits at
/// the root of the reduced form (a point of the fundamental domain).
pub fn j_vanishes_numerically(m: &QMat) -> Result<bool> {
    let (a, b, c) = point_form(m)?;
    let disc: BigInt = &b * &b - 4 * &a * &c;
    // |j| grows like exp(2π Im τ) with Im τ = √|D| / 2a
    let im = ((-&disc).to_f64().unwrap_or(f64::MAX)).sqrt() / (2.0 * a.to_f64().unwrap_or(1.0));
    if im > 8.0 {
        // for Im τ >= 1, |j − 1/q − 744| < 1000, so |j| > e^{16π} − 2000
        return Ok(false);
    }
    let wp = 256 + (2.0 * std::f64::consts::PI * im / std::f64::consts::LN_2).ceil() as u32;
    let two_a = RealBall::from_int(&(&a * 2), wp);
    let re = RealBall::from_int(&-&b, wp).div(&two_a)?;
    let im = RealBall::from_int(&-disc, wp).sqrt()?.div(&two_a)?;
    let j = j_eval(&BigComplex::new(re, im), 128)?;
    Ok(j.abs_upper() < Mag::pow2(-64))
}

/// A point `z = g_s^{-1} γ ζ` with `j(g_i z) = 0` exactly for `i = survivor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub elements: Vec<GL2QElement>,
    #[serde(with = "zmat_serde")]
    pub gamma: ZMat,
    pub survivor: usize,
    /// primes whose trees were used, in the order they refined the set
    pub primes: Vec<u64>,
    pub z_description: String,
    pub per_index: Vec<bool>,
}

mod zmat_serde {
    use super::ZMat;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &ZMat, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ZMat, D::Error> {
        let v: [[String; 2]; 2] = Deserialize::deserialize(d)?;
        let p = |s: &String| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        Ok([[p(&v[0][0])?, p(&v[0][1])?], [p(&v[1][0])?, p(&v[1][1])?]])
    }
}

impl SeparationWitness {
    /// Re-run the exact test for every element.
    pub fn verify(&self) -> Result<bool> {
        if !is_sl2z(&self.gamma) || self.survivor >= self.elements.len() {
            return Ok(false);
        }
        let per = per_index(&self.elements, self.survivor, &self.gamma)?;
        Ok(per == self.per_index && per.iter().filter(|&&b| b).count() == 1 && per[self.survivor])
    }
}

fn is_sl2z(m: &ZMat) -> bool {
    (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_one()
}

/// `g_i g_s^{-1}` for every `i`.
fn translated(gs: &[GL2QElement], s: usize) -> Result<Vec<QMat>> {
    let inv = qmat_inv(&gs[s].matrix())?;
    Ok(gs.iter().map(|g| qmat_mul(&g.matrix(), &inv)).collect())
}

fn per_index(gs: &[GL2QElement], s: usize, gamma: &ZMat) -> Result<Vec<bool>> {
    translated(gs, s)?.iter().map(|h| j_vanishes_at(&qmat_mul(h, &zmat_to_q(gamma)))).collect()
}

/// Reduction mod `p` of the first step from `Z_p^2` toward the class of
/// `m`, as a row vector `(1, k)` or `(0, 1)`; `None` if the class is the base.
fn first_step_line(m: &QMat, p: u64) -> Option<(u64, u64)> {
    let pb = BigInt::from(p);
    // scale to p-integral and p-primitive
    let vmin = m
        .iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .map(|e| val_p(e.numer(), p).unwrap() as i64 - val_p(e.denom(), p).unwrap() as i64)
        .min()?;
    let scale = if vmin >= 0 {
        BigRational::new(BigInt::one(), num_traits::pow(pb.clone(), vmin as usize))
    } else {
        BigRational::from_integer(num_traits::pow(pb.clone(), (-vmin) as usize))
    };
    let red = |e: &BigRational| -> u64 {
        let e = e * &scale;
        let r = (e.numer() * mod_inverse(&e.denom().mod_floor(&pb), &pb)).mod_floor(&pb);
        r.to_u64().unwrap()
    };
    let rows: Vec<(u64, u64)> = m.iter().map(|r| (red(&r[0]), red(&r[1]))).collect();
    let det = (rows[0].0 * rows[1].1 + p * p - (rows[0].1 * rows[1].0) % p) % p;
    if det != 0 {
        return None;
    }
    let (x, y) = *rows.iter().find(|&&(x, y)| x != 0 || y != 0)?;
    Some(if x != 0 {
        let xi = mod_inverse(&BigInt::from(x), &pb).to_u64().unwrap();
        (1, y * xi % p)
    } else {
        (0, 1)
    })
}

/// `γ_p ∈ SL2(F_p)` with `v γ_p = (1, 0)`; the line through `(1, 0)` is
/// never an eigenline of `ζ`.
fn local_gamma(v: (u64, u64), p: u64) -> [[u64; 2]; 2] {
    let pb = BigInt::from(p);
    let inv = |x: u64| mod_inverse(&BigInt::from(x), &pb).to_u64().unwrap();
    let (x, y) = v;
    // M = (x y; s t) with det 1, γ = M^{-1} = (t −y; −s x)
    let (s, t) = if x != 0 { (0, inv(x)) } else { ((p - inv(y)) % p, 0) };
    [[t, (p - y) % p], [(p - s) % p, x]]
}

/// Lift a matrix of determinant `1 mod n` to `SL2(Z)` with the same residues.
pub fn lift_sl2(m: &ZMat, n: &BigInt) -> Result<ZMat> {
    let r = |x: &BigInt| x.mod_floor(n);
    let (a, b) = (r(&m[0][0]), r(&m[0][1]));
    let mut c = r(&m[1][0]);
    if c.is_zero() {
        c = n.clone();
    }
    let d0 = r(&m[1][1]);
    let mut d = d0.clone();
    let mut t = 0u32;
    while !c.gcd(&d).is_one() {
        t += 1;
        if t > 100_000 {
            return Err(Error::Budget("no coprime lift found".into()));
        }
        d = &d0 + n * t;
    }
    // a0 d − b0 c = 1
    let e = d.extended_gcd(&c);
    let (a0, b0) = (e.x, -e.y);
    let (u, v) = {
        let f = c.extended_gcd(&d);
        (f.x, f.y)
    };
    let k = (&u * (&a - &a0) + &v * (&b - &b0)).mod_floor(n);
    let out = [[&a0 + &k * &c, &b0 + &k * &d], [c, d]];
    debug_assert!(is_sl2z(&out));
    Ok(out)
}

fn prime_factors(x: &BigInt, into: &mut BTreeSet<u64>) -> Result<()> {
    let f = factor_bigint(&x.abs(), 1_000_000)
        .ok_or_else(|| Error::Budget(format!("could not factor determinant {x}")))?;
    for (p, _) in f {
        into.insert(p.to_u64().ok_or_else(|| Error::Budget("prime factor too large".into()))?);
    }
    Ok(())
}

/// Find a witness for pairwise distinct cosets.
///
/// For `p = 2, 3, 5, …` among the primes dividing the determinants, the
/// images of the remaining set in `T_p` are compared; an endpoint of a
/// longest path (smallest in canonical order) is kept together with the
/// elements mapping to it, and the rest leave through one neighbor of that
/// endpoint. Once one element `g_s` is left, translating by `g_s^{-1}` puts
/// every kept endpoint at the base node, and `γ` is chosen by the Chinese
/// remainder theorem so that each recorded neighbor becomes a direction in
/// which no lattice is stable under `ζ`.
pub fn separate(gs: &[GL2QElement]) -> Result<SeparationWitness> {
    if gs.is_empty() {
        return Err(Error::Domain("need at least one element".into()));
    }
    for i in 0..gs.len() {
        for k in 0..i {
            if gs[i] == gs[k] {
                return Err(Error::Domain(format!("elements {k} and {i} are the same coset {}", gs[i])));
            }
        }
    }
    let mut primes = BTreeSet::new();
    for g in gs {
        prime_factors(&g.det(), &mut primes)?;
    }
    let mut alive: Vec<usize> = (0..gs.len()).collect();
    // (prime, a representative of the elements dropped there)
    let mut steps: Vec<(u64, Vec<usize>)> = Vec::new();
    for &p in &primes {
        if alive.len() == 1 {
            break;
        }
        let images: Vec<LatticeClass> = alive.iter().map(|&i| super::local_class(&gs[i], p)).collect::<Result<_>>()?;
        let mut distinct: Vec<&LatticeClass> = images.iter().collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == 1 {
            continue;
        }
        let mut best = 0;
        let mut ends: Vec<&LatticeClass> = Vec::new();
        for (x, u) in distinct.iter().enumerate() {
            for v in &distinct[..x] {
                let d = u.distance(v)?;
                if d > best {
                    best = d;
                    ends.clear();
                }
                if d == best {
                    ends.push(u);
                    ends.push(v);
                }
            }
        }
        let u = (*ends.iter().min().unwrap()).clone();
        let kept: Vec<usize> = alive.iter().zip(&images).filter(|(_, img)| **img == u).map(|(i, _)| *i).collect();
        let dropped: Vec<usize> = alive.iter().copied().filter(|i| !kept.contains(i)).collect();
        steps.push((p, dropped));
        alive = kept;
    }
    if alive.len() != 1 {
        return Err(Error::Domain("elements could not be separated; are the cosets distinct?".into()));
    }
    let s = alive[0];
    let hs = translated(gs, s)?;
    let mut n = BigInt::one();
    let mut gamma: ZMat = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    for (p, dropped) in &steps {
        let mut line = None;
        for &i in dropped {
            let l = first_step_line(&hs[i], *p)
                .ok_or_else(|| Error::Certificate(format!("dropped element {i} sits on the kept node at {p}")))?;
            if line.is_some_and(|x| x != l) {
                return Err(Error::Certificate(format!("dropped elements leave in different directions at {p}")));
            }
            line = Some(l);
        }
        let local = local_gamma(line.unwrap(), *p);
        // combine γ ≡ current (mod n) and γ ≡ local (mod p)
        let pb = BigInt::from(*p);
        let inv = mod_inverse(&n.mod_floor(&pb), &pb);
        for r in 0..2 {
            for c in 0..2 {
                let cur = gamma[r][c].mod_floor(&n);
                let t = ((BigInt::from(local[r][c]) - &cur) * &inv).mod_floor(&pb);
                gamma[r][c] = cur + &n * t;
            }
        }
        n *= pb;
    }
    if !steps.is_empty() {
        gamma = lift_sl2(&gamma, &n)?;
    }
    let per = per_index(gs, s, &gamma)?;
    if per.iter().filter(|&&b| b).count() != 1 || !per[s] {
        return Err(Error::Certificate(format!("constructed γ does not separate: {per:?}")));
    }
    Ok(SeparationWitness {
        elements: gs.to_vec(),
        z_description: format!(
            "z = g^-1 γ ζ with g = {}, γ = ({},{};{},{}), ζ = exp(2πi/3)",
            gs[s], gamma[0][0], gamma[0][1], gamma[1][0], gamma[1][1]
        ),
        gamma,
        survivor: s,
        primes: steps.iter().map(|(p, _)| *p).collect(),
        per_index: per,
    })
}

/// `z` of a witness as a ball.
pub fn witness_point(w: &SeparationWitness, prec: u32) -> Result<BigComplex> {
    let m = qmat_mul(&qmat_inv(&w.elements[w.survivor].matrix())?, &zmat_to_q(&w.gamma));
    let z = primitive_integer(&m);
    let zeta = root_of_unity_ball(3, 1, prec + 64)?;
    let c = |x: &BigInt| BigComplex::from_int(x, prec + 64);
    (&(&zeta * &c(&z[0][0])) + &c(&z[0][1])).div(&(&(&zeta * &c(&z[1][0])) + &c(&z[1][1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: [[i64; 2]; 2]) -> GL2QElement {
        GL2QElement::from_ints(m).unwrap()
    }

    fn id() -> ZMat {
        [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]]
    }

    #[test]
    fn bad_direction_counts() {
        assert!(bad_directions(2).unwrap().is_empty());
        assert_eq!(bad_directions(3).unwrap(), vec![2]);
        assert_eq!(bad_directions(7).unwrap(), vec![3, 5]);
        assert!(bad_directions(5).unwrap().is_empty());
        assert_eq!(bad_directions(13).unwrap().len(), 2);
        assert!(bad_directions(9).is_err());
        // the bad neighbors are exactly those with j = 0
        for p in [2u64, 3, 5, 7, 11, 13] {
            let base = LatticeClass::base(p).unwrap();
            let bad = bad_directions(p).unwrap();
            for (k, n) in base.neighbors().iter().enumerate() {
                let m = zmat_to_q(&n.matrix());
                assert_eq!(j_vanishes_at(&m).unwrap(), bad.contains(&k), "p = {p}, k = {k}");
            }
        }
    }

    #[test]
    fn exact_zero_examples() {
        assert!(exact_j_zero_test(&GL2QElement::identity(), &id()).unwrap());
        assert!(exact_j_zero_test(&g([[1, 1], [0, 1]]), &id()).unwrap());
        assert!(!exact_j_zero_test(&g([[1, 0], [0, 2]]), &id()).unwrap());
        assert!(!j_vanishes_numerically(&g([[1, 0], [0, 2]]).matrix()).unwrap());
        assert!(j_vanishes_numerically(&g([[1, 1], [0, 1]]).matrix()).unwrap());
        // j(ζ/2) = 54000
        let z = qmat_mul(&g([[1, 0], [0, 2]]).matrix(), &zmat_to_q(&id()));
        let zz = primitive_integer(&z);
        let wp = 200;
        let zeta = root_of_unity_ball(3, 1, wp).unwrap();
        let pt = (&(&zeta * &BigComplex::from_int(&zz[0][0], wp)) + &BigComplex::from_int(&zz[0][1], wp))
            .div(&BigComplex::from_int(&zz[1][1], wp))
            .unwrap();
        let j = j_eval(&pt, 64).unwrap();
        assert!((&j - &BigComplex::from_int(&BigInt::from(54000), 64)).abs_upper() < Mag::pow2(-40));
    }

    #[test]
    fn lifting() {
        let n = BigInt::from(30);
        let m: ZMat = [[BigInt::from(7), BigInt::from(4)], [BigInt::from(0), BigInt::from(13)]];
        // 7·13 = 91 ≡ 1 mod 30
        let l = lift_sl2(&m, &n).unwrap();
        assert!(is_sl2z(&l));
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(l[r][c].mod_floor(&n), m[r][c].mod_floor(&n));
            }
        }
    }

    #[test]
    fn separation_examples() {
        let w = separate(&[GL2QElement::identity()]).unwrap();
        assert_eq!(w.gamma, id());
        assert_eq!(w.per_index, vec![true]);
        let w = separate(&[GL2QElement::identity(), g([[1, 0], [0, 2]])]).unwrap();
        assert_eq!(w.per_index.iter().filter(|&&b| b).count(), 1);
        assert!(w.verify().unwrap());
        let set = vec![
            g([[1, 0], [0, 2]]),
            g([[2, 0], [0, 1]]),
            g([[1, 1], [0, 2]]),
            g([[1, 0], [0, 3]]),
            g([[1, 2], [0, 3]]),
            g([[5, 1], [0, 4]]),
        ];
        let w = separate(&set).unwrap();
        assert!(w.verify().unwrap());
        let json = serde_json::to_string(&w).unwrap();
        let back: SeparationWitness = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        assert!(separate(&[g([[1, 0], [0, 2]]), g([[2, 0], [0, 4]])]).is_err());
    }
}
