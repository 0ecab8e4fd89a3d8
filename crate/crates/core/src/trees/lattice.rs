//! Cosets in `PSL2(Z) \ PGL2+(Q)` and homothety classes of lattices in `Q_p^2`.
//!
//! A matrix stands for the lattice spanned by its rows; left multiplication
//! by `SL2(Z)` is a change of basis and scalars are homotheties.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;

pub type QMat = [[BigRational; 2]; 2];
pub type ZMat = [[BigInt; 2]; 2];

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qmat_from_ints(m: [[i64; 2]; 2]) -> QMat {
    [[q(m[0][0]), q(m[0][1])], [q(m[1][0]), q(m[1][1])]]
}

pub fn zmat_to_q(m: &ZMat) -> QMat {
    let f = |x: &BigInt| BigRational::from_integer(x.clone());
    [[f(&m[0][0]), f(&m[0][1])], [f(&m[1][0]), f(&m[1][1])]]
}

pub fn qmat_mul(x: &QMat, y: &QMat) -> QMat {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn qmat_det(x: &QMat) -> BigRational {
    &x[0][0] * &x[1][1] - &x[0][1] * &x[1][0]
}

pub fn qmat_inv(x: &QMat) -> Result<QMat> {
    let det = qmat_det(x);
    if det.is_zero() {
        return Err(Error::Domain("singular matrix".into()));
    }
    Ok([[&x[1][1] / &det, -&x[0][1] / &det], [-&x[1][0] / &det, &x[0][0] / &det]])
}

/// Scale a rational matrix to a primitive integer matrix (positive factor).
pub fn primitive_integer(x: &QMat) -> ZMat {
    let l = x.iter().flatten().fold(BigInt::one(), |l, e| l.lcm(e.denom()));
    let z: Vec<BigInt> = x.iter().flatten().map(|e| (e * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = z.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
    let g = if g.is_zero() { BigInt::one() } else { g };
    [[&z[0] / &g, &z[1] / &g], [&z[2] / &g, &z[3] / &g]]
}

/// `p`-adic valuation; `None` for zero.
pub fn val_p(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

fn val_p_rational(x: &BigRational, p: u64) -> Option<i64> {
    let n = val_p(x.numer(), p)?;
    Some(n as i64 - val_p(x.denom(), p).unwrap() as i64)
}

/// Row Hermite form `(a, b; 0, d)` with `a > 0`, `0 <= b < |d|`, reached by
/// left multiplication with `SL2(Z)`.
fn hermite_sl2(m: &ZMat) -> (BigInt, BigInt, BigInt) {
    let mut r1 = [m[0][0].clone(), m[0][1].clone()];
    let mut r2 = [m[1][0].clone(), m[1][1].clone()];
    while !r2[0].is_zero() {
        let k = r1[0].div_floor(&r2[0]);
        r1 = [&r1[0] - &k * &r2[0], &r1[1] - &k * &r2[1]];
        // (r1, r2) -> (r2, −r1) has determinant one
        let t = r1;
        r1 = r2;
        r2 = [-&t[0], -&t[1]];
    }
    if r1[0].is_negative() {
        r1 = [-&r1[0], -&r1[1]];
        r2 = [-&r2[0], -&r2[1]];
    }
    let d = r2[1].clone();
    let b = r1[1].mod_floor(&d.abs());
    (r1[0].clone(), b, d)
}

/// The coset `PSL2(Z) · g` of a rational matrix with positive determinant,
/// up to scaling, stored as its primitive Hermite form `(a, b; 0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GL2QElement {
    #[serde(with = "crate::serde_bigint")]
    a: BigInt,
    #[serde(with = "crate::serde_bigint")]
    b: BigInt,
    #[serde(with = "crate::serde_bigint")]
    d: BigInt,
}

impl GL2QElement {
    pub fn canonicalize(g: &QMat) -> Result<GL2QElement> {
        if !qmat_det(g).is_positive() {
            return Err(Error::Domain("matrix needs positive determinant".into()));
        }
        let (a, b, d) = hermite_sl2(&primitive_integer(g));
        Ok(GL2QElement { a, b, d })
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Result<GL2QElement> {
        GL2QElement::canonicalize(&qmat_from_ints(m))
    }

    pub fn identity() -> GL2QElement {
        GL2QElement { a: BigInt::one(), b: BigInt::zero(), d: BigInt::one() }
    }

    pub fn entries(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.d)
    }

    pub fn matrix(&self) -> QMat {
        let f = |x: &BigInt| BigRational::from_integer(x.clone());
        [[f(&self.a), f(&self.b)], [BigRational::zero(), f(&self.d)]]
    }

    /// Determinant `a·d` of the primitive form.
    pub fn det(&self) -> BigInt {
        &self.a * &self.d
    }

    /// Parse `"a,b;c,d"` with integer or `p/q` entries.
    pub fn parse(s: &str) -> Result<GL2QElement> {
        let bad = || Error::Domain(format!("expected a matrix like \"1,0;0,2\", got {s:?}"));
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut m: Vec<BigRational> = Vec::with_capacity(4);
        for r in rows {
            let es: Vec<&str> = r.split(',').map(str::trim).collect();
            if es.len() != 2 {
                return Err(bad());
            }
            for e in es {
                m.push(e.parse::<BigRational>().map_err(|_| bad())?);
            }
        }
        let [a, b, c, d]: [BigRational; 4] = m.try_into().map_err(|_| bad())?;
        GL2QElement::canonicalize(&[[a, b], [c, d]])
    }
}

impl fmt::Display for GL2QElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};0,{})", self.a, self.b, self.d)
    }
}

/// A homothety class of `Z_p`-lattices in `Q_p^2`, stored as the local
/// Hermite form `(p^alpha, beta; 0, p^delta)` with `0 <= beta < p^delta`
/// and no common factor of `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass {
    p: u64,
    alpha: u32,
    #[serde(with = "crate::serde_bigint")]
    beta: BigInt,
    delta: u32,
}

fn pow_p(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn check_prime(p: u64) -> Result<()> {
    if crate::nt::is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

impl LatticeClass {
    /// The class of `Z_p^2`.
    pub fn base(p: u64) -> Result<LatticeClass> {
        check_prime(p)?;
        Ok(LatticeClass { p, alpha: 0, beta: BigInt::zero(), delta: 0 })
    }

    /// Class of the row lattice of an invertible rational matrix.
    pub fn of_matrix(p: u64, m: &QMat) -> Result<LatticeClass> {
        check_prime(p)?;
        if qmat_det(m).is_zero() {
            return Err(Error::Domain("singular matrix".into()));
        }
        let (a, b, d) = hermite_sl2(&primitive_integer(m));
        let d = d.abs();
        let alpha = val_p(&a, p).unwrap();
        let delta = val_p(&d, p).unwrap();
        let a_unit = &a / pow_p(p, alpha);
        let modulus = pow_p(p, delta);
        let inv = mod_inverse(&a_unit, &modulus);
        let beta = (&b * inv).mod_floor(&modulus);
        let m = [Some(alpha), Some(delta), val_p(&beta, p)].into_iter().flatten().min().unwrap();
        let beta = &beta / pow_p(p, m);
        Ok(LatticeClass { p, alpha: alpha - m, beta, delta: delta - m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn matrix(&self) -> ZMat {
        [[pow_p(self.p, self.alpha), self.beta.clone()], [BigInt::zero(), pow_p(self.p, self.delta)]]
    }

    pub fn is_base(&self) -> bool {
        self.alpha == 0 && self.delta == 0
    }

    /// `s − r` for the elementary divisors `p^r | p^s` relating the two lattices.
    pub fn distance(&self, other: &LatticeClass) -> Result<u32> {
        if self.p != other.p {
            return Err(Error::Domain(format!("nodes of T_{} and T_{}", self.p, other.p)));
        }
        let rel = qmat_mul(&zmat_to_q(&other.matrix()), &qmat_inv(&zmat_to_q(&self.matrix()))?);
        let vdet = val_p_rational(&qmat_det(&rel), self.p).unwrap();
        let vmin = rel.iter().flatten().filter_map(|e| val_p_rational(e, self.p)).min().unwrap();
        Ok((vdet - 2 * vmin) as u32)
    }

    /// The `p + 1` adjacent classes: index `k < p` is `(1, k; 0, p)·L`,
    /// whose reduction is the line through `(1, k)`, and index `p` is
    /// `(p, 0; 0, 1)·L`, the line through `(0, 1)`.
    pub fn neighbors(&self) -> Vec<LatticeClass> {
        let p = self.p;
        let base = zmat_to_q(&self.matrix());
        let mut out = Vec::with_capacity(p as usize + 1);
        for k in 0..p as i64 {
            let step = qmat_from_ints([[1, k], [0, p as i64]]);
            out.push(LatticeClass::of_matrix(p, &qmat_mul(&step, &base)).unwrap());
        }
        let step = qmat_from_ints([[p as i64, 0], [0, 1]]);
        out.push(LatticeClass::of_matrix(p, &qmat_mul(&step, &base)).unwrap());
        out
    }

    pub fn is_adjacent(&self, other: &LatticeClass) -> bool {
        self.distance(other).map(|d| d == 1).unwrap_or(false)
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}^{},{};0,{}^{}]", self.p, self.alpha, self.beta, self.p, self.delta)
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Image of a coset in `T_p`.
pub fn local_class(g: &GL2QElement, p: u64) -> Result<LatticeClass> {
    LatticeClass::of_matrix(p, &g.matrix())
}

pub fn tree_distance(u: &LatticeClass, v: &LatticeClass) -> Result<u32> {
    u.distance(v)
}

/// Distance by breadth-first search from both ends, or `None` beyond `max_depth`.
pub fn bfs_distance(u: &LatticeClass, v: &LatticeClass, max_depth: u32) -> Result<Option<u32>> {
    if u.p != v.p {
        return Err(Error::Domain("nodes of different trees".into()));
    }
    let ball = |start: &LatticeClass, radius: u32| -> HashMap<LatticeClass, u32> {
        let mut seen = HashMap::from([(start.clone(), 0u32)]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            let dx = seen[&x];
            if dx == radius {
                continue;
            }
            for y in x.neighbors() {
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), dx + 1);
                    queue.push_back(y);
                }
            }
        }
        seen
    };
    let from_u = ball(u, max_depth.div_ceil(2));
    let from_v = ball(v, max_depth / 2);
    Ok(from_u.iter().filter_map(|(x, du)| from_v.get(x).map(|dv| du + dv)).min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: [[i64; 2]; 2]) -> GL2QElement {
        GL2QElement::from_ints(m).unwrap()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(g([[1, 0], [0, 1]]), GL2QElement::identity());
        assert_eq!(g([[2, 0], [0, 2]]), GL2QElement::identity());
        assert_eq!(g([[0, -1], [1, 0]]), GL2QElement::identity());
        assert_eq!(g([[3, 5], [1, 2]]), GL2QElement::identity());
        assert_eq!(g([[1, 7], [0, 2]]), g([[1, 1], [0, 2]]));
        assert_ne!(g([[1, 0], [0, 2]]), g([[2, 0], [0, 1]]));
        assert!(GL2QElement::from_ints([[0, 1], [1, 0]]).is_err());
        assert_eq!(GL2QElement::parse("1/2,0;0,1").unwrap(), g([[1, 0], [0, 2]]));
        assert_eq!(g([[1, 0], [0, 2]]).to_string(), "(1,0;0,2)");
    }

    #[test]
    fn local_images() {
        let b2 = LatticeClass::base(2).unwrap();
        assert_eq!(local_class(&GL2QElement::identity(), 5).unwrap(), LatticeClass::base(5).unwrap());
        let h = g([[1, 0], [0, 2]]);
        assert_eq!(local_class(&h, 2).unwrap().distance(&b2).unwrap(), 1);
        assert!(local_class(&h, 3).unwrap().is_base());
        for p in [2u64, 3, 5] {
            let base = LatticeClass::base(p).unwrap();
            let p2 = local_class(&g([[1, 0], [0, (p * p) as i64]]), p).unwrap();
            assert_eq!(base.distance(&p2).unwrap(), 2);
            assert_eq!(bfs_distance(&base, &p2, 6).unwrap(), Some(2));
        }
        assert!(LatticeClass::base(4).is_err());
        assert!(b2.distance(&LatticeClass::base(3).unwrap()).is_err());
    }

    #[test]
    fn neighbors_are_distinct_and_symmetric() {
        for p in [2u64, 3, 5, 7] {
            let base = LatticeClass::base(p).unwrap();
            let ns = base.neighbors();
            assert_eq!(ns.len() as u64, p + 1);
            let set: std::collections::HashSet<_> = ns.iter().collect();
            assert_eq!(set.len(), ns.len());
            for n in &ns {
                assert_eq!(base.distance(n).unwrap(), 1);
                assert!(n.neighbors().contains(&base));
            }
        }
    }
}
