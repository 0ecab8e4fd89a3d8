//! Integer lattices: kernels of integer matrices, LLL reduction and
//! Fincke–Pohst enumeration, all in exact arithmetic.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A basis of `{ x ∈ Z^n : M x = 0 }` for the `m × n` matrix `rows`.
///
/// Column operations bring `M` to echelon form while tracking a unimodular
/// transform; the transform columns that map to zero span the kernel.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // columns of the augmented matrix [M; I]
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            c.extend((0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut pivot_col = 0;
    for r in 0..m {
        if pivot_col == n {
            break;
        }
        // gcd-reduce the entries of row r among columns pivot_col..n
        loop {
            let nz: Vec<usize> = (pivot_col..n).filter(|&j| !cols[j][r].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(pivot_col, j);
                    pivot_col += 1;
                }
                break;
            }
            let best = *nz.iter().min_by_key(|&&j| cols[j][r].abs()).unwrap();
            for &j in &nz {
                if j == best {
                    continue;
                }
                let q = cols[j][r].div_floor(&cols[best][r]);
                let (a, b) = if j < best {
                    let (x, y) = cols.split_at_mut(best);
                    (&mut x[j], &y[0])
                } else {
                    let (x, y) = cols.split_at_mut(j);
                    (&mut y[0], &x[best])
                };
                for (u, v) in a.iter_mut().zip(b.iter()) {
                    *u -= &q * v;
                }
            }
        }
    }
    cols[pivot_col..].iter().map(|c| c[m..].to_vec()).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

struct GramSchmidt {
    mu: Vec<Vec<BigRational>>,
    norms: Vec<BigRational>,
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> GramSchmidt {
    let k = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norms = Vec::with_capacity(k);
    for i in 0..k {
        let bi = to_rat(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            if norms[j] == BigRational::zero() {
                continue;
            }
            mu[i][j] = dot(&bi, &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

/// LLL-reduce linearly independent rows with `δ = 99/100`.
pub fn lll(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b = basis.to_vec();
    let k = b.len();
    if k <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut gs = gram_schmidt(&b);
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            if gs.mu[i][j].abs() > half {
                let q = gs.mu[i][j].round().to_integer();
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                gs = gram_schmidt(&b);
            }
        }
        let lhs = &gs.norms[i] + &gs.mu[i][i - 1] * &gs.mu[i][i - 1] * &gs.norms[i - 1];
        if lhs >= &delta * &gs.norms[i - 1] {
            i += 1;
        } else {
            b.swap(i, i - 1);
            gs = gram_schmidt(&b);
            i = i.max(2) - 1;
        }
    }
    b
}

fn isqrt_ceil_f64(t: &BigRational) -> i64 {
    let f = t.to_f64().unwrap_or(f64::MAX);
    if !f.is_finite() || f > 1e30 {
        return i64::MAX / 4;
    }
    f.sqrt().ceil() as i64 + 1
}

/// All nonzero coefficient vectors `x` (up to global sign, first nonzero
/// entry positive) with `|Σ x_i b_i|^2 <= r2`, for linearly independent rows `b`.
///
/// Returns a budget error after `limit` candidates.
pub fn short_vectors(b: &[Vec<BigInt>], r2: &BigInt, limit: usize) -> Result<Vec<Vec<BigInt>>> {
    let k = b.len();
    let gs = gram_schmidt(b);
    if gs.norms.iter().any(|n| n.is_zero()) {
        return Err(Error::Domain("short-vector enumeration needs independent rows".into()));
    }
    let r2 = BigRational::from_integer(r2.clone());
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); k];
    let mut visited = 0usize;
    enumerate(&gs, k, &r2, BigRational::zero(), &mut x, &mut out, &mut visited, limit)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    gs: &GramSchmidt,
    level: usize,
    r2: &BigRational,
    partial: BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    visited: &mut usize,
    limit: usize,
) -> Result<()> {
    if level == 0 {
        if x.iter().any(|v| !v.is_zero()) {
            let first = x.iter().find(|v| !v.is_zero()).unwrap();
            if first.is_positive() {
                out.push(x.clone());
            }
        }
        return Ok(());
    }
    *visited += 1;
    if *visited > limit {
        return Err(Error::Budget(format!("lattice enumeration exceeded {limit} nodes")));
    }
    let i = level - 1;
    let k = x.len();
    let c: BigRational = -(i + 1..k).map(|j| &gs.mu[j][i] * BigRational::from_integer(x[j].clone())).sum::<BigRational>();
    let t = (r2 - &partial) / &gs.norms[i];
    if t.is_negative() {
        return Ok(());
    }
    let s = isqrt_ceil_f64(&t);
    let base = c.floor().to_integer();
    for off in -s..=s + 1 {
        let xi = &base + BigInt::from(off);
        let d = BigRational::from_integer(xi.clone()) - &c;
        let dd = &d * &d;
        if dd > t {
            continue;
        }
        x[i] = xi;
        let next = &partial + &dd * &gs.norms[i];
        enumerate(gs, i, r2, next, x, out, visited, limit)?;
    }
    x[i] = BigInt::zero();
    Ok(())
}

/// `Σ x_i b_i`.
pub fn combine(x: &[BigInt], b: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = b.first().map_or(0, |r| r.len());
    let mut v = vec![BigInt::zero(); n];
    for (c, row) in x.iter().zip(b) {
        for (a, r) in v.iter_mut().zip(row) {
            *a += c * r;
        }
    }
    v
}

/// Divide by the content and make the first nonzero entry positive.
pub fn normalize(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if v.iter().find(|x| !x.is_zero()).unwrap().is_negative() { -1 } else { 1 };
    v.iter().map(|x| x / &g * sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_exponent_matrix() {
        // columns: -2^15, -2^15 3^3, 2^6 3^3 ; rows: primes 2, 3
        let m = vec![bi(&[15, 15, 6]), bi(&[0, 3, 3])];
        let k = integer_kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(normalize(&k[0]), bi(&[3, -5, 5]));
        let k = integer_kernel(&[bi(&[1, 0]), bi(&[0, 1])], 2);
        assert!(k.is_empty());
    }

    #[test]
    fn lll_and_enumeration() {
        let b = vec![bi(&[1, 0, 1000]), bi(&[0, 1, 1001])];
        let r = lll(&b);
        let short = short_vectors(&r, &BigInt::from(3), 1000).unwrap();
        let vecs: Vec<Vec<BigInt>> = short.iter().map(|x| combine(x, &r)).collect();
        assert!(vecs.iter().any(|v| v == &bi(&[1, -1, -1]) || v == &bi(&[-1, 1, 1])));
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(entries in proptest::collection::vec(-20i64..20, 8)) {
            let m = vec![bi(&entries[0..4]), bi(&entries[4..8])];
            let k = integer_kernel(&m, 4);
            prop_assert!(k.len() >= 2);
            for v in &k {
                for row in &m {
                    let s: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}
