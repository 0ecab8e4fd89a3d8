//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// The nonzero class-number-one singular moduli, written out by hand.
pub const RATIONAL: [(i64, i64); 12] = [
    (-4, 1728),
    (-7, -3375),
    (-8, 8000),
    (-11, -32768),
    (-12, 54000),
    (-16, 287496),
    (-19, -884736),
    (-27, -12288000),
    (-28, 16581375),
    (-43, -884736000),
    (-67, -147197952000),
    (-163, -262537412640768000),
];

pub fn factor(mut n: i64) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    n = n.abs();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Kernel of the prime-exponent matrix by rational Gaussian elimination.
pub fn nullspace(values: &[i64]) -> Vec<Vec<BigRational>> {
    let fs: Vec<_> = values.iter().map(|&v| factor(v)).collect();
    let primes: BTreeSet<i64> = fs.iter().flat_map(|f| f.keys().copied()).collect();
    let n = values.len();
    let mut rows: Vec<Vec<BigRational>> = primes
        .iter()
        .map(|p| fs.iter().map(|f| BigRational::from_integer(BigInt::from(*f.get(p).unwrap_or(&0)))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Primitive integer vector with first nonzero entry positive.
pub fn primitive(v: &[BigRational]) -> Vec<i64> {
    let den = v.iter().fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::gcd(g, x.clone()));
    let mut out: Vec<i64> = ints.iter().map(|x| (x / &g).try_into().unwrap()).collect();
    if out.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        out.iter_mut().for_each(|x| *x = -*x);
    }
    out
}

pub fn dependent(values: &[i64]) -> bool {
    !nullspace(values).is_empty()
}

/// Primitive reduced forms of discriminant `d`, counted by brute force.
pub fn class_number_naive(d: i64) -> usize {
    let n = -d;
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}
