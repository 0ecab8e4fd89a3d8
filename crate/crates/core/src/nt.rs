//! Small-integer number theory: factorization, divisors, Möbius, Euler phi,
//! primality, modular inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Prime factorization of `n >= 1` as `(p, e)` pairs in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_u64 needs a positive argument");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    n >= 2 && factor_u64(n) == vec![(n, 1)]
}

/// Primes in increasing order starting from 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn mobius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Dedekind psi: `n · Π_{p | n} (1 + 1/p)`, the index of `Γ0(n)`.
pub fn dedekind_psi(n: u64) -> u64 {
    factor_u64(n).iter().fold(n, |acc, &(p, _)| acc / p * (p + 1))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Inverse of `a` modulo `m > 1`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = (a.rem_euclid(m)).extended_gcd(&m);
    if e.gcd != 1 {
        None
    } else {
        Some(e.x.rem_euclid(m))
    }
}

fn mod_pow(b: &BigInt, e: &BigInt, m: &BigInt) -> BigInt {
    b.modpow(e, m)
}

/// Deterministic for `n < 3.3·10^24`, probabilistic with fixed bases beyond.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let pb = BigInt::from(p);
        if n == &pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let nm1 = n - BigInt::one();
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s as usize;
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = mod_pow(&BigInt::from(a), &d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Factorization of a nonzero integer's absolute value by trial division up to
/// `trial_limit`, with a probable-prime test on the cofactor. Returns `None`
/// if a composite cofactor remains.
pub fn factor_bigint(n: &BigInt, trial_limit: u64) -> Option<Vec<(BigInt, u32)>> {
    assert!(!n.is_zero(), "factor_bigint needs a nonzero argument");
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= trial_limit {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % &pb).is_zero() {
            let mut e = 0;
            while (&m % &pb).is_zero() {
                m /= &pb;
                e += 1;
            }
            out.push((pb, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Some(out);
    }
    let pb = BigInt::from(p);
    if &pb * &pb > m || is_probable_prime(&m) {
        out.push((m, 1));
        return Some(out);
    }
    None
}

/// Integer square root test for nonnegative `n`.
pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|k| k >= 0 && k * k == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn arithmetic_functions() {
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(12), 4);
        let psi: Vec<u64> = (2..=10).map(dedekind_psi).collect();
        assert_eq!(psi, vec![3, 4, 6, 6, 12, 8, 12, 12, 18]);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert!(primes().take(5).eq([2, 3, 5, 7, 11]));
    }

    #[test]
    fn big_factorization() {
        let n: BigInt = "262537412640768000".parse().unwrap();
        let f = factor_bigint(&n, 1000).unwrap();
        let pairs: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(pairs, vec![(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)]);
        let big_prime: BigInt = "1000000000000000003".parse().unwrap();
        assert!(is_probable_prime(&big_prime));
        assert!(!is_probable_prime(&(&big_prime * BigInt::from(3))));
    }
}
