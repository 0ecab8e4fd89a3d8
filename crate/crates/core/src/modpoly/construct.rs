//! Classical modular polynomials `Φ_N(X, Y)`.
//!
//! The main construction expands `Π_A (X − j(Aτ))` over the level-`N`
//! sublattice matrices `A = (a b; 0 d)` in powers of `q` and rewrites each
//! coefficient as a polynomial in `j`. Each orbit `{(a, b, d) : b}` is handled
//! through its power sums, which are integral `q`-series: summing over `b`
//! kills every term of `j((aτ+b)/d)^k` whose exponent is not a multiple of the
//! relevant divisor of `d`, so no cyclotomic coefficients appear.

use crate::arith::{BigComplex, Mag};
use crate::cyclotomic::CyclotomicSum;
use crate::error::{Error, Result};
use crate::modfun::j_eval;
use crate::modfun::series::j_coefficients;
use crate::modfun::rational_singular_moduli;
use crate::nt::{dedekind_psi, divisors, euler_phi, mobius};
use crate::qforms::{reduced_forms, QuadForm};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

pub const DEFAULT_N_MAX: u64 = 10;

/// Extra `q`-exponents checked to vanish after matching.
const MATCH_MARGIN: i64 = 4;

/// `Φ_N` as a dense coefficient matrix: `coeffs[i][j]` multiplies `X^i Y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PolyRecord", try_from = "PolyRecord")]
pub struct ModularPolynomial {
    level: u64,
    coeffs: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    level: u64,
    /// nonzero `(i, j, c)` in increasing `(i, j)` order
    terms: Vec<(usize, usize, String)>,
}

impl From<ModularPolynomial> for PolyRecord {
    fn from(p: ModularPolynomial) -> PolyRecord {
        PolyRecord { level: p.level, terms: p.terms().map(|(i, j, c)| (i, j, c.to_string())).collect() }
    }
}

impl TryFrom<PolyRecord> for ModularPolynomial {
    type Error = Error;

    fn try_from(r: PolyRecord) -> Result<ModularPolynomial> {
        let mut terms = Vec::with_capacity(r.terms.len());
        for (i, j, c) in r.terms {
            let c: BigInt = c.parse().map_err(|_| Error::Domain(format!("bad coefficient {c:?}")))?;
            terms.push((i, j, c));
        }
        ModularPolynomial::from_terms(r.level, terms)
    }
}

impl ModularPolynomial {
    fn from_terms(level: u64, terms: Vec<(usize, usize, BigInt)>) -> Result<ModularPolynomial> {
        if level == 0 {
            return Err(Error::Domain("level must be at least 1".into()));
        }
        let psi = dedekind_psi(level) as usize;
        let mut coeffs = vec![vec![BigInt::zero(); psi + 1]; psi + 1];
        for (i, j, c) in terms {
            if i > psi || j > psi {
                return Err(Error::Domain(format!("term X^{i} Y^{j} exceeds degree {psi} for level {level}")));
            }
            coeffs[i][j] += c;
        }
        Ok(ModularPolynomial { level, coeffs })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Degree in each variable, `ψ(N)`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i][j]
    }

    /// Nonzero coefficients as `(i, j, c)` sorted by `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| (i, j, c)))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| (0..i).all(|j| self.coeffs[i][j] == self.coeffs[j][i]))
    }

    /// Largest coefficient size in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms().map(|(_, _, c)| c.bits()).max().unwrap_or(0)
    }

    pub fn eval_int(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for row in self.coeffs.iter().rev() {
            let mut r = BigInt::zero();
            for c in row.iter().rev() {
                r = r * y + c;
            }
            acc = acc * x + r;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for row in self.coeffs.iter().rev() {
            let mut r = BigRational::zero();
            for c in row.iter().rev() {
                r = r * y + BigRational::from_integer(c.clone());
            }
            acc = acc * x + r;
        }
        acc
    }

    pub fn eval_complex(&self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = x.prec().max(y.prec());
        let mut acc = BigComplex::zero(p);
        for row in self.coeffs.iter().rev() {
            let mut r = BigComplex::zero(p);
            for c in row.iter().rev() {
                r = &(&r * y) + &BigComplex::from_int(c, p);
            }
            acc = &(&acc * x) + &r;
        }
        acc
    }

    /// `Φ_N(ζ^e1, ζ^e2)` for `ζ = e^{2πi/L}` as an exact cyclotomic sum.
    pub fn eval_cyclotomic(&self, order: u64, e1: i64, e2: i64) -> CyclotomicSum {
        let mut s = CyclotomicSum::new(order);
        for (i, j, c) in self.terms() {
            s.add_term(c, e1 * i as i64 + e2 * j as i64);
        }
        s
    }

    /// Plain-text export: the level on the first line, then `i j c` per
    /// nonzero coefficient in increasing `(i, j)` order.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.level);
        for (i, j, c) in self.terms() {
            s.push_str(&format!("{i} {j} {c}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<ModularPolynomial> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let level: u64 = lines
            .next()
            .and_then(|l| l.parse().ok())
            .ok_or_else(|| Error::Domain("missing level line".into()))?;
        let mut terms = Vec::new();
        for l in lines {
            let f: Vec<&str> = l.split_whitespace().collect();
            let bad = || Error::Domain(format!("malformed coefficient line {l:?}"));
            if f.len() != 3 {
                return Err(bad());
            }
            let i = f[0].parse().map_err(|_| bad())?;
            let j = f[1].parse().map_err(|_| bad())?;
            let c = f[2].parse().map_err(|_| bad())?;
            terms.push((i, j, c));
        }
        ModularPolynomial::from_terms(level, terms)
    }
}

impl fmt::Display for ModularPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let v = |s: &str, e: usize| match e {
                        0 => String::new(),
                        1 => s.to_string(),
                        _ => format!("{s}^{e}"),
                    };
                    format!("{}{}", v("X", i), v("Y", j))
                }
            };
            let mag = c.abs();
            let body = if mag.is_one() && !mono.is_empty() { mono } else { format!("{mag}{mono}") };
            if first {
                write!(f, "{}{body}", if c.is_negative() { "-" } else { "" })?;
            } else {
                write!(f, " {} {body}", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The matrices `(a b; 0 d)` with `ad = N`, `0 <= b < d`, `gcd(a, b, d) = 1`,
/// as `(a, b, d)`.
pub fn sublattice_reps(n: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for a in divisors(n) {
        let d = n / a;
        for b in 0..d {
            if a.gcd(&b).gcd(&d) == 1 {
                out.push((a, b, d));
            }
        }
    }
    out
}

/// Truncated Laurent series `Σ c[k] q^{val+k}`; coefficients past the stored
/// ones are zero up to exponent `prec` (exclusive) and unknown from there on.
#[derive(Clone, Debug)]
struct Series {
    val: i64,
    prec: i64,
    c: Vec<BigInt>,
}

const EXACT: i64 = i64::MAX / 4;

impl Series {
    fn constant(c: BigInt) -> Series {
        Series { val: 0, prec: EXACT, c: vec![c] }
    }

    fn get(&self, e: i64) -> BigInt {
        assert!(e < self.prec, "coefficient of q^{e} is beyond the known precision {}", self.prec);
        let k = e - self.val;
        if k < 0 || k as usize >= self.c.len() {
            BigInt::zero()
        } else {
            self.c[k as usize].clone()
        }
    }

    fn mul(&self, o: &Series) -> Series {
        let val = self.val + o.val;
        let prec = (self.prec.saturating_add(o.val)).min(o.prec.saturating_add(self.val));
        let len = ((self.c.len() + o.c.len()).saturating_sub(1) as i64).min(prec - val).max(0) as usize;
        let mut c = vec![BigInt::zero(); len];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (k, b) in o.c.iter().enumerate().take(len - i) {
                c[i + k] += a * b;
            }
        }
        Series { val, prec, c }
    }

    fn add_scaled(&self, o: &Series, s: &BigInt) -> Series {
        let val = self.val.min(o.val);
        let prec = self.prec.min(o.prec);
        let end = (self.val + self.c.len() as i64).max(o.val + o.c.len() as i64).min(prec);
        let mut c = vec![BigInt::zero(); (end - val).max(0) as usize];
        for (k, x) in self.c.iter().enumerate() {
            let e = self.val + k as i64;
            if e < end {
                c[(e - val) as usize] += x;
            }
        }
        for (k, x) in o.c.iter().enumerate() {
            let e = o.val + k as i64;
            if e < end {
                c[(e - val) as usize] += x * s;
            }
        }
        Series { val, prec, c }
    }

    fn scale(&self, s: &BigInt) -> Series {
        Series { val: self.val, prec: self.prec, c: self.c.iter().map(|x| x * s).collect() }
    }

    fn exact_div(&self, k: u64) -> Result<Series> {
        let k = BigInt::from(k);
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            let (q, r) = x.div_rem(&k);
            if !r.is_zero() {
                return Err(Error::Precision("non-integral symmetric function in q-expansion".into()));
            }
            c.push(q);
        }
        Ok(Series { val: self.val, prec: self.prec, c })
    }

    /// Lowest exponent `<= bound` with a nonzero coefficient.
    fn first_nonzero_upto(&self, bound: i64) -> Option<(i64, BigInt)> {
        self.c
            .iter()
            .enumerate()
            .map(|(k, x)| (self.val + k as i64, x))
            .take_while(|(e, _)| *e <= bound)
            .find(|(_, x)| !x.is_zero())
            .map(|(e, x)| (e, x.clone()))
    }
}

/// `j` as a series in its own variable, known below exponent `prec`.
fn j_series(prec: i64) -> Series {
    let n = (prec - 1).max(0) as usize;
    let mut c = j_coefficients(n);
    c.truncate((prec + 1) as usize);
    Series { val: -1, prec, c }
}

fn powers(base: &Series, k_max: usize) -> Vec<Series> {
    let mut out = vec![Series::constant(BigInt::one())];
    for k in 1..=k_max {
        let next = out[k - 1].mul(base);
        out.push(next);
    }
    out
}

/// Coefficients of `Π_b (X − j((aτ+b)/d))` over the admissible `b`, from the
/// top degree down, each known below `q^t0` at least.
fn orbit_factor(a: u64, d: u64, t0: i64) -> Result<Vec<Series>> {
    let g = a.gcd(&d);
    let count = (d * euler_phi(g) / g) as usize;
    let pole = (count as u64 * a).div_ceil(d) as i64;
    let tq = t0 + pole + 1;
    // x-exponents needed: m < tq·d/a
    let mx = (tq as u64 * d).div_ceil(a) as i64 + 1;
    let jx = j_series(mx + count as i64 + 1);
    let jp = powers(&jx, count);
    let mut sums: Vec<Series> = vec![Series::constant(BigInt::zero())];
    for (k, jk) in jp.iter().enumerate().skip(1) {
        let val = -((k as u64 * a) as i64);
        let mut c = vec![BigInt::zero(); (tq - val) as usize];
        for e in divisors(g) {
            let mu = mobius(e);
            if mu == 0 {
                continue;
            }
            let r = (d / e) as i64;
            let step = (a / e) as i64;
            let weight = BigInt::from(mu as i64 * r);
            let mut m1 = -((k as i64) / r);
            while step * m1 < tq {
                let coeff = jk.get(m1 * r);
                if !coeff.is_zero() {
                    c[(step * m1 - val) as usize] += &coeff * &weight;
                }
                m1 += 1;
            }
        }
        sums.push(Series { val, prec: tq, c });
    }
    // Newton's identities: k e_k = Σ_{i=1..k} (−1)^{i−1} e_{k−i} p_i
    let mut el: Vec<Series> = vec![Series::constant(BigInt::one())];
    for k in 1..=count {
        let mut acc = Series { val: 0, prec: EXACT, c: Vec::new() };
        for i in 1..=k {
            let sign = if i % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            acc = acc.add_scaled(&el[k - i].mul(&sums[i]), &sign);
        }
        el.push(acc.exact_div(k as u64)?);
    }
    // X^count − e1 X^{count−1} + e2 X^{count−2} − …
    Ok(el
        .iter()
        .enumerate()
        .map(|(k, e)| if k % 2 == 0 { e.clone() } else { e.scale(&-BigInt::one()) })
        .collect())
}

/// Product of polynomials in `X` given from the top degree down.
fn mul_top_down(p: &[Series], q: &[Series]) -> Vec<Series> {
    let mut out: Vec<Option<Series>> = vec![None; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (k, b) in q.iter().enumerate() {
            let t = a.mul(b);
            out[i + k] = Some(match out[i + k].take() {
                None => t,
                Some(s) => s.add_scaled(&t, &BigInt::one()),
            });
        }
    }
    out.into_iter().map(Option::unwrap).collect()
}

/// `Φ_N` by `q`-expansion matching, without caching.
pub fn modular_polynomial_by_q_expansion(n: u64) -> Result<ModularPolynomial> {
    if n == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    let psi = dedekind_psi(n) as usize;
    let orbits: Vec<(u64, u64)> = divisors(n).into_iter().map(|a| (a, n / a)).collect();
    let total_pole: i64 = orbits
        .iter()
        .map(|&(a, d)| {
            let g = a.gcd(&d);
            ((d * euler_phi(g) / g) * a).div_ceil(d) as i64
        })
        .sum();
    let mut t0 = total_pole + MATCH_MARGIN + 1;
    let prod = loop {
        let mut prod = vec![Series::constant(BigInt::one())];
        for &(a, d) in &orbits {
            prod = mul_top_down(&prod, &orbit_factor(a, d, t0)?);
        }
        let known = prod.iter().map(|s| s.prec).min().unwrap_or(EXACT);
        if known >= MATCH_MARGIN {
            break prod;
        }
        t0 += MATCH_MARGIN - known;
    };
    if prod.len() != psi + 1 {
        return Err(Error::Precision(format!("orbit product has degree {} instead of {psi}", prod.len() - 1)));
    }
    let jq = j_series(t0 + psi as i64 + 1);
    let jpow = powers(&jq, psi);
    let mut coeffs = vec![vec![BigInt::zero(); psi + 1]; psi + 1];
    for (top, series) in prod.iter().enumerate() {
        let i = psi - top;
        let mut s = series.clone();
        while let Some((e, c)) = s.first_nonzero_upto(0) {
            let m = (-e) as usize;
            if m > psi {
                return Err(Error::Precision(format!("pole of order {m} exceeds degree {psi}")));
            }
            coeffs[i][m] += &c;
            s = s.add_scaled(&jpow[m], &-c);
        }
        if s.prec < MATCH_MARGIN || s.c.iter().any(|x| !x.is_zero()) {
            return Err(Error::Precision(format!("q-expansion matching for level {n} left a remainder")));
        }
    }
    Ok(ModularPolynomial { level: n, coeffs })
}

/// `Φ_N` by interpolating in `Y` through the integral singular moduli.
///
/// At `Y = j(τ)` with `j(τ)` an integer, `Φ_N(X, j(τ)) = Π_A (X − j(Aτ))`
/// has integer coefficients, so ball evaluation plus rounding recovers it
/// exactly; Lagrange interpolation over `ψ(N) + 1` such nodes gives `Φ_N`.
/// Only levels with `ψ(N) <= 12` have enough nodes.
pub fn modular_polynomial_by_interpolation(n: u64) -> Result<ModularPolynomial> {
    if n == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    let psi = dedekind_psi(n) as usize;
    let mut nodes = rational_singular_moduli()?;
    if nodes.len() < psi + 1 {
        return Err(Error::Domain(format!(
            "interpolation needs {} integral singular moduli, only {} exist",
            psi + 1,
            nodes.len()
        )));
    }
    nodes.truncate(psi + 1);
    let reps = sublattice_reps(n);
    let mut values: Vec<Vec<BigInt>> = Vec::with_capacity(nodes.len());
    for node in &nodes {
        let form = reduced_forms(node.discriminant)[0];
        values.push(specialized(&form, &reps)?);
    }
    let ys: Vec<BigRational> = nodes.iter().map(|s| BigRational::from_integer(s.value.clone())).collect();
    let mut coeffs = vec![vec![BigInt::zero(); psi + 1]; psi + 1];
    for (i, row) in coeffs.iter_mut().enumerate() {
        let vals: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v[i].clone())).collect();
        for (j, c) in interpolate(&ys, &vals).into_iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::Precision("interpolated coefficient is not integral".into()));
            }
            row[j] = c.to_integer();
        }
    }
    Ok(ModularPolynomial { level: n, coeffs })
}

/// Integer coefficients of `Π_A (X − j(Aτ))` for the root `τ` of `form`,
/// constant term first.
fn specialized(form: &QuadForm, reps: &[(u64, u64, u64)]) -> Result<Vec<BigInt>> {
    let im = (-(form.disc() as f64)).sqrt() / (2.0 * form.a as f64);
    let log2_size: f64 = reps
        .iter()
        .map(|&(a, _, d)| 2.0 * std::f64::consts::PI * im * a as f64 / d as f64 / std::f64::consts::LN_2 + 12.0)
        .sum();
    let mut bits = log2_size.ceil() as u32 + 64;
    for _ in 0..6 {
        let tau = form.root(2 * bits + 64);
        let mut poly = vec![BigComplex::one(bits)];
        for &(a, b, d) in reps {
            let z = (&tau.mul_int(&BigInt::from(a)) + &BigComplex::from_int(&BigInt::from(b), 2 * bits + 64))
                .div(&BigComplex::from_int(&BigInt::from(d), 2 * bits + 64))?;
            let j = j_eval(&z, bits)?;
            let mut next = vec![BigComplex::zero(bits); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * &j);
            }
            poly = next;
        }
        let quarter = Mag::from_f64(0.25);
        let mut out = Vec::with_capacity(poly.len());
        for c in &poly {
            let (r, err) = c.re.nearest_integer();
            if !(err < quarter) || !(c.im.abs_upper() < quarter) {
                out.clear();
                break;
            }
            out.push(r);
        }
        if !out.is_empty() {
            return Ok(out);
        }
        bits *= 2;
    }
    Err(Error::Precision("specialized modular polynomial did not round to integers".into()))
}

/// Coefficients (constant first) of the polynomial of degree `< xs.len()`
/// through the points `(xs[k], ys[k])`, via divided differences.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    // Horner on the Newton form
    let mut poly = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly · (X − xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for (e, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e + 1 < n {
                next[e + 1] += c;
            }
            next[e] -= c * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<ModularPolynomial>>> {
    static C: OnceLock<RwLock<HashMap<u64, Arc<ModularPolynomial>>>> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_N` for `1 <= N <= n_max`, cached per level.
pub fn modular_polynomial_bounded(n: u64, n_max: u64) -> Result<Arc<ModularPolynomial>> {
    if n == 0 || n > n_max {
        return Err(Error::Domain(format!("level {n} outside 1..={n_max}")));
    }
    if let Some(p) = cache().read().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let p = Arc::new(modular_polynomial_by_q_expansion(n)?);
    Ok(cache().write().unwrap().entry(n).or_insert(p).clone())
}

/// `Φ_N` for `1 <= N <= DEFAULT_N_MAX`.
pub fn modular_polynomial(n: u64) -> Result<Arc<ModularPolynomial>> {
    modular_polynomial_bounded(n, DEFAULT_N_MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi2_reference() -> ModularPolynomial {
        let t = |i, j, c: &str| (i, j, c.parse::<BigInt>().unwrap());
        let mut terms = vec![
            t(3, 0, "1"),
            t(2, 2, "-1"),
            t(2, 1, "1488"),
            t(2, 0, "-162000"),
            t(1, 1, "40773375"),
            t(1, 0, "8748000000"),
            t(0, 0, "-157464000000000"),
        ];
        let mirrored: Vec<_> = terms.iter().filter(|(i, j, _)| i != j).map(|(i, j, c)| (*j, *i, c.clone())).collect();
        terms.extend(mirrored);
        ModularPolynomial::from_terms(2, terms).unwrap()
    }

    #[test]
    fn level_one_and_two() {
        let p1 = modular_polynomial_by_q_expansion(1).unwrap();
        assert_eq!(p1.to_string(), "X - Y");
        let p2 = modular_polynomial_by_q_expansion(2).unwrap();
        assert_eq!(p2, phi2_reference());
    }

    #[test]
    fn routes_agree() {
        for n in 1..=9 {
            let a = modular_polynomial_by_q_expansion(n).unwrap();
            let b = modular_polynomial_by_interpolation(n).unwrap();
            assert_eq!(a, b, "level {n}");
        }
    }

    #[test]
    fn degrees_and_symmetry() {
        for n in 2..=10 {
            let p = modular_polynomial(n).unwrap();
            assert_eq!(p.degree() as u64, dedekind_psi(n));
            assert!(p.is_symmetric());
            assert!(p.coeff(p.degree(), 0).is_one());
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let p = modular_polynomial(3).unwrap();
        let t = p.to_text();
        assert!(t.starts_with("3\n0 1 "));
        assert_eq!(ModularPolynomial::from_text(&t).unwrap(), *p);
        let j = serde_json::to_string(&*p).unwrap();
        assert_eq!(serde_json::from_str::<ModularPolynomial>(&j).unwrap(), *p);
        assert!(modular_polynomial_by_interpolation(10).is_err());
        assert!(modular_polynomial(11).is_err());
        assert!(modular_polynomial_bounded(11, 10).is_err());
    }

    #[test]
    fn cm_values_are_roots() {
        // j(i) = 1728 and j(2i) = 66^3
        let p = modular_polynomial(2).unwrap();
        assert!(p.eval_int(&BigInt::from(1728), &BigInt::from(287496)).is_zero());
        assert!(!p.eval_int(&BigInt::from(0), &BigInt::from(1)).is_zero());
    }

    #[test]
    fn sublattice_counts() {
        for n in 1..=30 {
            assert_eq!(sublattice_reps(n).len() as u64, dedekind_psi(n));
        }
    }
}
