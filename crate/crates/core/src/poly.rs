//! Dense univariate polynomials with integer coefficients, constant term first.

use crate::arith::BigComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Vec<String> {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<IntPoly, String> {
        let cs: Result<Vec<BigInt>, _> = v.iter().map(|s| s.trim().parse::<BigInt>()).collect();
        cs.map(IntPoly::new).map_err(|e| format!("bad coefficient: {e}"))
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> IntPoly {
        IntPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &BigInt) -> IntPoly {
        IntPoly::new(vec![-r, BigInt::one()])
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> IntPoly {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPoly::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut acc = IntPoly::constant(BigInt::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// Reversed coefficient list, `x^d p(1/x)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_complex(&self, z: &BigComplex) -> BigComplex {
        let p = z.prec();
        let mut acc = BigComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &BigComplex::from_int(c, p);
        }
        acc
    }

    /// Quotient and remainder when dividing by a polynomial whose leading
    /// coefficient is a unit.
    pub fn divrem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        let dl = d.lead();
        assert!(dl.abs().is_one(), "divisor must have unit leading coefficient");
        let n = d.degree();
        if self.coeffs.len() <= n {
            return (IntPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - n];
        for i in (n..r.len()).rev() {
            let t = &r[i] * &dl;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &t * dc;
                r[i - n + j] -= v;
            }
            q[i - n] = t;
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Exact quotient over the integers, or `None` if `d` does not divide `self` in Z[x].
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = d.degree();
        if self.degree() < n {
            return None;
        }
        let dl = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - n];
        for i in (n..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let (t, rem) = r[i].div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - n + j] -= &t * dc;
            }
            q[i - n] = t;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor over Q, returned primitive with positive lead.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let n = d.degree();
        let dl = d.lead();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= n {
            let shift = r.degree() - n;
            let rl = r.lead();
            let mut t = vec![BigInt::zero(); shift + 1];
            t[shift] = rl;
            r = r.scale(&dl).sub(&d.mul(&IntPoly::new(t)));
        }
        r
    }

    /// The squarefree part `p / gcd(p, p')`, primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.primitive();
        }
        let p = self.primitive();
        let g = g.primitive();
        // exact over Q; clear the rational content by rescaling
        let scaled = p.scale(&num_traits::pow(g.lead(), p.degree() + 1));
        scaled.exact_div(&g).expect("gcd divides").primitive()
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// `p(x^k)`.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        let mut c = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * k] = a.clone();
        }
        IntPoly::new(c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = IntPoly::from_i64s(&[-1, 0, 1]); // x^2 - 1
        let b = IntPoly::from_i64s(&[1, 1]);
        assert_eq!(a.exact_div(&b), Some(IntPoly::from_i64s(&[-1, 1])));
        assert_eq!(a.exact_div(&IntPoly::from_i64s(&[1, 2])), None);
        let (q, r) = IntPoly::from_i64s(&[3, 0, 0, 1]).divrem_monic(&b);
        assert_eq!(q.mul(&b).add(&r), IntPoly::from_i64s(&[3, 0, 0, 1]));
        assert_eq!(r.degree(), 0);
        let c = IntPoly::from_i64s(&[2, 3, 1]); // (x+1)(x+2)
        assert_eq!(a.gcd(&c), b);
        let sq = b.mul(&b).mul(&IntPoly::from_i64s(&[0, 2]));
        assert_eq!(sq.squarefree_part(), IntPoly::from_i64s(&[0, 1, 1]));
    }

    #[test]
    fn display_and_serde() {
        let p = IntPoly::from_i64s(&[12771880859375, -5151296875, 3491750, 1]);
        assert_eq!(p.to_string(), "x^3 + 3491750*x^2 - 5151296875*x + 12771880859375");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["12771880859375","-5151296875","3491750","1"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
