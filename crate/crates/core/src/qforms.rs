//! Imaginary quadratic discriminants, positive definite binary quadratic
//! forms, class numbers and exact CM points.

use crate::arith::{BigComplex, RealBall};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer 2×2 matrix `[[a, b], [c, d]]`, acting on the upper half-plane by
/// `τ ↦ (aτ + b)/(cτ + d)`.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];
/// `τ ↦ −1/τ`.
pub const S_MATRIX: Mat2 = [[0, -1], [1, 0]];

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let m = |i: usize, j: usize| x[i][0] * y[0][j] + x[i][1] * y[1][j];
    [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]]
}

pub fn mat_det(x: &Mat2) -> i64 {
    x[0][0] * x[1][1] - x[0][1] * x[1][0]
}

pub fn translation(k: i64) -> Mat2 {
    [[1, k], [0, 1]]
}

/// A negative integer congruent to 0 or 1 modulo 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Discriminant> {
        if d < 0 && matches!(d.rem_euclid(4), 0 | 1) {
            Ok(Discriminant(d))
        } else {
            Err(Error::Domain(format!("{d} is not a negative discriminant (need D < 0, D ≡ 0,1 mod 4)")))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = Error;
    fn try_from(d: i64) -> Result<Discriminant> {
        Discriminant::new(d)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// All discriminants `D` with `0 < |D| <= bound`, by increasing `|D|`.
pub fn enumerate_discriminants(bound: u64) -> Result<Vec<Discriminant>> {
    if bound < 3 {
        return Err(Error::Domain(format!("discriminant bound must be at least 3, got {bound}")));
    }
    Ok((3..=bound as i64).filter_map(|n| Discriminant::new(-n).ok()).collect())
}

/// The form `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Domain("quadratic form coefficient overflow".into()))
}

impl QuadForm {
    /// A positive definite form (any reducedness, any content).
    pub fn new(a: i64, b: i64, c: i64) -> Result<QuadForm> {
        let f = QuadForm { a, b, c };
        if a <= 0 || f.disc_i128() >= 0 {
            return Err(Error::Domain(format!("({a},{b},{c}) is not positive definite")));
        }
        Ok(f)
    }

    fn disc_i128(&self) -> i128 {
        (self.b as i128) * (self.b as i128) - 4 * (self.a as i128) * (self.c as i128)
    }

    pub fn disc(&self) -> i64 {
        self.disc_i128() as i64
    }

    pub fn discriminant(&self) -> Discriminant {
        Discriminant(self.disc())
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Divide by the content.
    pub fn primitive(&self) -> QuadForm {
        let g = self.a.gcd(&self.b).gcd(&self.c);
        QuadForm { a: self.a / g, b: self.b / g, c: self.c / g }
    }

    /// The form whose upper-half-plane root is `γ·τ`, where `τ` is this form's
    /// root and `γ` has positive determinant. The result is primitive with `a > 0`.
    pub fn transform(&self, g: &Mat2) -> Result<QuadForm> {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (g[0][0] as i128, g[0][1] as i128, g[1][0] as i128, g[1][1] as i128);
        if p * s - q * r <= 0 {
            return Err(Error::Domain("transform needs a matrix of positive determinant".into()));
        }
        let na = a * s * s - b * s * r + c * r * r;
        let nb = -2 * a * s * q + b * (s * p + q * r) - 2 * c * r * p;
        let nc = a * q * q - b * q * p + c * p * p;
        let mut g = na.gcd(&nb).gcd(&nc);
        if na < 0 {
            g = -g;
        }
        QuadForm::new(narrow(na / g)?, narrow(nb / g)?, narrow(nc / g)?)
    }

    /// Reduced equivalent form and `γ ∈ SL2(Z)` with `τ_reduced = γ·τ`.
    pub fn reduce(&self) -> (QuadForm, Mat2) {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        let mut g = IDENTITY;
        loop {
            // translate so that -a < b <= a
            let k = -(-(b - a)).div_euclid(2 * a);
            if k != 0 {
                let nb = b - 2 * a * k;
                c = a * k * k - b * k + c;
                b = nb;
                g = mat_mul(&translation(k as i64), &g);
            }
            if a > c {
                (a, b, c) = (c, -b, a);
                g = mat_mul(&S_MATRIX, &g);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
                g = mat_mul(&S_MATRIX, &g);
            }
            break;
        }
        (QuadForm { a: a as i64, b: b as i64, c: c as i64 }, g)
    }

    /// Upper-half-plane root `(−b + i√|D|)/(2a)` as a complex ball.
    pub fn root(&self, prec: u32) -> BigComplex {
        let wp = prec + 16;
        let two_a = BigInt::from(2 * self.a);
        let re = RealBall::from_ratio(&BigInt::from(-self.b), &two_a, wp);
        let sq = RealBall::from_int(&BigInt::from(-self.disc()), wp).sqrt().expect("positive");
        let im = sq.div(&RealBall::from_int(&two_a, wp)).expect("nonzero");
        BigComplex::new(re, im)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All reduced primitive forms of discriminant `d`, ordered by `(a, b)`.
pub fn reduced_forms(d: Discriminant) -> Vec<QuadForm> {
    let n = d.abs() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

pub fn class_number(d: Discriminant) -> usize {
    reduced_forms(d).len()
}

/// The quadratic point `τ = (−b + i√|D|)/(2a)` attached to a reduced form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CMPoint {
    pub a: i64,
    pub b: i64,
    pub d: Discriminant,
}

impl CMPoint {
    pub fn form(&self) -> QuadForm {
        let c = (self.b * self.b - self.d.value()) / (4 * self.a);
        QuadForm { a: self.a, b: self.b, c }
    }

    pub fn to_complex(&self, prec: u32) -> BigComplex {
        self.form().root(prec)
    }

    /// Absolute height of `τ`: the largest coefficient of its primitive
    /// integral minimal polynomial `a x^2 + b x + c`.
    pub fn height(&self) -> i64 {
        let f = self.form();
        f.a.max(f.b.abs()).max(f.c)
    }
}

impl fmt::Display for CMPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-{} + i*sqrt({}))/{}", self.b, self.d.abs(), 2 * self.a)
    }
}

pub fn cm_point(f: &QuadForm) -> Result<CMPoint> {
    if !f.is_reduced() || !f.is_primitive() || f.a <= 0 {
        return Err(Error::Domain(format!("{f} is not a reduced primitive positive definite form")));
    }
    Ok(CMPoint { a: f.a, b: f.b, d: f.discriminant() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn discriminant_lists() {
        let v: Vec<i64> = enumerate_discriminants(8).unwrap().iter().map(|d| d.value()).collect();
        assert_eq!(v, vec![-3, -4, -7, -8]);
        assert_eq!(enumerate_discriminants(20).unwrap().len(), 10);
        assert!(enumerate_discriminants(2).is_err());
        assert!(Discriminant::new(-5).is_err());
        assert!(Discriminant::new(4).is_err());
    }

    #[test]
    fn forms_and_class_numbers() {
        assert_eq!(reduced_forms(disc(-3)), vec![QuadForm { a: 1, b: 1, c: 1 }]);
        assert_eq!(
            reduced_forms(disc(-23)),
            vec![QuadForm { a: 1, b: 1, c: 6 }, QuadForm { a: 2, b: -1, c: 3 }, QuadForm { a: 2, b: 1, c: 3 }]
        );
        assert_eq!(class_number(disc(-163)), 1);
        // non-fundamental: -12 has only (1,0,3); (2,2,2) is imprimitive
        assert_eq!(reduced_forms(disc(-12)), vec![QuadForm { a: 1, b: 0, c: 3 }]);
        let ones: Vec<i64> = enumerate_discriminants(200)
            .unwrap()
            .into_iter()
            .filter(|&d| class_number(d) == 1)
            .map(|d| d.value())
            .collect();
        assert_eq!(ones, vec![-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163]);
    }

    #[test]
    fn cm_points_lie_in_the_fundamental_domain() {
        for d in enumerate_discriminants(300).unwrap() {
            for f in reduced_forms(d) {
                let t = cm_point(&f).unwrap();
                let z = t.to_complex(64);
                let (x, y) = z.to_f64_pair();
                assert!(x.abs() <= 0.5 + 1e-12 && x * x + y * y >= 1.0 - 1e-12);
                assert!(t.height() <= 2 * d.abs() as i64);
            }
        }
        let t = cm_point(&QuadForm { a: 2, b: 1, c: 3 }).unwrap();
        assert!(t.height() <= 46);
        assert!(cm_point(&QuadForm { a: 3, b: 1, c: 2 }).is_err());
    }

    #[test]
    fn reduction_tracks_the_matrix() {
        // root of (a,b,c) = (7, 23, 19) has disc 529 - 532 = -3
        let f = QuadForm::new(7, 23, 19).unwrap();
        let (r, g) = f.reduce();
        assert_eq!(r, QuadForm { a: 1, b: 1, c: 1 });
        assert_eq!(mat_det(&g), 1);
        assert_eq!(f.transform(&g).unwrap(), r);
        // translation by -5 for i + 5
        let f = QuadForm::new(1, -10, 26).unwrap();
        let (r, g) = f.reduce();
        assert_eq!(r, QuadForm { a: 1, b: 0, c: 1 });
        assert_eq!(g, translation(-5));
    }
}
