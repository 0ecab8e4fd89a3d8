mod common;

use common::RATIONAL;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use singmod::arith::{BigComplex, Mag};
use singmod::modfun::{j_eval, j_eval_eisenstein, mobius, singular_moduli, AlgebraicNumber};
use singmod::modpoly::is_isogenous;
use singmod::poly::IntPoly;
use singmod::qforms::{class_number, cm_point, enumerate_discriminants, reduced_forms, Discriminant, Mat2};
use singmod::relations::{
    bound_lehmer, find_relation, find_relation_exact, is_root_of_unity, verify_relation, weil_height, FactoredRational,
};

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| x[i][0] * y[0][j] + x[i][1] * y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Words in `S` and `T^k`, `|k| <= 2`.
fn sl2z() -> impl Strategy<Value = Mat2> {
    prop::collection::vec(-2i64..=2, 0..5).prop_map(|ks| {
        ks.iter().fold([[1, 0], [0, 1]], |m, &k| mat_mul(&mat_mul(&m, &[[0, -1], [1, 0]]), &[[1, k], [0, 1]]))
    })
}

fn fundamental_point() -> impl Strategy<Value = (f64, f64)> {
    (-0.5f64..0.5, 0.0f64..1.0).prop_map(|(x, t)| {
        let lo = (1.0 - x * x).sqrt();
        (x, lo + t * (2.5 - lo))
    })
}

fn discriminant() -> impl Strategy<Value = Discriminant> {
    (3i64..3000).prop_filter_map("not a discriminant", |k| Discriminant::new(-k).ok())
}

/// `(b, c)` with `x^2 + bx + c` irreducible over Q.
fn quadratic() -> impl Strategy<Value = (i64, i64)> {
    (-30i64..=30, -30i64..=30).prop_filter("irreducible", |&(b, c)| {
        let disc = b * b - 4 * c;
        c != 0 && (disc < 0 || (0..=60).all(|s| s * s != disc))
    })
}

fn root(b: i64, c: i64, which: bool) -> AlgebraicNumber {
    let disc = (b * b - 4 * c) as f64;
    let s = if which { 1.0 } else { -1.0 };
    let (re, im) =
        if disc < 0.0 { (-b as f64 / 2.0, s * (-disc).sqrt() / 2.0) } else { ((-b as f64 + s * disc.sqrt()) / 2.0, 0.0) };
    let near = BigComplex::from_f64(re, im, 64).add_error(Mag::pow2(-20));
    AlgebraicNumber::from_poly_root(&IntPoly::from_i64s(&[c, b, 1]), &near).unwrap()
}

fn smooth_rational() -> impl Strategy<Value = BigRational> {
    (prop::bool::ANY, -3i32..=3, -3i32..=3, -3i32..=3).prop_map(|(neg, a, b, c)| {
        let r = BigRational::from_integer(2.into()).pow(a)
            * BigRational::from_integer(3.into()).pow(b)
            * BigRational::from_integer(5.into()).pow(c);
        if neg { -r } else { r }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_forms_are_consistent(d in discriminant()) {
        let forms = reduced_forms(d);
        prop_assert_eq!(forms.len(), class_number(d));
        for f in forms {
            prop_assert_eq!(f.b * f.b - 4 * f.a * f.c, d.value());
            let tau = cm_point(&f).unwrap();
            prop_assert!(tau.height() <= 2 * d.value().abs());
            let (x, y) = tau.to_complex(64).to_f64_pair();
            prop_assert!(x.abs() <= 0.5 + 1e-12 && x * x + y * y >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn j_is_modular_and_routes_agree((x, y) in fundamental_point(), g in sl2z()) {
        let z = BigComplex::from_f64(x, y, 512);
        let j = j_eval(&z, 128).unwrap();
        prop_assert!(j.overlaps(&j_eval_eisenstein(&z, 128).unwrap()));
        let gz = mobius(&g, &z).unwrap();
        prop_assert!(j.overlaps(&j_eval(&gz, 128).unwrap()));
    }

    #[test]
    fn heights_scale_under_powers(q in smooth_rational(), (b, c) in quadratic(), k in prop_oneof![-4i64..=-1, 1i64..=4]) {
        for a in [AlgebraicNumber::from_rational(&q), root(b, c, true)] {
            let (h1, hk) = (weil_height(&a).unwrap(), weil_height(&a.pow(k).unwrap()).unwrap());
            let slack = hk.error_bound + k.abs() as f64 * h1.error_bound + 1e-12;
            prop_assert!((hk.value - k.abs() as f64 * h1.value).abs() <= slack, "h(a^{}) = {}, h(a) = {}", k, hk.value, h1.value);
        }
    }

    #[test]
    fn heights_agree_on_conjugates((b, c) in quadratic()) {
        let (h1, h2) = (weil_height(&root(b, c, true)).unwrap(), weil_height(&root(b, c, false)).unwrap());
        prop_assert!((h1.value - h2.value).abs() <= h1.error_bound + h2.error_bound + 1e-12);
    }

    #[test]
    fn roots_of_unity_have_height_zero(m in 1u64..60, k in 0u64..60) {
        prop_assume!(num_integer::gcd(k % m, m) == 1);
        let z = AlgebraicNumber::root_of_unity(m, k % m).unwrap();
        prop_assert!(is_root_of_unity(&z));
        prop_assert_eq!(weil_height(&z).unwrap().value, 0.0);
    }

    #[test]
    fn relation_finders_agree_on_rationals(qs in prop::collection::vec(smooth_rational(), 2..5)) {
        let members: Vec<AlgebraicNumber> = qs.iter().map(AlgebraicNumber::from_rational).collect();
        let factored: Vec<FactoredRational> = qs.iter().map(|q| FactoredRational::from_rational(q).unwrap()).collect();
        let exact = find_relation_exact(&factored).unwrap();
        let lattice = find_relation(&members, 200).unwrap();
        prop_assert_eq!(exact.is_some(), lattice.is_some());
        for cert in exact.iter().chain(lattice.iter()) {
            prop_assert!(verify_relation(&members, &cert.exponents).unwrap().holds());
            prop_assert!(cert.reverify().unwrap().holds());
            let back: singmod::relations::RelationCertificate =
                serde_json::from_str(&serde_json::to_string(cert).unwrap()).unwrap();
            prop_assert!(back.reverify().unwrap().holds());
        }
    }

    #[test]
    fn isogeny_is_symmetric(i in 0..RATIONAL.len(), j in 0..RATIONAL.len()) {
        let v = |k: usize| AlgebraicNumber::from_rational(&BigRational::from_integer(BigInt::from(RATIONAL[k].1)));
        prop_assert_eq!(is_isogenous(&v(i), &v(j), 3).unwrap(), is_isogenous(&v(j), &v(i), 3).unwrap());
    }
}

#[test]
fn small_cm_pairs_are_isogenous() {
    let v = |x: i64| AlgebraicNumber::from_i64(x);
    // j(i), j(2i)
    assert_eq!(is_isogenous(&v(1728), &v(287496), 3).unwrap(), Some(2));
    // j(ζ3), j(√-3)
    assert_eq!(is_isogenous(&v(0), &v(54000), 3).unwrap(), Some(2));
}

#[test]
fn singular_moduli_are_not_roots_of_unity_and_clear_lehmer() {
    for d in enumerate_discriminants(150).unwrap() {
        for s in singular_moduli(d).unwrap() {
            assert!(!is_root_of_unity(s.value()), "D = {d}");
            if s.is_zero() {
                continue;
            }
            let h = weil_height(s.value()).unwrap();
            let deg = s.value().degree() as u64;
            if deg >= 2 {
                assert!(h.value + h.error_bound >= bound_lehmer(deg).unwrap(), "D = {d}: h = {}", h.value);
            }
        }
    }
}
