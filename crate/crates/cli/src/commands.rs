//! One runner per document kind. Each takes its resolved parameters, so a
//! stored document can be recomputed from its `parameters` field alone.

use crate::document::Document;
use crate::input::{element, element_text, number, singular};
use crate::Failure;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use singmod::arith::{BigComplex, RealBall};
use singmod::modfun::{hilbert_class_poly_report, j_eval, singular_moduli, PrecisionPolicy};
use singmod::modpoly::{
    is_isogenous, modular_polynomial_bounded, modular_polynomial_by_interpolation, modular_polynomial_by_q_expansion,
    phi_zero_test, ModularPolynomial, ZeroTest,
};
use singmod::qforms::{class_number, enumerate_discriminants, reduced_forms, Discriminant};
use singmod::relations::{find_relation, Mode, RelationCertificate};
use singmod::search::{
    complexity_of_tuple, modular_dependent_complexity, modular_pairs_report, pair_product_check_with,
    singular_dependent_search_with, verify_isogenous_triple, verify_singular_triple, ComplexityReport,
    PredicateBudget, SearchReport, SingularSearchOptions, Status,
};
use singmod::trees::{local_class, separate, tree_distance, SeparationWitness};
use std::fmt::Write as _;

/// How a command ended, before error handling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Findings,
    Partial,
    Refuted,
}

pub struct Output {
    pub doc: Document,
    pub text: String,
    pub outcome: Outcome,
}

fn output<P: Serialize, T: Serialize>(
    kind: &str,
    params: &P,
    payload: &T,
    verification: Value,
    text: String,
    outcome: Outcome,
) -> Result<Output, Failure> {
    let v = |x: serde_json::Result<Value>| x.map_err(|e| Failure::Io(format!("serialization failed: {e}")));
    Ok(Output { doc: Document::new(kind, v(serde_json::to_value(params))?, v(serde_json::to_value(payload))?, verification), text, outcome })
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = w[i])).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(w.iter().map(|&n| "-".repeat(n)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn disc(d: i64) -> Result<Discriminant, Failure> {
    Ok(Discriminant::new(d)?)
}

fn ball_text(b: &RealBall, digits: usize) -> String {
    b.to_decimal(digits)
}

fn radius_text(z: &BigComplex) -> String {
    format!("{:.3e}", z.error_radius().to_f64())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscriminantsParams {
    pub bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_number: Option<usize>,
}

pub fn discriminants(p: &DiscriminantsParams) -> Result<Output, Failure> {
    let rows: Vec<(i64, usize)> = enumerate_discriminants(p.bound)?
        .into_iter()
        .map(|d| (d.value(), class_number(d)))
        .filter(|(_, h)| p.class_number.is_none_or(|c| c == *h))
        .collect();
    let payload: Vec<Value> = rows.iter().map(|(d, h)| json!({"discriminant": d, "class_number": h})).collect();
    let mut text = table(&["D", "h(D)"], &rows.iter().map(|(d, h)| vec![d.to_string(), h.to_string()]).collect::<Vec<_>>());
    let _ = writeln!(text, "{} discriminants with |D| <= {}", rows.len(), p.bound);
    output("discriminants", p, &payload, json!({"method": "reduced_form_count"}), text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscriminantParams {
    pub discriminant: i64,
}

pub fn forms(p: &DiscriminantParams) -> Result<Output, Failure> {
    let fs = reduced_forms(disc(p.discriminant)?);
    let payload: Vec<[i64; 3]> = fs.iter().map(|f| [f.a, f.b, f.c]).collect();
    let mut text = table(&["a", "b", "c"], &payload.iter().map(|f| f.iter().map(|x| x.to_string()).collect()).collect::<Vec<_>>());
    let _ = writeln!(text, "h({}) = {}", p.discriminant, fs.len());
    output("forms", p, &payload, json!({"method": "exhaustive_reduction"}), text, Outcome::Ok)
}

pub fn class_poly(p: &DiscriminantParams) -> Result<Output, Failure> {
    let r = hilbert_class_poly_report(disc(p.discriminant)?, PrecisionPolicy::default())?;
    let residual = format!("{:.3e}", r.max_residual);
    let text = format!(
        "H_{}(X) = {}\ndegree {}, rounded at {} bits, largest rounding residual {}\n",
        p.discriminant,
        r.poly,
        r.poly.degree(),
        r.bits,
        residual
    );
    let payload = json!({"coefficients": r.poly, "bits": r.bits});
    let verification = json!({"method": "rounding", "max_residual": residual, "threshold": "0.25"});
    output("class_polynomial", p, &payload, verification, text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JEvalParams {
    /// exact rationals, as `p/q` text
    pub re: String,
    pub im: String,
    pub precision_bits: u32,
}

pub fn j_value(p: &JEvalParams) -> Result<Output, Failure> {
    let parse = |s: &str| s.parse::<BigRational>().map_err(|_| Failure::Usage(format!("bad rational {s:?}")));
    let wp = p.precision_bits + 64;
    let z = BigComplex::new(RealBall::from_rational(&parse(&p.re)?, wp), RealBall::from_rational(&parse(&p.im)?, wp));
    let j = j_eval(&z, p.precision_bits)?;
    let digits = (p.precision_bits as f64 * std::f64::consts::LOG10_2) as usize - 2;
    let (re, im, rad) = (ball_text(&j.re, digits), ball_text(&j.im, digits), radius_text(&j));
    let text = format!("j({} + {} i) =\n  re {re}\n  im {im}\n  radius {rad}\n", p.re, p.im);
    output("j_value", p, &json!({"re": re, "im": im}), json!({"method": "ball_arithmetic", "radius": rad}), text, Outcome::Ok)
}

pub fn moduli(p: &DiscriminantParams) -> Result<Output, Failure> {
    let ms = singular_moduli(disc(p.discriminant)?)?;
    let mut payload = Vec::new();
    let mut rows = Vec::new();
    for m in &ms {
        let f = m.cm().form();
        let z = m.value().approx(128)?;
        let (re, im) = (ball_text(&z.re, 20), ball_text(&z.im, 20));
        let exact = m.as_integer().map(|n| n.to_string());
        rows.push(vec![format!("({},{},{})", f.a, f.b, f.c), exact.clone().unwrap_or_else(|| re.clone()), im.clone()]);
        payload.push(json!({"form": [f.a, f.b, f.c], "min_poly": m.value().min_poly(), "integer": exact, "re": re, "im": im}));
    }
    let mut text = table(&["form", "value (re)", "im"], &rows);
    let _ = writeln!(text, "{} singular moduli of discriminant {}", ms.len(), p.discriminant);
    output("singular_moduli", p, &payload, json!({"method": "root_isolation"}), text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationParams {
    pub members: Vec<String>,
    pub bound: u64,
}

pub fn relation_find(p: &RelationParams) -> Result<Output, Failure> {
    let xs = p.members.iter().map(|s| number(s)).collect::<Result<Vec<_>, _>>()?;
    let cert = find_relation(&xs, p.bound)?;
    let mut text = String::new();
    for (i, s) in p.members.iter().enumerate() {
        let _ = writeln!(text, "x{} = {s}", i + 1);
    }
    let verification = match &cert {
        Some(c) => {
            let _ = writeln!(
                text,
                "relation: exponents {:?}, {}{}",
                c.exponents,
                mode_text(c),
                if c.minimal { ", minimal" } else { "" }
            );
            json!({"status": mode_name(c), "precision": c.numeric_precision})
        }
        None => {
            let _ = writeln!(text, "no relation with exponents of absolute value <= {}", p.bound);
            json!({"status": "none", "bound": p.bound})
        }
    };
    output("relation_certificate", p, &cert, verification, text, Outcome::Ok)
}

fn mode_name(c: &RelationCertificate) -> &'static str {
    match c.mode {
        Mode::Exact => "exact",
        Mode::CertifiedNumeric => "certified_numeric",
    }
}

fn mode_text(c: &RelationCertificate) -> String {
    match c.numeric_precision {
        Some(bits) => format!("certified numerically at {bits} bits"),
        None => "verified exactly".into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    QExpansion,
    Interpolation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModpolyParams {
    pub level: u64,
    pub method: Method,
}

pub fn build_modpoly(p: &ModpolyParams) -> Result<ModularPolynomial, Failure> {
    Ok(match p.method {
        Method::QExpansion => modular_polynomial_by_q_expansion(p.level)?,
        Method::Interpolation => modular_polynomial_by_interpolation(p.level)?,
    })
}

pub fn modpoly_build(p: &ModpolyParams) -> Result<Output, Failure> {
    let phi = build_modpoly(p)?;
    let text = format!(
        "Φ_{}: degree {} in each variable, {} nonzero terms, largest coefficient {} bits, symmetric: {}\n",
        p.level,
        phi.degree(),
        phi.terms().count(),
        phi.max_coeff_bits(),
        phi.is_symmetric()
    );
    let verification = json!({"method": "integral_rounding", "symmetric": phi.is_symmetric()});
    output("modular_polynomial", p, &phi, verification, text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModpolyEvalParams {
    pub level: u64,
    pub x: String,
    pub y: String,
}

pub fn modpoly_eval(p: &ModpolyEvalParams) -> Result<Output, Failure> {
    let (x, y) = (number(&p.x)?, number(&p.y)?);
    let phi = modular_polynomial_bounded(p.level, p.level)?;
    let t = phi_zero_test(&phi, &x, &y)?;
    let (method, precision) = match t {
        ZeroTest::Exact(_) => ("exact", None),
        ZeroTest::NumericNonzero { precision } => ("numeric_nonzero", Some(precision)),
        ZeroTest::CertifiedZero { precision } => ("certified_zero", Some(precision)),
    };
    let text = format!(
        "Φ_{}({}, {}) {} 0 ({}{})\n",
        p.level,
        p.x,
        p.y,
        if t.is_zero() { "=" } else { "≠" },
        method.replace('_', " "),
        precision.map(|b| format!(", {b} bits")).unwrap_or_default()
    );
    let payload = json!({"zero": t.is_zero()});
    output("modular_polynomial_zero_test", p, &payload, json!({"method": method, "precision": precision}), text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsogenyParams {
    pub x: String,
    pub y: String,
    pub level_max: u64,
}

pub fn isogeny(p: &IsogenyParams) -> Result<Output, Failure> {
    let n = is_isogenous(&number(&p.x)?, &number(&p.y)?, p.level_max)?;
    let text = match n {
        Some(n) => format!("{} and {} are {n}-isogenous (least level)\n", p.x, p.y),
        None => format!("no isogeny of level <= {}\n", p.level_max),
    };
    output("isogeny", p, &json!({"level": n}), json!({"method": "modular_polynomial_zero_test"}), text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeDistanceParams {
    pub prime: u64,
    pub elements: Vec<String>,
}

pub fn tree_dist(p: &TreeDistanceParams) -> Result<Output, Failure> {
    if p.elements.len() != 2 {
        return Err(Failure::Usage("tree distance takes exactly two elements".into()));
    }
    let classes = p
        .elements
        .iter()
        .map(|s| Ok(local_class(&element(s)?, p.prime)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    let d = tree_distance(&classes[0], &classes[1])?;
    let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
    let text = format!("d_{}({}, {}) = {d}\n", p.prime, names[0], names[1]);
    output("tree_distance", p, &json!({"distance": d, "classes": names}), json!({"method": "elementary_divisors"}), text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparateParams {
    pub elements: Vec<String>,
}

pub fn tree_separate(p: &SeparateParams) -> Result<Output, Failure> {
    let gs = p.elements.iter().map(|s| element(s)).collect::<Result<Vec<_>, _>>()?;
    let w = separate(&gs)?;
    let mut text = String::new();
    let g = &w.gamma;
    let _ = writeln!(text, "gamma = ({},{};{},{})", g[0][0], g[0][1], g[1][0], g[1][1]);
    let _ = writeln!(text, "primes used: {:?}", w.primes);
    let _ = writeln!(text, "{}", w.z_description);
    let rows: Vec<Vec<String>> = w
        .elements
        .iter()
        .zip(&w.per_index)
        .enumerate()
        .map(|(i, (e, z))| vec![i.to_string(), element_text(e), if *z { "yes".into() } else { "no".into() }])
        .collect();
    text += &table(&["i", "g_i", "j(g_i z) = 0"], &rows);
    let _ = writeln!(text, "survivor: {}", w.survivor);
    let ok = w.verify()?;
    output("separation_witness", p, &w, json!({"method": "exact_j_zero_test", "verified": ok}), text, Outcome::Ok)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "search", rename_all = "snake_case")]
pub enum SearchParams {
    SingularDependent { delta_max: u64, n_max: u64, rational_only: bool, exponent_bound: u64, max_candidates: u64 },
    PairProduct { delta_max: u64, max_pairs: u64 },
    ModularPairs { m_max: u64, level_max: u64, max_evaluations: u64, c11: String },
}

pub fn search(p: &SearchParams) -> Result<Output, Failure> {
    let report = match p {
        SearchParams::SingularDependent { delta_max, n_max, rational_only, exponent_bound, max_candidates } => {
            let opts = SingularSearchOptions {
                delta_max: *delta_max,
                n_max: *n_max as usize,
                rational_only: *rational_only,
                exponent_bound: *exponent_bound,
                max_candidates: *max_candidates,
            };
            singular_dependent_search_with(&opts)?
        }
        SearchParams::PairProduct { delta_max, max_pairs } => pair_product_check_with(*delta_max, *max_pairs)?,
        SearchParams::ModularPairs { m_max, level_max, max_evaluations, c11 } => {
            let mut r = modular_pairs_report(*m_max, *level_max, *max_evaluations)?;
            let c: BigRational = c11.parse().map_err(|_| Failure::Usage(format!("bad constant {c11:?}")))?;
            let bound = singmod::modpoly::modular_pair_level_bound(*m_max, *m_max, crate::config::ratio_to_f64(&c));
            r.caveats.push(format!("with c11 = {c11} the level bound for orders <= {m_max} is {bound:.0}; levels above {level_max} were not searched"));
            r
        }
    };
    let outcome = match report.status() {
        Status::Clean => Outcome::Ok,
        Status::Findings => Outcome::Findings,
        Status::Partial => Outcome::Partial,
    };
    let text = report_text(&report);
    let verified = report.reverify_all()?;
    output("search_report", p, &report, json!({"method": "per_finding_reverification", "verified": verified}), text, outcome)
}

fn report_text(r: &SearchReport) -> String {
    use singmod::search::Finding;
    let mut text = String::new();
    let status = match r.status() {
        Status::Clean => "complete, no findings",
        Status::Findings => "complete, with findings",
        Status::Partial => "partial (budget exhausted)",
    };
    let _ = writeln!(text, "status: {status}");
    let rows: Vec<Vec<String>> = r
        .findings
        .iter()
        .map(|f| match f {
            Finding::DependentTuple(t) => vec![
                format!("{:?}", t.discriminants),
                format!("{:?}", t.primitive_exponents),
                if t.primitive_value_order == 2 { "-1".into() } else { "1".into() },
                t.complexity.delta.to_string(),
            ],
            Finding::UnitPair(u) => vec![format!("{:?}", u.discriminants), "[1, 1]".into(), "1".into(), "-".into()],
            Finding::ModularPair(c) => vec![
                format!("zeta({},{}) zeta({},{})", c.order1, c.k1, c.order2, c.k2),
                format!("level {}", c.level),
                "0".into(),
                "-".into(),
            ],
        })
        .collect();
    if !rows.is_empty() {
        text += &table(&["members", "primitive relation", "value", "Δ"], &rows);
    }
    let _ = writeln!(text, "findings: {}", r.findings.len());
    let _ = writeln!(text, "exclusions: {}", r.exclusions);
    for (k, v) in &r.exclusion_reasons {
        let _ = writeln!(text, "  {k}: {v}");
    }
    let range: Vec<String> = r.completed_range.iter().map(|(k, v)| format!("{k} <= {v}")).collect();
    let _ = writeln!(text, "completed range: {}", range.join(", "));
    for c in &r.caveats {
        let _ = writeln!(text, "caveat: {c}");
    }
    text
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexityVariant {
    Tuple,
    Pair,
    IsogenousTriple,
    SingularTriple,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexityParams {
    pub variant: ComplexityVariant,
    pub members: Vec<String>,
    pub budget: PredicateBudget,
}

pub fn complexity(p: &ComplexityParams) -> Result<Output, Failure> {
    let need = |n: usize| {
        if p.members.len() == n {
            Ok(())
        } else {
            Err(Failure::Usage(format!("expected {n} members, got {}", p.members.len())))
        }
    };
    let report: Option<ComplexityReport> = match p.variant {
        ComplexityVariant::Tuple => {
            let ss = p.members.iter().map(|s| singular(s)).collect::<Result<Vec<_>, _>>()?;
            Some(complexity_of_tuple(&ss)?)
        }
        v => {
            let xs = p.members.iter().map(|s| number(s)).collect::<Result<Vec<_>, _>>()?;
            let b = &p.budget;
            match v {
                ComplexityVariant::Pair => {
                    need(2)?;
                    modular_dependent_complexity(&xs[0], &xs[1], b)?
                }
                ComplexityVariant::IsogenousTriple => {
                    need(3)?;
                    verify_isogenous_triple(&xs[0], &xs[1], &xs[2], b)?
                }
                _ => {
                    need(3)?;
                    verify_singular_triple(&xs[0], &xs[1], &xs[2], b)?
                }
            }
        }
    };
    let text = match &report {
        Some(r) => {
            let rows: Vec<Vec<String>> = r
                .components
                .iter()
                .map(|c| vec![c.name.clone(), c.value.to_string(), if c.counted { "yes".into() } else { "no".into() }])
                .collect();
            table(&["component", "value", "counted"], &rows) + &format!("Δ = {}\n", r.delta)
        }
        None => "no witness within the budget\n".into(),
    };
    output("complexity", p, &report, json!({"method": "exact_and_certified_predicates"}), text, Outcome::Ok)
}

/// Recompute a document of `kind` from its parameters.
pub fn rerun(kind: &str, params: &Value) -> Result<Output, Failure> {
    fn de<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, Failure> {
        serde_json::from_value(v.clone()).map_err(|e| Failure::Malformed(format!("bad parameters: {e}")))
    }
    match kind {
        "discriminants" => discriminants(&de(params)?),
        "forms" => forms(&de(params)?),
        "class_polynomial" => class_poly(&de(params)?),
        "j_value" => j_value(&de(params)?),
        "singular_moduli" => moduli(&de(params)?),
        "relation_certificate" => relation_find(&de(params)?),
        "modular_polynomial" => modpoly_build(&de(params)?),
        "modular_polynomial_zero_test" => modpoly_eval(&de(params)?),
        "isogeny" => isogeny(&de(params)?),
        "tree_distance" => tree_dist(&de(params)?),
        "separation_witness" => tree_separate(&de(params)?),
        "search_report" => search(&de(params)?),
        "complexity" => complexity(&de(params)?),
        k => Err(Failure::Malformed(format!("unknown document kind {k:?}"))),
    }
}

/// Check a stored document. Certificates are re-verified through their
/// module's verifier; everything else is recomputed and compared.
pub fn verify(doc: &Document) -> Result<Output, Failure> {
    let malformed = |e: serde_json::Error| Failure::Malformed(format!("bad payload: {e}"));
    let (ok, method) = match doc.kind.as_str() {
        "relation_certificate" if !doc.payload.is_null() => {
            let c: RelationCertificate = serde_json::from_value(doc.payload.clone()).map_err(malformed)?;
            (c.reverify()?.holds(), "relation_reverification")
        }
        "search_report" => {
            let r: SearchReport = serde_json::from_value(doc.payload.clone()).map_err(malformed)?;
            (r.reverify_all()?, "per_finding_reverification")
        }
        "separation_witness" => {
            let w: SeparationWitness = serde_json::from_value(doc.payload.clone()).map_err(malformed)?;
            (w.verify()?, "exact_j_zero_test")
        }
        "modular_polynomial" => {
            let phi: ModularPolynomial = serde_json::from_value(doc.payload.clone()).map_err(malformed)?;
            let p: ModpolyParams = serde_json::from_value(doc.parameters.clone()).map_err(malformed)?;
            (phi.level() == p.level && build_modpoly(&p)? == phi, "recomputation")
        }
        k => (rerun(k, &doc.parameters)?.doc.payload == doc.payload, "recomputation"),
    };
    let text = if ok {
        format!("verified: {} ({})\n", doc.kind, method.replace('_', " "))
    } else {
        format!("REFUTED: {} does not survive {}\n", doc.kind, method.replace('_', " "))
    };
    let outcome = if ok { Outcome::Ok } else { Outcome::Refuted };
    output("verification", &json!({"kind": doc.kind}), &json!({"verified": ok}), json!({"method": method}), text, outcome)
}
