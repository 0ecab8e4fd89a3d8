//! Parsing of numbers and matrices given on the command line.
//!
//! Numbers are written as
//! - `p` or `p/q` (also decimals like `0.5`): a rational number;
//! - `zeta:m:k`: `exp(2πi k/m)`;
//! - `cm:D:i`: the singular modulus at the `i`-th reduced form of discriminant `D`.

use crate::config::parse_rational;
use crate::Failure;
use singmod::modfun::{singular_moduli, AlgebraicNumber, SingularModulus};
use singmod::qforms::Discriminant;
use singmod::trees::GL2QElement;

fn usage(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn int<T: std::str::FromStr>(s: &str, what: &str, spec: &str) -> Result<T, Failure> {
    s.trim().parse().map_err(|_| usage(format!("bad {what} in {spec:?}")))
}

pub fn singular(spec: &str) -> Result<SingularModulus, Failure> {
    let rest = spec.strip_prefix("cm:").ok_or_else(|| usage(format!("expected cm:D:i, got {spec:?}")))?;
    let (d, i) = rest.rsplit_once(':').ok_or_else(|| usage(format!("expected cm:D:i, got {spec:?}")))?;
    let d = Discriminant::new(int(d, "discriminant", spec)?)?;
    let i: usize = int(i, "index", spec)?;
    let mut all = singular_moduli(d)?;
    if i >= all.len() {
        return Err(usage(format!("index {i} out of range: D = {d} has {} singular moduli", all.len())));
    }
    Ok(all.swap_remove(i))
}

pub fn number(spec: &str) -> Result<AlgebraicNumber, Failure> {
    let s = spec.trim();
    if s.starts_with("cm:") {
        return Ok(singular(s)?.value().clone());
    }
    if let Some(rest) = s.strip_prefix("zeta:") {
        let (m, k) = rest.split_once(':').ok_or_else(|| usage(format!("expected zeta:m:k, got {spec:?}")))?;
        return Ok(AlgebraicNumber::root_of_unity(int(m, "order", spec)?, int(k, "exponent", spec)?)?);
    }
    parse_rational(s).map(|q| AlgebraicNumber::from_rational(&q)).map_err(usage)
}

/// A matrix as `"a,b,c,d"` (row by row) or `"a,b;c,d"`; entries may be rational.
pub fn element(spec: &str) -> Result<GL2QElement, Failure> {
    let s = spec.trim();
    let text = if s.contains(';') {
        s.to_string()
    } else {
        let es: Vec<&str> = s.split(',').collect();
        if es.len() != 4 {
            return Err(usage(format!("expected four entries a,b,c,d, got {spec:?}")));
        }
        format!("{},{};{},{}", es[0], es[1], es[2], es[3])
    };
    Ok(GL2QElement::parse(&text)?)
}

/// The canonical `a,b;0,d` text of an element, accepted back by [`element`].
pub fn element_text(g: &GL2QElement) -> String {
    let (a, b, d) = g.entries();
    format!("{a},{b};0,{d}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use singmod::modfun::Source;

    #[test]
    fn numbers() {
        assert_eq!(number("1728").unwrap().as_rational().unwrap(), BigRational::from_integer(1728.into()));
        assert!(matches!(number("zeta:12:5").unwrap().source(), Source::RootOfUnity { order: 12, k: 5 }));
        assert_eq!(number("cm:-4:0").unwrap().as_rational().unwrap(), BigRational::from_integer(1728.into()));
        assert_eq!(number("cm:-23:1").unwrap().degree(), 3);
        assert!(number("cm:-23:3").is_err());
        assert!(number("zeta:4:2").is_err());
        assert!(number("x").is_err());
    }

    #[test]
    fn elements() {
        let g = element("1,0,0,2").unwrap();
        assert_eq!(element(&element_text(&g)).unwrap(), g);
        assert_eq!(element("1,0;0,2").unwrap(), g);
        assert_eq!(element("2,0,0,4").unwrap(), g);
        assert!(element("1,0,0").is_err());
        assert!(element("0,0,0,0").is_err());
    }
}
