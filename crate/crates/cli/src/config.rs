//! Run configuration: built-in defaults, then the TOML file, then environment
//! variables and flags (clap resolves those two, flags first).

use num_rational::BigRational;
use num_traits::Signed;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Surrogates for constants that only size searches; both default to 1.
/// `c7` scales the exponent radius used by `relation find`, `c11` the level
/// bound `c11 · M^5` reported by the modular-pair search.
pub const SURROGATE_NAMES: [&str; 2] = ["c7", "c11"];

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub precision_bits: u32,
    pub delta_max: u64,
    pub n_max: u64,
    pub level_max: u64,
    pub m_max: u64,
    /// `None` leaves the thread count to rayon
    pub worker_count: Option<usize>,
    pub output_dir: PathBuf,
    pub surrogate_constants: BTreeMap<String, BigRational>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: 128,
            delta_max: 200,
            n_max: 3,
            level_max: 10,
            m_max: 12,
            worker_count: None,
            output_dir: PathBuf::from("singmod-out"),
            surrogate_constants: SURROGATE_NAMES.iter().map(|n| (n.to_string(), BigRational::from_integer(1.into()))).collect(),
        }
    }
}

/// Values given on the command line or in the environment.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision_bits: Option<u32>,
    pub delta_max: Option<u64>,
    pub n_max: Option<u64>,
    pub level_max: Option<u64>,
    pub m_max: Option<u64>,
    pub worker_count: Option<usize>,
    pub output_dir: Option<PathBuf>,
    /// `name=value` pairs
    pub surrogates: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    precision_bits: Option<u32>,
    delta_max: Option<u64>,
    n_max: Option<u64>,
    level_max: Option<u64>,
    m_max: Option<u64>,
    worker_count: Option<usize>,
    output_dir: Option<PathBuf>,
    #[serde(default)]
    surrogate_constants: BTreeMap<String, Number>,
}

/// A rational written as a TOML integer or as a string like `"3/2"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            Number::Int(n) => Ok(BigRational::from_integer((*n).into())),
            Number::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Ok(q) = s.parse::<BigRational>() {
        return Ok(q);
    }
    // decimal notation
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').ok_or_else(|| format!("not a rational number: {s:?}"))?;
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("not a rational number: {s:?}"));
    }
    let digits = format!("{int}{frac}");
    let num: num_bigint::BigInt = if digits.is_empty() { 0.into() } else { digits.parse().map_err(|_| format!("not a rational number: {s:?}"))? };
    let den = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
    let q = BigRational::new(num, den);
    Ok(if neg { -q } else { q })
}

impl Config {
    pub fn load(file: Option<&Path>, o: &Overrides) -> Result<Config, String> {
        let fc: FileConfig = match file {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
                toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?
            }
            None => FileConfig::default(),
        };
        let d = Config::default();
        let mut surrogate_constants = d.surrogate_constants;
        for (k, v) in &fc.surrogate_constants {
            surrogate_constants.insert(k.clone(), v.to_rational()?);
        }
        for kv in &o.surrogates {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected name=value, got {kv:?}"))?;
            surrogate_constants.insert(k.trim().to_string(), parse_rational(v)?);
        }
        let c = Config {
            precision_bits: o.precision_bits.or(fc.precision_bits).unwrap_or(d.precision_bits),
            delta_max: o.delta_max.or(fc.delta_max).unwrap_or(d.delta_max),
            n_max: o.n_max.or(fc.n_max).unwrap_or(d.n_max),
            level_max: o.level_max.or(fc.level_max).unwrap_or(d.level_max),
            m_max: o.m_max.or(fc.m_max).unwrap_or(d.m_max),
            worker_count: o.worker_count.or(fc.worker_count),
            output_dir: o.output_dir.clone().or(fc.output_dir).unwrap_or(d.output_dir),
            surrogate_constants,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), String> {
        if self.precision_bits < 64 {
            return Err(format!("precision_bits must be at least 64, got {}", self.precision_bits));
        }
        for (name, v) in [("delta_max", self.delta_max), ("n_max", self.n_max), ("level_max", self.level_max), ("m_max", self.m_max)] {
            if v == 0 {
                return Err(format!("{name} must be positive"));
            }
        }
        if self.worker_count == Some(0) {
            return Err("worker_count must be positive".into());
        }
        for (k, v) in &self.surrogate_constants {
            if !SURROGATE_NAMES.contains(&k.as_str()) {
                return Err(format!("unknown surrogate constant {k:?}; known: {}", SURROGATE_NAMES.join(", ")));
            }
            if !v.is_positive() {
                return Err(format!("surrogate constant {k} must be positive"));
            }
        }
        Ok(())
    }

    pub fn surrogate(&self, name: &str) -> f64 {
        let q = &self.surrogate_constants[name];
        ratio_to_f64(q)
    }
}

pub fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
