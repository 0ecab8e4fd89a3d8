//! `singmod`: singular moduli, relations, modular polynomials and tree
//! separation from the command line.
//!
//! Exit codes:
//! - 0: success (for searches: complete, no findings; for `relation verify`: verified)
//! - 2: usage error (unknown subcommand, invalid flag or argument, bad configuration)
//! - 3: search completed with findings
//! - 4: search stopped at its budget (partial result)
//! - 5: domain error (input outside an operation's preconditions)
//! - 6: precision exhausted, series truncated or result indeterminate
//! - 7: `relation verify` refuted the document
//! - 8: I/O failure or malformed document

mod commands;
mod config;
mod document;
mod input;

use clap::{Args, Parser, Subcommand};
use commands::{
    ComplexityParams, ComplexityVariant, DiscriminantParams, DiscriminantsParams, IsogenyParams, JEvalParams, Method,
    ModpolyEvalParams, ModpolyParams, Outcome, RelationParams, SearchParams, SeparateParams, TreeDistanceParams,
};
use config::{parse_rational, Config, Overrides};
use document::{content_hash, Document};
use singmod::search::PredicateBudget;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FINDINGS: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;
pub const EXIT_DOMAIN: i32 = 5;
pub const EXIT_NUMERIC: i32 = 6;
pub const EXIT_REFUTED: i32 = 7;
pub const EXIT_IO: i32 = 8;

/// Why a command could not produce a result.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(singmod::Error),
    Io(String),
    Malformed(String),
}

impl From<singmod::Error> for Failure {
    fn from(e: singmod::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        use singmod::Error as E;
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Core(E::Domain(_)) => EXIT_DOMAIN,
            Failure::Core(E::Precision(_) | E::Truncation { .. } | E::Indeterminate(_)) => EXIT_NUMERIC,
            Failure::Core(E::Budget(_)) => EXIT_PARTIAL,
            Failure::Core(E::Certificate(_)) | Failure::Io(_) | Failure::Malformed(_) => EXIT_IO,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Malformed(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "singmod", version, about = "Singular moduli, multiplicative relations, modular polynomials and Bruhat-Tits separation")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// TOML configuration file
    #[arg(long, global = true, env = "SINGMOD_CONFIG")]
    config: Option<PathBuf>,
    /// also write a JSON document to the output directory
    #[arg(long, global = true, env = "SINGMOD_JSON")]
    json: bool,
    #[arg(long, global = true, env = "SINGMOD_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    /// working precision for numerical evaluation (at least 64)
    #[arg(long, global = true, env = "SINGMOD_PRECISION_BITS")]
    precision_bits: Option<u32>,
    /// largest |D| considered
    #[arg(long, global = true, env = "SINGMOD_DELTA_MAX")]
    delta_max: Option<u64>,
    /// largest tuple size
    #[arg(long, global = true, env = "SINGMOD_N_MAX")]
    n_max: Option<u64>,
    /// largest modular-polynomial level
    #[arg(long, global = true, env = "SINGMOD_LEVEL_MAX")]
    level_max: Option<u64>,
    /// largest root-of-unity order
    #[arg(long, global = true, env = "SINGMOD_M_MAX")]
    m_max: Option<u64>,
    /// worker threads for parallel searches
    #[arg(long, global = true, env = "SINGMOD_WORKERS")]
    workers: Option<usize>,
    /// surrogate constant as name=value, e.g. c7=2 (repeatable)
    #[arg(long = "surrogate", global = true, env = "SINGMOD_SURROGATE", value_delimiter = ',')]
    surrogates: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List discriminants with |D| <= bound and their class numbers
    Discriminants {
        /// defaults to delta_max
        #[arg(long)]
        bound: Option<u64>,
        /// keep only this class number
        #[arg(long)]
        class_number: Option<usize>,
    },
    /// Reduced forms of a discriminant
    Forms(Disc),
    /// Hilbert class polynomial of a discriminant
    ClassPoly(Disc),
    /// Evaluate j at re + im·i
    JEval {
        #[arg(long, allow_negative_numbers = true)]
        re: String,
        #[arg(long, allow_negative_numbers = true)]
        im: String,
    },
    /// Singular moduli of a discriminant
    Moduli(Disc),
    /// Find multiplicative relations; verify saved documents
    #[command(subcommand)]
    Relation(RelationCmd),
    /// Build and evaluate classical modular polynomials
    #[command(subcommand)]
    Modpoly(ModpolyCmd),
    /// Least level N <= level_max with Φ_N(x, y) = 0
    Isogeny {
        #[arg(long, allow_negative_numbers = true)]
        x: String,
        #[arg(long, allow_negative_numbers = true)]
        y: String,
    },
    /// Bruhat-Tits tree distances and separation witnesses
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Bounded searches with exclusion accounting
    #[command(subcommand)]
    Search(SearchCmd),
    /// Complexity of tuples, pairs and triples
    #[command(subcommand)]
    Complexity(ComplexityCmd),
}

#[derive(Args)]
struct Disc {
    /// discriminant, e.g. -23
    #[arg(short = 'D', long = "disc", allow_negative_numbers = true)]
    d: i64,
}

#[derive(Subcommand)]
enum RelationCmd {
    /// Least multiplicative relation among numbers (p/q, zeta:m:k or cm:D:i)
    Find {
        #[arg(long = "member", required = true, allow_negative_numbers = true)]
        members: Vec<String>,
        /// exponent bound; defaults to the surrogate-scaled search radius
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Re-check a JSON document written with --json
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum ModpolyCmd {
    /// Build Φ_N
    Build {
        #[arg(short = 'N', long)]
        level: u64,
        #[arg(long, value_enum, default_value = "q-expansion")]
        method: Method,
        /// print every coefficient
        #[arg(long)]
        full: bool,
    },
    /// Decide Φ_N(x, y) = 0
    Eval {
        #[arg(short = 'N', long)]
        level: u64,
        #[arg(long, allow_negative_numbers = true)]
        x: String,
        #[arg(long, allow_negative_numbers = true)]
        y: String,
    },
}

#[derive(Subcommand)]
enum TreeCmd {
    /// Distance between the classes of two elements in the tree at p
    Distance {
        #[arg(short = 'p', long)]
        prime: u64,
        /// matrix "a,b,c,d" (repeat twice)
        #[arg(long = "g", required = true, allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Find z with j(g_i z) = 0 for exactly one i
    Separate {
        /// matrix "a,b,c,d" (repeatable)
        #[arg(long = "g", required = true, allow_hyphen_values = true)]
        elements: Vec<String>,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Minimal multiplicatively dependent tuples of singular moduli
    SingularDependent {
        #[arg(long)]
        rational_only: bool,
        #[arg(long, default_value_t = singmod::search::dependent::DEFAULT_EXPONENT_BOUND)]
        exponent_bound: u64,
        #[arg(long, default_value_t = singmod::search::dependent::DEFAULT_MAX_CANDIDATES)]
        max_candidates: u64,
    },
    /// Pairs of singular moduli with product 1
    PairProduct {
        #[arg(long, default_value_t = singmod::search::product::DEFAULT_MAX_PAIRS)]
        max_pairs: u64,
    },
    /// Pairs of distinct roots of unity on a modular curve Φ_N = 0
    ModularPairs {
        #[arg(long, default_value_t = u64::MAX)]
        max_evaluations: u64,
    },
}

#[derive(Args)]
struct Members {
    /// numbers as p/q, zeta:m:k or cm:D:i
    #[arg(long = "member", required = true, allow_negative_numbers = true)]
    members: Vec<String>,
    #[arg(long, default_value_t = singmod::search::dependent::DEFAULT_EXPONENT_BOUND)]
    exponent_bound: u64,
}

#[derive(Subcommand)]
enum ComplexityCmd {
    /// max |D| over singular moduli given as cm:D:i
    Tuple(Members),
    /// least max(N, |a|, |b|, c) for a modular-dependent pair
    Pair(Members),
    /// root of unity x3 isogenous to dependent x1, x2
    IsogenousTriple(Members),
    /// singular x1, dependent x1 and x2, x2 isogenous to the root of unity x3
    SingularTriple(Members),
}

fn overrides(g: &Global) -> Overrides {
    Overrides {
        precision_bits: g.precision_bits,
        delta_max: g.delta_max,
        n_max: g.n_max,
        level_max: g.level_max,
        m_max: g.m_max,
        worker_count: g.workers,
        output_dir: g.output_dir.clone(),
        surrogates: g.surrogates.clone(),
    }
}

fn clean(specs: &[String]) -> Vec<String> {
    specs.iter().map(|s| s.trim().to_string()).collect()
}

fn level_checked(level: u64, c: &Config) -> Result<u64, Failure> {
    if level == 0 || level > c.level_max {
        return Err(Failure::Usage(format!("level {level} outside 1..={} (raise --level-max)", c.level_max)));
    }
    Ok(level)
}

/// Default exponent bound for `relation find`: the heuristic search radius
/// scaled by `c7`, never below the search default and capped at 10^6.
fn relation_bound(specs: &[String], c: &Config) -> Result<u64, Failure> {
    use singmod::relations::{exponent_search_radius, weil_height};
    let floor = singmod::search::dependent::DEFAULT_EXPONENT_BOUND;
    let xs = specs.iter().map(|s| input::number(s)).collect::<Result<Vec<_>, _>>()?;
    let d = xs.iter().map(|x| x.degree() as u64).product::<u64>().max(2);
    let hs = xs.iter().map(|x| weil_height(x).map(|h| h.value)).collect::<Result<Vec<_>, _>>()?;
    if xs.len() < 2 || hs.iter().any(|&h| h <= 0.0) {
        return Ok(floor);
    }
    let r = exponent_search_radius(xs.len(), d, &hs, c.surrogate("c7"))?;
    Ok(r.clamp(floor, 1_000_000))
}

fn execute(cli: &Cli, c: &Config) -> Result<commands::Output, Failure> {
    use Command as C;
    match &cli.command {
        C::Discriminants { bound, class_number } => {
            commands::discriminants(&DiscriminantsParams { bound: bound.unwrap_or(c.delta_max), class_number: *class_number })
        }
        C::Forms(d) => commands::forms(&DiscriminantParams { discriminant: d.d }),
        C::ClassPoly(d) => commands::class_poly(&DiscriminantParams { discriminant: d.d }),
        C::JEval { re, im } => {
            let q = |s: &str| parse_rational(s).map(|q| q.to_string()).map_err(Failure::Usage);
            commands::j_value(&JEvalParams { re: q(re)?, im: q(im)?, precision_bits: c.precision_bits })
        }
        C::Moduli(d) => commands::moduli(&DiscriminantParams { discriminant: d.d }),
        C::Relation(RelationCmd::Find { members, bound }) => {
            let members = clean(members);
            let bound = match bound {
                Some(b) => *b,
                None => relation_bound(&members, c)?,
            };
            commands::relation_find(&RelationParams { members, bound })
        }
        C::Relation(RelationCmd::Verify { file }) => verify_file(file),
        C::Modpoly(ModpolyCmd::Build { level, method, .. }) => {
            commands::modpoly_build(&ModpolyParams { level: level_checked(*level, c)?, method: *method })
        }
        C::Modpoly(ModpolyCmd::Eval { level, x, y }) => commands::modpoly_eval(&ModpolyEvalParams {
            level: level_checked(*level, c)?,
            x: x.trim().into(),
            y: y.trim().into(),
        }),
        C::Isogeny { x, y } => {
            commands::isogeny(&IsogenyParams { x: x.trim().into(), y: y.trim().into(), level_max: c.level_max })
        }
        C::Tree(TreeCmd::Distance { prime, elements }) => {
            let elements = elements.iter().map(|s| Ok(input::element_text(&input::element(s)?))).collect::<Result<_, Failure>>()?;
            commands::tree_dist(&TreeDistanceParams { prime: *prime, elements })
        }
        C::Tree(TreeCmd::Separate { elements }) => {
            let elements = elements.iter().map(|s| Ok(input::element_text(&input::element(s)?))).collect::<Result<_, Failure>>()?;
            commands::tree_separate(&SeparateParams { elements })
        }
        C::Search(s) => commands::search(&match s {
            SearchCmd::SingularDependent { rational_only, exponent_bound, max_candidates } => SearchParams::SingularDependent {
                delta_max: c.delta_max,
                n_max: c.n_max,
                rational_only: *rational_only,
                exponent_bound: *exponent_bound,
                max_candidates: *max_candidates,
            },
            SearchCmd::PairProduct { max_pairs } => SearchParams::PairProduct { delta_max: c.delta_max, max_pairs: *max_pairs },
            SearchCmd::ModularPairs { max_evaluations } => SearchParams::ModularPairs {
                m_max: c.m_max,
                level_max: c.level_max,
                max_evaluations: *max_evaluations,
                c11: c.surrogate_constants["c11"].to_string(),
            },
        }),
        C::Complexity(k) => {
            let (variant, m) = match k {
                ComplexityCmd::Tuple(m) => (ComplexityVariant::Tuple, m),
                ComplexityCmd::Pair(m) => (ComplexityVariant::Pair, m),
                ComplexityCmd::IsogenousTriple(m) => (ComplexityVariant::IsogenousTriple, m),
                ComplexityCmd::SingularTriple(m) => (ComplexityVariant::SingularTriple, m),
            };
            let budget =
                PredicateBudget { level_max: c.level_max, exponent_bound: m.exponent_bound, discriminant_budget: c.delta_max };
            commands::complexity(&ComplexityParams { variant, members: clean(&m.members), budget })
        }
    }
}

fn verify_file(path: &Path) -> Result<commands::Output, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    // files written by --json are named by their hash
    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
        if stem.len() == 64 && stem.bytes().all(|b| b.is_ascii_hexdigit()) && stem != content_hash(&bytes) {
            return Err(Failure::Malformed(format!("{} does not match its content hash", path.display())));
        }
    }
    let doc = Document::from_bytes(&bytes).map_err(Failure::Malformed)?;
    commands::verify(&doc)
}

/// Parse `argv`, run the command and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let config = match Config::load(cli.global.config.as_deref(), &overrides(&cli.global)) {
        Ok(c) => c,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    if let Some(n) = config.worker_count {
        // fails only if a pool already exists, in which case it is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = execute(&cli, &config).and_then(|o| {
        let mut text = o.text.clone();
        if let Command::Modpoly(ModpolyCmd::Build { full: true, .. }) = &cli.command {
            let phi: singmod::modpoly::ModularPolynomial =
                serde_json::from_value(o.doc.payload.clone()).map_err(|e| Failure::Malformed(e.to_string()))?;
            text += &phi.to_text();
        }
        let is_verify = matches!(cli.command, Command::Relation(RelationCmd::Verify { .. }));
        if cli.global.json && !is_verify {
            let path = o.doc.write(&config.output_dir).map_err(|e| Failure::Io(format!("cannot write document: {e}")))?;
            text += &format!("wrote {}\n", path.display());
        }
        Ok((text, o.outcome))
    });
    match result {
        Ok((text, outcome)) => {
            let _ = write!(out, "{text}");
            match outcome {
                Outcome::Ok => EXIT_OK,
                Outcome::Findings => EXIT_FINDINGS,
                Outcome::Partial => EXIT_PARTIAL,
                Outcome::Refuted => EXIT_REFUTED,
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn main() {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
