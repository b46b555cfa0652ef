//! The `kla` command line.

mod algebra;
mod graphs;
mod poly;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kla_core::arith::{FieldSpec, PrimeField, Rationals};
use thiserror::Error;

use crate::frontend::{parse_graph, parse_presentation, GraphSource, ParseError, PresentationSource};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] kla_core::Error),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

#[derive(Debug, Parser)]
#[command(name = "kla", version, about = "Graded Lie algebras from presentations: dimensions, cohomology, Koszul and Bloch-Kato checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Highest degree computed.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: u32,
    /// `rational` or an odd prime; overrides the field named in the input file.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Emit a JSON report on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// How subalgebras are sampled: `coordinate`, `random:COUNT` or `list:FILE`.
    #[arg(long, global = true, default_value = "coordinate")]
    pub strategy: String,
    /// Fail unless the computed Betti rows stop exactly at row N.
    #[arg(long, global = true, value_name = "N")]
    pub assert_cd: Option<usize>,
    /// Fail unless the Betti table is diagonal.
    #[arg(long, global = true)]
    pub assert_koszul: bool,
    /// Fail unless every sampled standard subalgebra is quadratic.
    #[arg(long, global = true)]
    pub assert_bk: bool,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// A presentation (`.lie`) file.
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GraphInput {
    /// A graph file.
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PolyInput {
    /// A graph (clique polynomial) or presentation (Betti diagonal) file.
    pub file: Option<PathBuf>,
    /// Coefficients `b_0,b_1,...` of a Poincaré polynomial.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "file")]
    pub poly: Option<String>,
    /// Allow negative coefficients in `--poly`.
    #[arg(long, requires = "poly")]
    pub hypothetical: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Derived,
    Ucs,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dimensions of the graded pieces.
    Dims(Input),
    /// Hilbert series of the algebra and of its enveloping algebra.
    Hilbert(Input),
    /// Bigraded Betti numbers.
    Betti {
        #[command(flatten)]
        input: Input,
        /// Highest homological degree (all by default).
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Generators in degree 1 and relations in degree 2.
    QuadraticCheck(Input),
    /// Diagonal cohomology, plus the Fröberg identity for quadratic input.
    KoszulCheck(Input),
    /// Quadraticity of sampled standard subalgebras.
    BkCheck(Input),
    /// Dimensions of the quadratic dual.
    Dual(Input),
    /// Compares `H_U(t) H_dual(-t)` with 1.
    Froberg(Input),
    /// Universal quadratic cover.
    Cover(Input),
    /// Adjoins a stable letter acting by a derivation.
    HnnCompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "t")]
        stable: String,
        /// Degree of the derivation.
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// `a=phi(a)` for a degree-1 element `a`; repeatable.
        #[arg(long = "map", value_name = "DOMAIN=VALUE")]
        maps: Vec<String>,
    },
    /// Splits a quadratic presentation along a degree-1 generator.
    HnnDecompose {
        #[command(flatten)]
        input: Input,
        /// Stable letter (the last generator by default).
        #[arg(long)]
        generator: Option<String>,
    },
    /// Embeds into a presentation generated in degree 1.
    Standardize(Input),
    /// Embeds into a quadratic presentation.
    Quadratize(Input),
    /// Subalgebra generated by homogeneous elements.
    Subalgebra {
        #[command(flatten)]
        input: Input,
        #[arg(long = "span", value_name = "EXPR", required = true)]
        span: Vec<String>,
    },
    /// Center in each degree.
    Center(Input),
    /// Derived or upper central series.
    Series {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = SeriesKind::Derived)]
        kind: SeriesKind,
    },
    /// Presentation of the right-angled Artin Lie algebra of a graph.
    Raag(GraphInput),
    /// Clique counts of a graph.
    CliquePoly(GraphInput),
    /// Looks for an induced square or path on four vertices.
    Droms(GraphInput),
    /// Chordality by lexicographic breadth-first search.
    Chordal(GraphInput),
    /// Cone and disjoint-union decomposition.
    Decompose(GraphInput),
    /// Euler characteristic `P(-1)`.
    Euler(PolyInput),
    /// Roots `lambda_i` of `P(t) = prod (1 + lambda_i t)`.
    Eigenvalues(PolyInput),
    /// `(n - 1) b_1^2 - 2 n b_2`.
    Omega {
        #[command(flatten)]
        input: PolyInput,
        /// Defaults to the clique number or the polynomial degree.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Newton inequalities for the Poincaré polynomial.
    Newton(PolyInput),
    /// Residue-class sums of `1 / H_U` against the center degrees.
    Bogvad(Input),
    /// `P(1) >= 2^dim Z`.
    Trc(PolyInput),
    /// Genus and free rank of a one-relator quadratic presentation.
    #[command(name = "classify-1rel")]
    Classify1Rel(Input),
    /// Degree-3 part of the dual of two-relator quadratic presentations.
    #[command(name = "check-2rel")]
    Check2Rel {
        file: Option<PathBuf>,
        /// Draw this many random presentations instead of reading a file.
        #[arg(long, conflicts_with = "file")]
        random: Option<usize>,
        /// Generators of the random presentations.
        #[arg(long, default_value_t = 4)]
        rank: usize,
    },
    /// Symplectic bases of the relations' skew forms.
    Darboux(Input),
    /// Largest sampled free standard subalgebra.
    FreeRank(Input),
    /// Chain of codimension-1 quadratic subalgebras.
    Filtration(Input),
}

/// Runs one command; returns the exit code (0 pass, 1 a check failed,
/// 2 bad input or usage).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.opts.json { report.to_json() } else { report.to_text() };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_error(path: &Path, source: ParseError) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        source,
    }
}

enum Loaded {
    Algebra(PresentationSource),
    Graph(GraphSource),
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.split_whitespace().next() == Some("graph") {
        parse_graph(&text).map(Loaded::Graph).map_err(|e| parse_error(path, e))
    } else {
        parse_presentation(&text).map(Loaded::Algebra).map_err(|e| parse_error(path, e))
    }
}

fn load_algebra(path: &Path) -> Result<PresentationSource, CliError> {
    match load(path)? {
        Loaded::Algebra(s) => Ok(s),
        Loaded::Graph(_) => Err(CliError::usage(format!("{}: expected a presentation, found a graph", path.display()))),
    }
}

fn load_graph(path: &Path) -> Result<GraphSource, CliError> {
    match load(path)? {
        Loaded::Graph(g) => Ok(g),
        Loaded::Algebra(_) => Err(CliError::usage(format!("{}: expected a graph, found a presentation", path.display()))),
    }
}

/// `--field` wins over the field declared in the file.
fn resolve_field(flag: Option<&str>, declared: FieldSpec) -> Result<FieldSpec, CliError> {
    let Some(s) = flag else {
        return Ok(declared);
    };
    let s = s.trim();
    let digits = s.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')).unwrap_or(s);
    if s == "rational" || s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = digits
        .parse()
        .map_err(|_| CliError::usage(format!("--field: expected `rational` or a prime, found `{s}`")))?;
    if p == 2 {
        return Err(CliError::usage("--field: characteristic 2 is not supported"));
    }
    Ok(FieldSpec::Prime(p).checked()?)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let opts = &cli.opts;
    if opts.max_degree < 2 {
        return Err(CliError::usage("--max-degree must be at least 2"));
    }
    match &cli.command {
        Command::Raag(g) => graphs::raag(&load_graph(&g.file)?, opts),
        Command::CliquePoly(g) => graphs::clique_poly(&load_graph(&g.file)?),
        Command::Droms(g) => Ok(graphs::droms(&load_graph(&g.file)?)),
        Command::Chordal(g) => Ok(graphs::chordal(&load_graph(&g.file)?)),
        Command::Decompose(g) => Ok(graphs::decompose(&load_graph(&g.file)?)),
        Command::Euler(p) | Command::Eigenvalues(p) | Command::Newton(p) | Command::Trc(p) | Command::Omega { input: p, .. } => {
            poly::run(&cli.command, p, opts)
        }
        Command::Check2Rel { file: None, random, rank } => {
            let count = random.ok_or_else(|| CliError::usage("check-2rel needs a file or --random COUNT"))?;
            let spec = resolve_field(opts.field.as_deref(), FieldSpec::Prime(101))?;
            match spec {
                FieldSpec::Rationals => algebra::random_two_relator(Rationals, count, *rank, opts.seed),
                FieldSpec::Prime(p) => algebra::random_two_relator(PrimeField::new(p)?, count, *rank, opts.seed),
            }
        }
        cmd => {
            let path = algebra_path(cmd).expect("remaining commands read a presentation");
            let src = load_algebra(path)?;
            match resolve_field(opts.field.as_deref(), src.field)? {
                FieldSpec::Rationals => algebra::run(cmd, &src, Rationals, opts),
                FieldSpec::Prime(p) => algebra::run(cmd, &src, PrimeField::new(p)?, opts),
            }
            .map_err(|e| match e {
                CliError::Parse { source, .. } => parse_error(path, source),
                other => other,
            })
        }
    }
}

fn algebra_path(cmd: &Command) -> Option<&Path> {
    let p = match cmd {
        Command::Dims(i)
        | Command::Hilbert(i)
        | Command::QuadraticCheck(i)
        | Command::KoszulCheck(i)
        | Command::BkCheck(i)
        | Command::Dual(i)
        | Command::Froberg(i)
        | Command::Cover(i)
        | Command::Standardize(i)
        | Command::Quadratize(i)
        | Command::Center(i)
        | Command::Bogvad(i)
        | Command::Classify1Rel(i)
        | Command::Darboux(i)
        | Command::FreeRank(i)
        | Command::Filtration(i)
        | Command::Betti { input: i, .. }
        | Command::HnnCompose { input: i, .. }
        | Command::HnnDecompose { input: i, .. }
        | Command::Subalgebra { input: i, .. }
        | Command::Series { input: i, .. } => &i.file,
        Command::Check2Rel { file: Some(f), .. } => f,
        _ => return None,
    };
    Some(p.as_path())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_flag() {
        assert_eq!(resolve_field(None, FieldSpec::Prime(7)).unwrap(), FieldSpec::Prime(7));
        assert_eq!(resolve_field(Some("101"), FieldSpec::Rationals).unwrap(), FieldSpec::Prime(101));
        assert_eq!(resolve_field(Some("gf(5)"), FieldSpec::Rationals).unwrap(), FieldSpec::Prime(5));
        assert_eq!(resolve_field(Some("rational"), FieldSpec::Prime(5)).unwrap(), FieldSpec::Rationals);
        assert!(resolve_field(Some("2"), FieldSpec::Rationals).is_err());
        assert!(resolve_field(Some("9"), FieldSpec::Rationals).is_err());
        assert!(resolve_field(Some("reals"), FieldSpec::Rationals).is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_2() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["kla", "frobnicate"], &mut out, &mut err), 2);
        assert_eq!(run(["kla", "dims", "/nonexistent.lie"], &mut out, &mut err), 2);
        assert_eq!(run(["kla", "--help"], &mut out, &mut err), 0);
    }
}
