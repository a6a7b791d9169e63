mod commands;
mod ranges;
mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::ranges::QSpec;

pub const SCHEMA: &str = "tightclose/1";

#[derive(Parser)]
#[command(
    name = "tightclose",
    version,
    about = "Tight closures, Hilbert coefficients of filtrations, and Stanley-Reisner checks over prime fields",
    after_help = "Exit codes: 0 all checks pass, 1 a check fails, 2 usage or input error.\n\
                  Filtrations given by a finite list I_1..I_k continue as I_n = I^(n-k) I_k for n > k, and I_n = R for n <= 0."
)]
struct Cli {
    /// Worker threads for independent checks; TIGHTCLOSE_JOBS overrides.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Tight Hilbert data of F_p[x,y,z]/(x^N+y^N+z^N) and I = (y,z).
    Hypersurface(HypersurfaceArgs),
    /// Face-ring invariants of a simplicial complex given by a facet file.
    Sr(SrArgs),
    /// Run property suites over bounded parameter windows.
    Verify(VerifyArgs),
    /// Print a reduced Groebner basis and its initial ideal.
    Gb(GbArgs),
}

#[derive(Args)]
pub struct HypersurfaceArgs {
    #[arg(long = "N")]
    pub n: u32,
    /// Characteristic; defaults to 7 for N = 3 and 5 otherwise (or the
    /// next prime not dividing N).
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub e_max: u32,
    #[arg(long, default_value_t = 6)]
    pub n_max: u32,
    /// Largest power k whose closed form is probed monomial by monomial.
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,
}

#[derive(Args)]
pub struct SrArgs {
    /// Facet file (one facet per line, `#` comments) or JSON
    /// `{"n": .., "facets": [[..]]}`.
    pub facets: std::path::PathBuf,
    #[arg(long, default_value_t = 101)]
    pub p: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub n_max: u32,
    #[arg(long, default_value_t = 3)]
    pub s_max: usize,
    /// Random draws allowed when looking for a linear system of parameters.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    InitialIdeal,
    Binomial,
    TightIntersection,
    Watanabe,
    ItohIntegral,
    Hip,
    Hspoly,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, required = true, num_args = 1..)]
    pub suite: Vec<Suite>,
    /// Range of N, e.g. `2..4`; each suite has its own default.
    #[arg(long = "N", value_parser = ranges::parse_range)]
    pub big_n: Option<std::ops::RangeInclusive<u64>>,
    /// Characteristic for every N (must not divide N); per-N default
    /// otherwise.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, value_parser = ranges::parse_q, default_value = "p^1..p^2")]
    pub q: QSpec,
    #[arg(long, value_parser = ranges::parse_range, default_value = "1..3")]
    pub k: std::ops::RangeInclusive<u64>,
    #[arg(long, value_parser = ranges::parse_range, default_value = "1..6")]
    pub d: std::ops::RangeInclusive<u64>,
    #[arg(long, value_parser = ranges::parse_range, default_value = "0..12")]
    pub n: std::ops::RangeInclusive<u64>,
    /// Upper index for filtration checks (default 4 for intersections,
    /// 5 for HI_p).
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub e_max: u32,
}

#[derive(Args)]
pub struct GbArgs {
    /// Generators, e.g. `x^3+y^3+z^3`.
    #[arg(required = true)]
    pub gens: Vec<String>,
    /// Comma-separated variable names, highest first.
    #[arg(long, default_value = "x,y,z")]
    pub vars: String,
    #[arg(long, default_value_t = 7)]
    pub p: u64,
    /// `grevlex`, `lex` or `block:k`.
    #[arg(long, default_value = "grevlex")]
    pub order: String,
}

/// A finished command: the JSON report, an optional CSV table, and whether
/// every check passed.
pub struct Outcome {
    pub report: Value,
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    pub pass: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<tightclose_core::Error> for CliError {
    fn from(e: tightclose_core::Error) -> Self {
        use tightclose_core::Error as E;
        match e {
            E::NotPrime(_)
            | E::Parse(_)
            | E::InvalidRing(_)
            | E::InvalidComplex(_)
            | E::InvalidArgument(_)
            | E::InsufficientWindow(_)
            | E::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn jobs(flag: Option<usize>) -> Result<usize, CliError> {
    match std::env::var("TIGHTCLOSE_JOBS") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("TIGHTCLOSE_JOBS='{v}' is not a number"))),
        Err(_) => Ok(flag.unwrap_or(0)),
    }
}

fn emit(outcome: &Outcome, how: Emit) {
    match (how, &outcome.table) {
        (Emit::Csv, Some((headers, rows))) => {
            println!("{}", headers.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        (Emit::Text, _) => {
            if let Value::Object(map) = &outcome.report {
                for (k, v) in map {
                    println!("{k}: {v}");
                }
            }
        }
        _ => println!("{}", serde_json::to_string_pretty(&outcome.report).unwrap()),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let threads = jobs(cli.jobs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Failed(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Hypersurface(a) => commands::hypersurface(a),
        Command::Sr(a) => commands::sr(a),
        Command::Verify(a) => suites::verify(a),
        Command::Gb(a) => commands::gb(a),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let how = cli.emit;
    match run(cli) {
        Ok(outcome) => {
            emit(&outcome, how);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
