//! Command-line surface.

use std::path::PathBuf;

use an_census_core::census::BoxConstant;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "an-census", version, about = "Census of A_n number field candidates and discriminant-fiber audits")]
pub struct Cli {
    /// JSON-lines run store.
    #[arg(long, global = true, env = "AN_CENSUS_STORE", default_value = "an-census-runs.jsonl")]
    pub store: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the trace-zero box and count points, A_n polynomials and fields.
    Census(CensusArgs),
    /// Fiber polynomial, geometric irreducibility, and point counts of one fiber.
    Fiber(FiberArgs),
    /// Scan the coefficient box for geometrically reducible fibers.
    Reducible(ReducibleArgs),
    /// Exponent formulas, the Pila bound, and a fiber growth scan.
    Pila(PilaArgs),
    /// Number of cyclic cubic fields with discriminant at most X.
    OracleCubic(OracleArgs),
    /// Critical values of q0 and the fiber factorization check.
    Critical(CriticalArgs),
    /// Least-squares log-log slope of (X, N) points.
    Fit(FitArgs),
    /// Export the whole store.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Also write this run's record to a file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GridArgs {
    #[arg(long)]
    pub xmax: u64,
    #[arg(long, default_value_t = 1)]
    pub xmin: u64,
    /// Ratio between consecutive checkpoints.
    #[arg(long, default_value_t = 10f64.sqrt())]
    pub grid_ratio: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Box constant c, as an integer, decimal or fraction.
    #[arg(long, default_value = "4", value_parser = parse_box_constant)]
    #[serde(serialize_with = "display")]
    pub box_constant: BoxConstant,
    /// Run once per constant and report where the field counts stabilize.
    #[arg(long, value_delimiter = ',', value_parser = parse_box_constant)]
    #[serde(serialize_with = "display_all")]
    pub box_sweep: Vec<BoxConstant>,
    /// Prime budget of the Galois certification.
    #[arg(long, default_value_t = 100)]
    pub primes: usize,
    #[arg(long, default_value_t = 25)]
    pub fingerprint_primes: usize,
    #[arg(long, default_value_t = 1)]
    pub partitions: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FiberArgs {
    /// Fiber base a_2, ..., a_{n-1}.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub base: Vec<i64>,
    /// Degree; defaults to the base length plus two.
    #[arg(long)]
    pub n: Option<usize>,
    /// Count integral points on the fiber up to this X.
    #[arg(long)]
    pub xmax: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub xmin: u64,
    #[arg(long, default_value_t = 10f64.sqrt())]
    pub grid_ratio: f64,
    #[arg(long, default_value = "1", value_parser = parse_box_constant)]
    #[serde(serialize_with = "display")]
    pub box_constant: BoxConstant,
    /// Count points with p(y) = 0 as well.
    #[arg(long)]
    pub include_singular: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReducibleArgs {
    #[arg(long)]
    pub n: usize,
    /// Single box half-side.
    #[arg(long, conflicts_with = "h_grid")]
    pub h: Option<u64>,
    /// Several box half-sides; with three or more on odd n the growth slope is fitted.
    #[arg(long, value_delimiter = ',')]
    pub h_grid: Vec<u64>,
    /// Count bases whose fiber polynomial equals this one (coefficients lowest first).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub target: Vec<i64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PilaArgs {
    #[arg(long)]
    pub n: usize,
    /// Evaluate the bound for curves of degree n - 1 with B = c X^(n/4).
    #[arg(long)]
    pub xmax: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub xmin: u64,
    #[arg(long, default_value_t = 10f64.sqrt())]
    pub grid_ratio: f64,
    #[arg(long, default_value = "1", value_parser = parse_box_constant)]
    #[serde(serialize_with = "display")]
    pub box_constant: BoxConstant,
    /// Fiber base for a growth scan over the checkpoint grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub base: Vec<i64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long)]
    pub xmax: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CriticalArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub base: Vec<i64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Relative tolerance of the factorization check.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Seed of the root finder's starting perturbation.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub max_iterations: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FitArgs {
    /// Points as X:N pairs, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_point, required = true)]
    pub points: Vec<(f64, f64)>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn parse_box_constant(s: &str) -> Result<BoxConstant, String> {
    s.parse().map_err(|e: an_census_core::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (x, n) = s.split_once(':').ok_or_else(|| format!("expected X:N, got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad X in {s:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad N in {s:?}"))?;
    Ok((x, n))
}

fn display<S: serde::Serializer>(c: &BoxConstant, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(c)
}

fn display_all<S: serde::Serializer>(cs: &[BoxConstant], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(cs.iter().map(|c| c.to_string()))
}
