use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hhgeo::hh_verify::CTermForm;

/// Numerical verification of fractional Hermite-Hadamard inequalities on
/// nonpositively curved model spaces.
#[derive(Debug, Parser)]
#[command(name = "hhgeo", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Randomized falsification and the built-in regression instances.
    Verify(VerifyArgs),
    /// Evaluate one chain (or the constants) over a parameter grid.
    Sweep(SweepArgs),
    /// Evaluate a single fractional integral of a formula in `t`.
    Fracint(FracintArgs),
    /// Print C(α, ρ) with its quadrature oracle and E(h).
    Constants(ConstantsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CTermArg {
    Difference,
    UnscaledDifference,
    Product,
}

impl From<CTermArg> for CTermForm {
    fn from(arg: CTermArg) -> Self {
        match arg {
            CTermArg::Difference => CTermForm::Difference,
            CTermArg::UnscaledDifference => CTermForm::UnscaledDifference,
            CTermArg::Product => CTermForm::Product,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all`, `regression`, or one chain (`classic`, `h`, `conde`, `cb1`,
    /// `cb2`, `ty1`, `corollary`, or a full chain name).
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value = "euclidean2")]
    pub space: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Subtracted term asserted in the corollary's third side.
    #[arg(long, value_enum, default_value_t = CTermArg::Difference)]
    pub c_term: CTermArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Chain name, or `constants`.
    pub target: String,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub rho: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub a: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub b: Vec<f64>,
    /// Integrability exponents, used by `thm_cb1` only.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub q: Vec<f64>,
    #[arg(long, default_value = "identity")]
    pub h: String,
    #[arg(long, default_value = "euclidean2")]
    pub space: String,
    /// Seed of the fixed instance.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = CTermArg::Difference)]
    pub c_term: CTermArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    RlLeft,
    RlRight,
    HadamardLeft,
    HadamardRight,
    KatugampolaLeft,
    KatugampolaRight,
}

#[derive(Debug, Args)]
pub struct FracintArgs {
    #[arg(long, value_enum)]
    pub op: Operator,
    #[arg(long)]
    pub alpha: f64,
    /// Katugampola parameter.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Left end, for the left-sided operators.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Right end, for the right-sided operators.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Formula in `t`, e.g. `t^2 + 1` or `t^(1/2)`.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value = "identity")]
    pub h: String,
    #[command(flatten)]
    pub output: OutputArgs,
}
