//! `fraclab` command-line front end.
//!
//! Exit codes: 0 success, 2 usage/parse/config, 3 domain error,
//! 4 numerical divergence.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fraclab::Error;

#[derive(Parser, Debug)]
#[command(
    name = "fraclab",
    version,
    about = "Fractional power-law calculus, symmetry checks and an L1 solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Caputo derivative of a power-law expression in t and x.
    Caputo(CaputoArgs),
    /// Solve and certify the power-law similarity solution of an equation.
    Verify(VerifyArgs),
    /// Line-invariance constraints, boundary exponents and similarity form of a generator.
    BvpCheck(BvpArgs),
    /// Run the L1 solver from a JSON config.
    Solve(SolveArgs),
    /// Refinement study from a JSON config.
    Converge(ConvergeArgs),
    /// Truncation study of the generalized Leibniz rule for t^a · t^b.
    Leibniz(LeibnizArgs),
}

#[derive(clap::Args, Debug, serde::Serialize)]
pub struct CaputoArgs {
    /// Expression such as "3*x^2*t^0.5 - t".
    #[arg(long, allow_hyphen_values = true)]
    pub expr: String,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = Mode::Strict)]
    pub mode: Mode,
    /// Also write the result and a manifest here.
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strict,
    Extended,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum EquationName {
    Diffusion,
    ThirdOrder,
}

#[derive(clap::Args, Debug, serde::Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub equation: EquationName,
    /// Exponent of the diffusion equation.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    /// Exponent of the third-order equation.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum FamilyName {
    /// Coefficients e0, e1, f0, f1, g1.
    Raw,
    /// Coefficients c1, c2, c3 with --alpha and --p.
    Diffusion,
    /// Coefficients c1..c4 with --alpha and --q.
    ThirdOrder,
    X1,
    X2,
    Y1,
    Y2,
}

#[derive(clap::Args, Debug, serde::Serialize)]
pub struct BvpArgs {
    #[arg(long, value_enum, default_value_t = FamilyName::Raw)]
    pub family: FamilyName,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c1: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c2: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c3: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c4: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub e0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub e1: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub f0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub f1: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub g1: f64,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

#[derive(clap::Args, Debug, serde::Serialize)]
pub struct SolveArgs {
    /// JSON config (see configs/ in the repository).
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value = "fraclab-out")]
    pub out_dir: PathBuf,
}

#[derive(clap::Args, Debug, serde::Serialize)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides "levels" in the config; default 4.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, default_value = "fraclab-out")]
    pub out_dir: PathBuf,
}

#[derive(clap::Args, Debug, serde::Serialize)]
pub struct LeibnizArgs {
    /// Exponent of f = t^a.
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Exponent of g = t^b.
    #[arg(long)]
    pub b: f64,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 8)]
    pub n_terms: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Config(_) | Error::InvalidOrder(_) | Error::Io(_) => 2,
        Error::Divergence(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Caputo(a) => commands::caputo(a),
        Command::Verify(a) => commands::verify(a),
        Command::BvpCheck(a) => commands::bvp_check(a),
        Command::Solve(a) => commands::solve(a),
        Command::Converge(a) => commands::converge(a),
        Command::Leibniz(a) => commands::leibniz(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
