use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use opineq::explorer::{default_nu_points, GridSpec, LogRange, DEFAULT_EXTREMIZER_SAMPLES};
use opineq::verifier::{default_nu_grid, SuiteConfig, DEFAULT_REL_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "opineq",
    version,
    about = "Numerical checks of Young-type inequalities for means of SPD matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every operator inequality on seeded random SPD pairs.
    Verify(VerifyArgs),
    /// Run grid scans and extremizer checks on the scalar families.
    Explore(ExploreArgs),
    /// Recompute the two reference values of the ratio comparison.
    Repro(ReproArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReproFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Leave the runtime out so that reports of identical runs are byte-identical.
    #[arg(long)]
    pub omit_runtime: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per dimension.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 8])]
    pub dims: Vec<usize>,
    /// Lower spectral bound of generated pairs.
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Upper spectral bound of generated pairs.
    #[arg(long = "M", default_value_t = 10.0)]
    pub big_m: f64,
    /// Weights to check, comma separated. Defaults to 0, 0.05, ..., 1.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub nu_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Check one pair read from two matrix files instead of random pairs.
    #[arg(long, num_args = 2, value_names = ["FILE_A", "FILE_B"])]
    pub pair: Option<Vec<PathBuf>>,
    #[command(flatten)]
    pub output: Output,
}

impl VerifyArgs {
    pub fn config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            trials: self.trials,
            dims: self.dims.clone(),
            m: self.m,
            big_m: self.big_m,
            nu_grid: self.nu_grid.clone().unwrap_or_else(default_nu_grid),
            rel_tol: self.rel_tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanArg {
    All,
    Reference,
    NoOrderingRatio,
    NoOrderingDifference,
    #[value(alias = "ineq102")]
    Conjecture,
    Extremizers,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long, value_enum, default_value_t = ScanArg::All)]
    pub scan: ScanArg,
    /// Values of b for the extremizer check, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub b: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1e-2)]
    pub a_lo: f64,
    #[arg(long, default_value_t = 1e2)]
    pub a_hi: f64,
    #[arg(long, default_value_t = 200)]
    pub a_count: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub b_lo: f64,
    #[arg(long, default_value_t = 1e2)]
    pub b_hi: f64,
    #[arg(long, default_value_t = 200)]
    pub b_count: usize,
    /// Weights for the weight-dependent scans. Defaults to 0.05, 0.10, ..., 0.95.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub nu_points: Option<Vec<f64>>,
    #[command(flatten)]
    pub output: Output,
}

impl ExploreArgs {
    pub fn grid(&self) -> GridSpec {
        GridSpec {
            a_range: LogRange {
                lo: self.a_lo,
                hi: self.a_hi,
                count: self.a_count,
            },
            b_range: LogRange {
                lo: self.b_lo,
                hi: self.b_hi,
                count: self.b_count,
            },
            nu_points: self.nu_points.clone().unwrap_or_else(default_nu_points),
        }
    }

    pub fn b_samples(&self) -> Vec<f64> {
        self.b
            .clone()
            .unwrap_or_else(|| DEFAULT_EXTREMIZER_SAMPLES.to_vec())
    }
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(long, value_enum, default_value_t = ReproFormat::Text)]
    pub format: ReproFormat,
}
