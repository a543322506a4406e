use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "randflight",
    version,
    about = "Simulate Dirichlet random flights and evaluate their closed-form laws"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate flight endpoints.
    Simulate(SimulateArgs),
    /// Evaluate a conditional or unconditional density on a radial grid.
    Density(DensityArgs),
    /// Evaluate the characteristic function on a grid of |alpha|.
    Cf(CfArgs),
    /// Tabulate the fractional Poisson pmf paired with a law.
    Pmf(PmfArgs),
    /// Closed-form radial moments E R^p for p = 1..4.
    Moments(MomentsArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    A,
    B,
    EvenPoisson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Quick,
    Full,
}

/// Evenly spaced grid `lo:hi:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridArg {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(format!("expected lo:hi:count, got '{s}'"));
        };
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
        let count: usize = count.trim().parse().map_err(|_| format!("bad count '{count}'"))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err("grid bounds must be finite".into());
        }
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        if hi < lo {
            return Err(format!("upper bound {hi} is below lower bound {lo}"));
        }
        Ok(Self { lo, hi, count })
    }
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Motion {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub speed: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub horizon: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("count").required(true).args(["n", "lambda"])))]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Dimension; the even-Poisson model only allows 3.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Fixed number of deviations (Poisson events for even-poisson).
    #[arg(long)]
    pub n: Option<usize>,
    /// Rate of the randomized deviation count.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub motion: Motion,
    /// Keep only the first m coordinates.
    #[arg(long)]
    pub proj_m: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("count").required(true).args(["n", "lambda"])))]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub law: LawArg,
    #[arg(long)]
    pub dim: usize,
    /// Deviations of the conditional law; may be fractional.
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<f64>,
    /// Rate of the unconditional (randomized) law.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[command(flatten)]
    pub motion: Motion,
    #[arg(long)]
    pub proj_m: Option<usize>,
    /// Radii `lo:hi:count` with hi below ct.
    #[arg(long)]
    pub grid_r: GridArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CfArgs {
    #[arg(long, value_enum)]
    pub law: LawArg,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
    #[command(flatten)]
    pub motion: Motion,
    /// Norms of alpha `lo:hi:count`.
    #[arg(long)]
    pub alpha_grid: GridArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PmfArgs {
    #[arg(long, value_enum)]
    pub law: LawArg,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub horizon: f64,
    /// Largest count to print; defaults to the captured table.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long, value_enum)]
    pub law: LawArg,
    #[arg(long)]
    pub dim: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
    #[command(flatten)]
    pub motion: Motion,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub suite: Suite,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
    /// `json` writes JSON lines, `csv` one row per check.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
