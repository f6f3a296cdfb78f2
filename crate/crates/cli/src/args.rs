use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use timelag_core::ingest::DateWindow;
use timelag_core::{Direction, EstimatorConfig, Norm};

#[derive(Debug, Parser)]
#[command(
    name = "timelag",
    version,
    about = "Identify time lags with copula-entropy transfer entropy"
)]
pub struct Cli {
    /// Worker threads for lag and pair evaluation. Results do not depend on it.
    #[arg(long, global = true, env = "TIMELAG_JOBS")]
    pub jobs: Option<usize>,

    /// Record wall-clock duration in manifests (makes them differ run to run).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one of the four lagged systems and write its trajectory CSV.
    Simulate(SimulateArgs),
    /// Scan transfer entropy over a lag range.
    Scan(ScanArgs),
    /// Run the weather -> power-consumption lag matrix on a Tetouan-format CSV.
    AnalyzeTetouan(TetouanArgs),
    /// Re-run the simulated lag-identification experiments with fixed seeds.
    Repro(ReproArgs),
}

#[derive(Debug, Args)]
pub struct EstimatorArgs {
    /// Neighbor count.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value = "chebyshev")]
    pub norm: Norm,
    /// Past target samples conditioned on.
    #[arg(long, default_value_t = 1)]
    pub history_order: usize,
    /// Uniform tie-breaking noise scale added before ranking (0 = off).
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,
    /// Seed for the jitter noise.
    #[arg(long = "estimator-seed", default_value_t = 0)]
    pub estimator_seed: u64,
}

impl EstimatorArgs {
    pub fn config(&self) -> EstimatorConfig {
        EstimatorConfig {
            k: self.k,
            norm: self.norm,
            jitter_scale: self.jitter,
            seed: self.estimator_seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// System number, 1 to 4.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub system: u32,
    #[arg(long)]
    pub lag: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub mu1: Option<f64>,
    #[arg(long)]
    pub mu2: Option<f64>,
    /// State noise variance.
    #[arg(long)]
    pub delta1: Option<f64>,
    /// Output noise variance.
    #[arg(long)]
    pub delta2: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Trajectory CSV path; a `<out>.manifest.json` is written next to it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    XToY,
    YToX,
    Both,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::XToY => Direction::XToY,
            DirectionArg::YToX => Direction::YToX,
            DirectionArg::Both => Direction::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// Source column.
    #[arg(long, default_value = "x")]
    pub x_col: String,
    /// Target column [default: y]. If the file has no `y` column and none is named, the source is scanned against itself.
    #[arg(long)]
    pub y_col: Option<String>,
    /// Transfer entropy from the source to its own future.
    #[arg(long)]
    pub self_scan: bool,
    /// Lag range in samples, `MIN..MAX`.
    #[arg(long, default_value = "1..8", value_parser = parse_range)]
    pub lags: (usize, usize),
    #[arg(long, value_enum, default_value = "x-to-y")]
    pub direction: DirectionArg,
    /// Shorthand for `--direction y-to-x`.
    #[arg(long, conflicts_with = "direction")]
    pub reverse: bool,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Show values in bits on stdout. Files always hold nats.
    #[arg(long)]
    pub bits: bool,
    /// Output prefix: writes `<out>.csv` and `<out>.json`. With `--direction both` the CSV has one column per direction.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TetouanArgs {
    #[arg(long)]
    pub csv: PathBuf,
    /// TOML schema mapping `datetime`, `factors` and `targets` to column names.
    #[arg(long)]
    pub schema: Option<PathBuf>,
    /// Calendar days to keep, inclusive.
    #[arg(long, default_value = "2017-10-23..2017-10-27")]
    pub window: DateWindow,
    /// Lag range in hours, `MIN..MAX`.
    #[arg(long, default_value = "1..24", value_parser = parse_range)]
    pub lag_hours: (usize, usize),
    /// Repeat the previous row across sampling gaps.
    #[arg(long)]
    pub forward_fill: bool,
    /// Average to hourly samples before scanning.
    #[arg(long)]
    pub hourly_mean: bool,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[arg(long)]
    pub bits: bool,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sim1,
    Sim2,
    Sim3,
    Sim4,
    All,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(value_enum, default_value = "all")]
    pub suite: Suite,
    /// Directory for the per-system tables and the summary.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub bits: bool,
}

/// `A..B` or a single `N`.
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("range `{s}` must satisfy 1 <= min <= max"));
    }
    Ok((lo, hi))
}
