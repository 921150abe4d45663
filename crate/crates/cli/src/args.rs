use std::path::PathBuf;

use bellsort::{CorrelationLaw, LhvModel};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bellsort",
    version,
    about = "Simulate and analyze CHSH trial data"
)]
pub struct Cli {
    /// Worker threads for generation (outputs do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate counterfactual (lhv) or sub-run (qm) trial data as CSV.
    Simulate(SimulateArgs),
    /// Split a counterfactual CSV into four random sub-runs.
    Split(SplitArgs),
    /// Compute Γ for a counterfactual or sub-run CSV.
    Estimate(EstimateArgs),
    /// Run the re-sorting cascade on a sub-run CSV.
    Resort(ResortArgs),
    /// Sweep the B-arm settings away from the optimum, theory vs simulation.
    Sweep(SweepArgs),
    /// Estimate, re-sort and summarize a sub-run CSV in one report.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Lhv,
    Qm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    PhotonMalus,
    SpinHalf,
}

impl From<LawArg> for CorrelationLaw {
    fn from(l: LawArg) -> Self {
        match l {
            LawArg::PhotonMalus => CorrelationLaw::PhotonMalus,
            LawArg::SpinHalf => CorrelationLaw::SpinHalf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    SignMalus,
}

impl From<ModelArg> for LhvModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::SignMalus => LhvModel::SignMalus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Stable,
    UniformRandom,
}

/// Analyzer angles in degrees.
#[derive(Debug, Clone, Args)]
pub struct AngleArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 45.0, allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long, default_value_t = 22.5, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = -22.5, allow_hyphen_values = true)]
    pub c: f64,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Trials (lhv mode).
    #[arg(long, required_if_eq("mode", "lhv"))]
    pub n: Option<usize>,
    /// Trials per setting pair (qm mode).
    #[arg(long, required_if_eq("mode", "qm"))]
    pub n_per: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[arg(long, value_enum, default_value = "photon-malus")]
    pub law: LawArg,
    #[arg(long, value_enum, default_value = "sign-malus")]
    pub model: ModelArg,
    #[command(flatten)]
    pub angles: AngleArgs,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args)]
pub struct ResortArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "stable")]
    pub policy: PolicyArg,
    /// Required with the uniform-random policy.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Truncate all sub-runs to the shortest one (drops data).
    #[arg(long)]
    pub trim: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n_per: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub steps: usize,
    /// Largest B-arm offset in degrees.
    #[arg(long, default_value_t = 90.0, allow_hyphen_values = true)]
    pub max_offset: f64,
    #[arg(long, value_enum, default_value = "photon-malus")]
    pub law: LawArg,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "stable")]
    pub policy: PolicyArg,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trim: bool,
    #[command(flatten)]
    pub out: Output,
}
