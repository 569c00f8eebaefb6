use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pentaverify_core::asymptotics::{AWAY_SAMPLES_PER_SIDE, NEAR_SAMPLES};
use pentaverify_core::{Family, TruncatedFamily};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "pentaverify", version, about = "Verify truncated pentagonal-type partition sums")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p(n), overpartitions or pod(n) for 0 ≤ n ≤ max.
    Seq(SeqArgs),
    /// Check generating-function identities or brute-force interpretations.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Compare exact values against the asymptotic main term.
    Ratio(RatioArgs),
    /// Recover M_k(n) from the Cauchy integral numerically.
    Circle(CircleArgs),
    /// Normalized near-arc and away-arc defects, plus the eta check at τ = i.
    Lemmas(LemmaArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Identities(IdentityArgs),
    Oracles(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: pentaverify_core::Error| e.to_string())
}

fn truncated_family(s: &str) -> Result<TruncatedFamily, String> {
    s.parse().map_err(|e: pentaverify_core::Error| e.to_string())
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeqArgs {
    /// p, overp or pod
    #[arg(value_parser = family)]
    pub family: Family,
    #[arg(long = "max")]
    pub max_n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IdentityArgs {
    #[arg(long = "kmax", default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: u64,
    /// Truncation order of the series.
    #[arg(long, default_value_t = 200)]
    pub degree: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    /// mk, mkbar or mp
    #[arg(long, value_parser = truncated_family)]
    pub family: TruncatedFamily,
    #[arg(long = "ncap")]
    pub n_cap: usize,
    #[arg(long = "kmax", value_parser = clap::value_parser!(u64).range(1..))]
    pub k_max: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RatioArgs {
    #[arg(long, value_parser = truncated_family)]
    pub family: TruncatedFamily,
    /// Comma-separated list of n.
    #[arg(long = "n", value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub ns: Vec<u64>,
    /// Comma-separated list of k.
    #[arg(long = "k", value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub ks: Vec<u64>,
    /// Fail unless |rel_dev| strictly decreases along n for every k.
    #[arg(long)]
    pub assert_converge: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CircleArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// Quadrature stopping tolerance, relative to the L1 mass.
    #[arg(long, default_value_t = 1e-12, value_parser = positive_f64)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LemmaArgs {
    #[arg(long = "n", value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub ns: Vec<u64>,
    #[arg(long = "k", value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub ks: Vec<u64>,
    /// Run pairs outside the k⁸ ≤ n regime.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = NEAR_SAMPLES)]
    pub near_samples: usize,
    #[arg(long, default_value_t = AWAY_SAMPLES_PER_SIDE)]
    pub away_samples: usize,
    /// Largest allowed ratio of a normalized defect to its value at the smallest n.
    #[arg(long, default_value_t = 3.0, value_parser = positive_f64)]
    pub growth: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}
