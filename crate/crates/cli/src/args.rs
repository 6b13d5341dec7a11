use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypam::{ExactScalar, TheoremId};

use crate::checks::{BoundFamily, RegionChoice};

#[derive(Debug, Parser)]
#[command(
    name = "hypam",
    version,
    about = "Exact coefficients, monotonicity scans and inequality checks for (1-x)^p F(a,b;c;x) and relatives"
)]
pub struct Cli {
    /// Truncation order N.
    #[arg(long, global = true, default_value_t = 200)]
    pub order: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Largest order tried when a predicted violation has not shown up yet.
    #[arg(long, global = true, default_value_t = 5000)]
    pub cap: usize,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "F")]
    F,
    #[value(name = "Fp")]
    Fp,
    #[value(name = "Gp")]
    Gp,
    #[value(name = "lnFp")]
    LnFp,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::F => "F",
            Family::Fp => "Fp",
            Family::Gp => "Gp",
            Family::LnFp => "lnFp",
        }
    }
}

/// Hypergeometric parameters; the defaults give the complete elliptic integral case.
#[derive(Clone, Debug, Args)]
pub struct Triple {
    #[arg(long, default_value = "1/2")]
    pub a: ExactScalar,
    #[arg(long, default_value = "1/2")]
    pub b: ExactScalar,
    #[arg(long, default_value = "1")]
    pub c: ExactScalar,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maclaurin coefficients of F, (1-x)^p F, (1-x)^p exp(F) or ln[(1-x)^p F].
    Coeffs {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        p: Option<ExactScalar>,
    },
    /// Regions, thresholds and root positions.
    Classify {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        p: Option<ExactScalar>,
    },
    /// Compare a theorem's prediction with a coefficient scan.
    Verify {
        /// T1i .. T4, or T5k<k><sign> such as T5k2-.
        theorem: TheoremId,
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        p: ExactScalar,
    },
    /// Evaluate one bound family over a grid of x (or r) values.
    Bounds {
        #[arg(value_enum)]
        family: BoundFamily,
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        p: ExactScalar,
        #[arg(long)]
        q: Option<ExactScalar>,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Value or start:step:count.
        #[arg(long)]
        x: Option<String>,
        /// Value or start:step:count (ratio family).
        #[arg(long)]
        r: Option<String>,
        #[arg(long, value_enum, default_value_t = RegionChoice::Auto)]
        region: RegionChoice,
    },
    /// Run a sweep file.
    Sweep { spec: PathBuf },
}
