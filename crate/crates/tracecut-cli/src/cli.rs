//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tracecut::Objective;

const EXIT_CODE_HELP: &str = "\
Exit codes:
  0  success
  2  usage error (bad or conflicting flags)
  3  I/O error
  4  matrix file parse error (message carries the line number)
  5  input validation error (asymmetry, negative affinity, duplicates)
  6  numerical failure (no convergence, degenerate embedding)
  7  domain error (k out of range, zero degree, weight misuse, size cap)
  8  verification suite failure";

/// Batch spectral graph clustering: load matrix, build objective, embed,
/// round, report.
#[derive(Debug, Parser)]
#[command(name = "tracecut", version, about, after_help = EXIT_CODE_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a unipartite, bipartite, or directed graph into k parts.
    Cluster(ClusterArgs),
    /// Run the self-verification suites over seeded random instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PipelineKind {
    /// Unipartite graph, symmetric affinity.
    Uni,
    /// Bipartite data matrix; alias for bi-direct unless --kernel is given.
    Bi,
    /// Bipartite co-clustering through the SVD of the normalized matrix.
    BiDirect,
    /// Bipartite co-clustering through the augmented block matrix.
    BiAugmented,
    /// Directed graph, symmetrized with combined in/out weights.
    Dir,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Gwassoc,
    Gwcuts,
    Nassoc,
    Ncuts,
    Rassoc,
    Rcuts,
}

impl ObjectiveArg {
    pub fn to_core(self) -> Objective {
        match self {
            Self::Gwassoc => Objective::GwAssoc,
            Self::Gwcuts => Objective::GwCuts,
            Self::Nassoc => Objective::NAssoc,
            Self::Ncuts => Objective::NCuts,
            Self::Rassoc => Objective::RAssoc,
            Self::Rcuts => Objective::RCuts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Poly,
    Gauss,
    Sigmoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Input matrix file.
    #[arg(long, short = 'i')]
    pub input: PathBuf,

    /// Graph treatment to run.
    #[arg(long, value_enum)]
    pub kind: PipelineKind,

    #[arg(long, value_enum)]
    pub objective: ObjectiveArg,

    /// Number of clusters.
    #[arg(long, short = 'k')]
    pub k: usize,

    /// Seed for the rounding stage.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Vertex weight file for gwassoc/gwcuts: one positive real per line
    /// (N values; M+N for bipartite kinds, features first).
    #[arg(long)]
    pub phi: Option<PathBuf>,

    /// Switch --kind bi to the indirect path: build an item-affinity graph
    /// with this kernel and cluster the items.
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,

    /// Comma-separated kernel parameters: gauss "alpha", poly "c,d",
    /// sigmoid "c,theta".
    #[arg(long)]
    pub kernel_params: Option<String>,

    /// Replace zero degrees by 1e-10 instead of failing.
    #[arg(long)]
    pub regularize_degrees: bool,

    /// Clamp negative kernel values to zero (counted on stderr).
    #[arg(long)]
    pub clamp_negative_kernel: bool,

    /// Mirror unipartite coordinate triples into both triangles.
    #[arg(long)]
    pub symmetric_completion: bool,

    /// Report destination; stdout when omitted.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Record wall-clock timings in the report. Timed reports are not
    /// byte-reproducible across runs.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Trace maximization against random orthonormal competitors,
    /// symmetric and rectangular.
    Kyfan,
    /// Augmented-vs-direct bipartite embedding equivalence.
    BipartiteEquiv,
    /// Row/column embedding consistency and cross-derivation.
    Rowcol,
    /// Relaxed optimum dominates the brute-force discrete optimum.
    RelaxationGap,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,

    /// Random orthonormal competitors per instance.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Largest instance for the relaxation-gap suite (hard cap 12).
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
}
