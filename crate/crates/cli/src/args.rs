//! Command-line surface. Every randomized stage takes an explicit --seed;
//! reports embed the full resolved configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "mixcert", version, about = "Bipartite density certification and mixing analysis for regular graphs")]
pub struct Cli {
    /// Worker threads (env fallback MIXCERT_THREADS; default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate graphs and planted instances.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Certify or refute the small-set bipartite density condition.
    Certify(CertifyArgs),
    /// Random-walk mixing measurement.
    Mix(MixArgs),
    /// Extreme eigenvalues of the walk matrix.
    Spectrum(SpectrumArgs),
    /// Full verification harness over one graph.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Random simple d-regular graph (pairing model).
    RandomRegular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        /// Edge-list output path (stdout when absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Bipartite graph, every vertex of the given degree.
    BipartiteRegular {
        #[arg(long)]
        size_s: usize,
        #[arg(long)]
        size_t: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Expander with a planted dense bipartite pair.
    PlantedExpander(PlantedArgs),
    /// Small-set vertex expander with a planted dense bipartite pair (d >= 8).
    PlantedSsve(PlantedArgs),
}

#[derive(Debug, Args)]
pub struct PlantedArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub seed: u64,
    /// Edge-list output path (stdout when absent).
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Sidecar JSON path (defaults to the edge-list path with a .json extension).
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Sample count for claim verification.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Skip claim verification in the sidecar.
    #[arg(long)]
    pub skip_claims: bool,
}

/// Graph input accepted either positionally or as --graph.
#[derive(Debug, Args)]
pub struct GraphInput {
    #[arg(value_name = "GRAPH")]
    pub graph_pos: Option<PathBuf>,
    #[arg(long = "graph", value_name = "GRAPH")]
    pub graph_flag: Option<PathBuf>,
}

impl GraphInput {
    pub fn path(&self) -> Option<&PathBuf> {
        self.graph_pos.as_ref().or(self.graph_flag.as_ref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyMode {
    Auto,
    Exact,
    Heuristic,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = CertifyMode::Auto)]
    pub mode: CertifyMode,
    /// Required for the heuristic path.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Local-search step limit per restart (default 10n).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Largest n admitted to exact enumeration before refusing or falling back.
    #[arg(long, default_value_t = 12)]
    pub exact_cap: usize,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartsArg {
    All,
    Sampled,
}

#[derive(Debug, Args)]
pub struct MixArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long)]
    pub epsilon: f64,
    /// Step budget (default: ceil(10 log2 n)).
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = StartsArg::All)]
    pub starts: StartsArg,
    #[arg(long, default_value_t = 64)]
    pub sample_count: usize,
    /// Required when --starts sampled.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the full trace as CSV (header t,d_tv,l2sq).
    #[arg(long)]
    pub trace_csv: Option<PathBuf>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    Auto,
    ExactDense,
    Iterative,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t = SpectrumMode::Auto)]
    pub mode: SpectrumMode,
    #[arg(long, default_value_t = 4096)]
    pub dense_cap: usize,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    /// Planted-instance sidecar; enables the dense-pair lower-bound audit.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    #[arg(long)]
    pub seed: u64,
    /// Surplus threshold (default d/4).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Size fraction (default 1/(d+2)).
    #[arg(long)]
    pub delta: Option<f64>,
    /// Mixing threshold (default 1/n).
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub t_max: Option<usize>,
    /// Randomized probes per cross-check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 12)]
    pub exact_cap: usize,
    #[arg(long, default_value_t = 1024)]
    pub dense_cap: usize,
    #[arg(long)]
    pub trace_csv: Option<PathBuf>,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}
