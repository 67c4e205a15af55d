use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "tg",
    version,
    about = "Temporal graph widths, expansions and solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size, per-layer edge counts and isolated vertices.
    Info(InfoArgs),
    /// Layer, slice, underlying and temporal treewidth.
    Params(ParamsArgs),
    /// Static expansion (directed, strict or undirected).
    Expand(ExpandArgs),
    /// Δ-temporal line graph.
    Linegraph(LineGraphArgs),
    /// Underlying graph with bitmask edge labels.
    Labelgraph(LabelGraphArgs),
    /// Tree decomposition of the underlying graph, or a temporal one.
    Tdc(TdcArgs),
    /// Run a solver and print a verified result envelope.
    Solve(SolveArgs),
    /// Generate an instance and its sidecar description.
    Gen(GenArgs),
    /// Check a `.td` or `.ttdc` file against a temporal graph.
    Validate(ValidateArgs),
    /// Reachable set from a source, or a foremost walk to a target.
    Walk(WalkArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
    Dimacs,
}

#[derive(Args, Debug)]
pub struct FormatArg {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct WidthArgs {
    /// Exact treewidth (default).
    #[arg(long, conflicts_with = "heuristic")]
    pub exact: bool,
    /// Min-fill upper bounds only.
    #[arg(long)]
    pub heuristic: bool,
    /// Largest graph handed to the exact solver.
    #[arg(long = "budget-n")]
    pub budget_n: Option<usize>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct StrictArgs {
    /// Strictly increasing time stamps.
    #[arg(long, conflicts_with = "nonstrict")]
    pub strict: bool,
    /// Non-decreasing time stamps.
    #[arg(long)]
    pub nonstrict: bool,
}

impl StrictArgs {
    pub fn resolve(self, default: bool) -> bool {
        if self.strict {
            true
        } else if self.nonstrict {
            false
        } else {
            default
        }
    }
}

#[derive(Args, Debug)]
pub struct InfoArgs {
    /// `.tg` file, or `-` for standard input.
    pub graph: PathBuf,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    pub graph: PathBuf,
    /// Window lengths for the slice width (defaults to 1..τ).
    #[arg(long, value_delimiter = ',')]
    pub delta: Vec<usize>,
    #[command(flatten)]
    pub width: WidthArgs,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub strict: StrictArgs,
    /// Undirected expansion with merged antiparallel arcs.
    #[arg(long, conflicts_with = "strict")]
    pub undirected: bool,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct LineGraphArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub delta: usize,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct LabelGraphArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct TdcArgs {
    pub graph: PathBuf,
    /// Decompose the undirected static expansion instead of the underlying graph.
    #[arg(long)]
    pub temporal: bool,
    #[command(flatten)]
    pub width: WidthArgs,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    Separation,
    Rmtc,
    Matching,
    Trted,
    Explore,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    pub graph: PathBuf,
    /// Tree decomposition of the underlying graph for the DP solvers.
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// Use the brute-force solver.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub source: Option<usize>,
    #[arg(long)]
    pub target: Option<usize>,
    /// Root of the spanning subgraph.
    #[arg(long)]
    pub root: Option<usize>,
    /// Budget on the solution size (separator size, deletions).
    #[arg(long)]
    pub k: Option<usize>,
    /// Reach bound.
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    #[arg(long)]
    pub beta: Option<usize>,
    #[arg(long)]
    pub delta: Option<usize>,
    /// Return to the start vertex at the end of the exploration.
    #[arg(long = "return")]
    pub return_to_base: bool,
    /// Greedy exploration for graphs whose layers are all connected.
    #[arg(long)]
    pub connected: bool,
    /// Largest instance handed to an exact solver.
    #[arg(long = "budget-n")]
    pub budget_n: Option<usize>,
    #[command(flatten)]
    pub strict: StrictArgs,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Sat,
    Clique,
    Random,
    Connected,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Output `.tg` file; the sidecar goes next to it with a `.json` extension.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Clauses as `1,-2;2,3` (sat).
    #[arg(long, allow_hyphen_values = true)]
    pub clauses: Option<String>,
    /// Variable count (sat); defaults to the largest variable used.
    #[arg(long)]
    pub vars: Option<usize>,
    /// Edge list as `0-1,1-2` (clique).
    #[arg(long)]
    pub edges: Option<String>,
    /// Vertex count (clique, random, connected).
    #[arg(long)]
    pub n: Option<usize>,
    /// Clique size (clique).
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub alpha: usize,
    #[arg(long, default_value_t = 2)]
    pub beta: usize,
    #[arg(long)]
    pub tau: Option<usize>,
    /// Edge probability per pair and time (random) or extra-edge probability (connected).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random weights in quarters up to this many (random).
    #[arg(long)]
    pub weighted: Option<i64>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    pub graph: PathBuf,
    /// `.td` (underlying graph) or `.ttdc` (temporal) file.
    pub decomposition: PathBuf,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub source: usize,
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long)]
    pub alpha: Option<usize>,
    #[arg(long)]
    pub beta: Option<usize>,
    /// Earliest time stamp the first hop may use.
    #[arg(long = "depart-after", default_value_t = 1)]
    pub depart_after: usize,
    /// Prune repeated vertices from the reported walk.
    #[arg(long = "as-path")]
    pub as_path: bool,
    #[command(flatten)]
    pub strict: StrictArgs,
    #[command(flatten)]
    pub format: FormatArg,
}
