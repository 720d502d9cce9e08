use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltsrank_core::metrics::Direction;
use ltsrank_core::stats::Polarity;
use ltsrank_core::Metric;

#[derive(Debug, Parser)]
#[command(name = "ltsrank", version, about = "Comprehension metrics and human-ranking analysis for LTS designs")]
pub struct Cli {
    /// Log more (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute all seven metrics for every design in a corpus directory.
    Metrics(MetricsArgs),
    /// Order a corpus by one metric.
    Rank(RankArgs),
    /// Draw a seeded set of distinct design pairs.
    SamplePairs(SamplePairsArgs),
    /// Fit Bradley-Terry strengths to pairwise annotations.
    FitBt(FitBtArgs),
    /// Kendall's tau of each metric against the fitted human ranking.
    Correlate(CorrelateArgs),
    /// Mean pairwise percent agreement between annotators.
    Agreement(AgreementArgs),
    /// Write a synthetic corpus of random designs.
    Gen(GenArgs),
    /// Write each design as Graphviz DOT or graph JSON.
    Export(ExportArgs),
    /// Run the annotation HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Directory of `.aut` files.
    pub dir: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Exit with status 2 if any file fails to parse or any metric fails.
    #[arg(long)]
    pub strict: bool,
    /// Largest design for the exact longest-path search.
    #[arg(long, default_value_t = ltsrank_core::graph::DEFAULT_NODE_CAP)]
    pub node_cap: usize,
    /// Per-design time budget for the longest-path search, in milliseconds.
    #[arg(long)]
    pub timeout_ms: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    pub dir: PathBuf,
    #[arg(long, default_value = "albin")]
    pub metric: Metric,
    #[arg(long, default_value = "asc")]
    pub direction: Direction,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SamplePairsArgs {
    /// Number of items; taken from the corpus when `--corpus` is given.
    #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
    pub items: Option<usize>,
    /// Corpus directory whose sorted design ids are the items.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Number of pairs.
    #[arg(long, default_value_t = 324)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BtArgs {
    /// Which design a win is credited to. `complexity`: the design not
    /// chosen (strength = perceived complexity). `preference`: the chosen,
    /// simpler design.
    #[arg(long, default_value = "complexity")]
    pub polarity: Polarity,
    /// Smoothing pseudo-count used when the win graph is not strongly
    /// connected; 0 turns smoothing off.
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct FitBtArgs {
    /// Annotation CSV.
    pub annotations: PathBuf,
    #[command(flatten)]
    pub bt: BtArgs,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    pub dir: PathBuf,
    pub annotations: PathBuf,
    #[command(flatten)]
    pub bt: BtArgs,
    /// Name recorded for the human reference ranking.
    #[arg(long, default_value = "human")]
    pub reference: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AgreementArgs {
    pub annotations: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// Either a single value `V` or an inclusive range `MIN-MAX`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Span<T> {
    pub min: T,
    pub max: T,
}

impl<T: FromStr + PartialOrd + Copy> FromStr for Span<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<T>()
                .map_err(|_| format!("expected V or MIN-MAX, got `{s}`"))
        };
        let (min, max) = match s.split_once('-') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if min > max {
            return Err(format!("range must satisfy MIN <= MAX, got `{s}`"));
        }
        Ok(Self { min, max })
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// States per design: `N`, or a range `MIN-MAX` drawn per design.
    #[arg(long, default_value = "12")]
    pub states: Span<usize>,
    /// Transitions per state within (0, 2]: `D`, or a range `MIN-MAX`
    /// drawn per design.
    #[arg(long, default_value = "1.5")]
    pub density: Span<f64>,
    /// Size of the action alphabet.
    #[arg(long, default_value_t = 4)]
    pub labels: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[group(id = "kind", required = true, multiple = false)]
pub struct ExportKind {
    #[arg(long)]
    pub dot: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub kind: ExportKind,
    pub dir: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "LTSRANK_PORT", default_value_t = 8080)]
    pub port: u16,
    #[arg(long, env = "LTSRANK_HOST", default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    #[arg(long, env = "LTSRANK_CORPUS")]
    pub corpus: PathBuf,
    /// Pairs per annotator (default 324, or all pairs for small corpora).
    #[arg(long, env = "LTSRANK_PAIRS")]
    pub pairs: Option<usize>,
    #[arg(long, env = "LTSRANK_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Directory for the pair plan and annotation log.
    #[arg(long, env = "LTSRANK_STATE_DIR")]
    pub state_dir: Option<PathBuf>,
    #[arg(long, env = "LTSRANK_POLARITY", default_value = "complexity")]
    pub polarity: Polarity,
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    /// Give every annotator their own order of the shared pairs.
    #[arg(long, env = "LTSRANK_SHUFFLE")]
    pub shuffle: bool,
}
