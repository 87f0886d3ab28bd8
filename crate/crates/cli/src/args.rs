//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::Ratio;

use digitsum::DEFAULT_ORACLE_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "digitsum",
    version,
    about = "Digit sums, their summatory functions and the inequalities between them"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format; `compute` defaults to plain, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads used by grid scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub parallelism: u64,
    /// Largest n the brute-force summatory oracle accepts.
    #[arg(long, global = true, env = "DIGITSUM_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
    /// Failing inputs kept per scan.
    #[arg(long, global = true, default_value_t = digitsum::explorer::DEFAULT_VIOLATION_CAP)]
    pub violation_cap: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Evaluate one quantity or one inequality instance.
    Compute(ComputeArgs),
    /// Sweep the default grids of one relation, or of all of them.
    Verify(VerifyArgs),
    /// Build counterexamples and run exploratory probes.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Sweep a single grid.
    Scan(ScanArgs),
    /// Emit the residual S_b(n)/n - (b-1)/2 log_b n for 1 <= n <= N.
    Fluctuation(FluctuationArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// s, S, S-oracle, digits, valuation, pattern-count, bit-count, w, W,
    /// factorial-valuation, or an inequality id such as graham.
    pub quantity: String,
    #[arg(long, short = 'b')]
    pub base: Option<u32>,
    #[arg(long, short = 'n')]
    pub n: Option<BigUint>,
    /// Inputs of an inequality instance, in its own order.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub values: Vec<BigUint>,
    /// Digit word, most significant letter first.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Bit position for bit-count.
    #[arg(long, short = 'i')]
    pub i: Option<u32>,
    /// Exponent of the power weights 2^(p i).
    #[arg(long = "p", short = 'p', allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Explicit weights, least significant first.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub weights: Vec<f64>,
    /// Exponent of b in the scaling identity.
    #[arg(long, short = 'x')]
    pub x: Option<u32>,
    /// Use the constant b-1 instead of the sharp one in `symmetric`.
    #[arg(long)]
    pub loose: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// An inequality id, or `all`.
    pub target: String,
    /// Entry bound of every grid.
    #[arg(long)]
    pub max: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum SearchCommand {
    /// The tuple showing the tuple inequality fails for r > b.
    Optimality {
        #[arg(long, short = 'b')]
        base: u32,
        #[arg(short = 'r', long)]
        r: usize,
        #[arg(short = 'x', long)]
        x: u32,
    },
    /// Growth of the weighted first difference at 2^k when p > 1.
    Divergence {
        #[arg(long = "p", short = 'p')]
        p: f64,
        #[arg(short = 'k', long)]
        k: u32,
    },
    /// Superadditivity probe for summatory block counts.
    Block {
        #[arg(long)]
        pattern: String,
        #[arg(long, short = 'b', default_value_t = 2)]
        base: u32,
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        coefficient: Ratio<i128>,
        #[arg(long)]
        max: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// Inequality id.
    pub id: String,
    #[arg(long)]
    pub max: u64,
    #[arg(long, short = 'b')]
    pub base: Option<u32>,
    #[arg(short = 'r', long)]
    pub r: Option<usize>,
    #[arg(long = "p", short = 'p', allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = digitsum::explorer::DEFAULT_X_MAX)]
    pub x_max: u32,
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    pub coefficient: Ratio<i128>,
    /// Use the constant b-1 instead of the sharp one in `symmetric`.
    #[arg(long)]
    pub loose: bool,
    /// Variation grids: admit any tuple whose last entry is maximal.
    #[arg(long)]
    pub dominated: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FluctuationArgs {
    #[arg(long, short = 'b')]
    pub base: u32,
    #[arg(long, short = 'n')]
    pub n: u64,
}
