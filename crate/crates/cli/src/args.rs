use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use emchi::km::DEFAULT_COLUMN_CAP;

#[derive(Debug, Parser)]
#[command(name = "emchi", version, about = "Conjugate Steenrod squares, Eilenberg-MacLane cohomology and Ext charts")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Include wall-clock time in the output.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Largest number of monomials allowed in one degree of H*(K(Z/2,k)).
    #[arg(long, global = true, default_value_t = DEFAULT_COLUMN_CAP)]
    pub column_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdealArg {
    Sq1,
    Sq12,
}

impl From<IdealArg> for emchi::Ideal {
    fn from(i: IdealArg) -> Self {
        match i {
            IdealArg::Sq1 => emchi::Ideal::Sq1,
            IdealArg::Sq12 => emchi::Ideal::Sq12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    A1,
    E1,
}

impl From<AlgebraArg> for emchi::resolve::AlgebraName {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::A1 => emchi::resolve::AlgebraName::A1,
            AlgebraArg::E1 => emchi::resolve::AlgebraName::E1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableArg {
    /// Q0 and Q1 on the generators of H*(K(Z/2,2)).
    #[value(name = "k2-e1")]
    K2E1,
    /// Sq1, Sq2 and Q1 on the generators of H*(K(Z/2,3)).
    K3Gens,
}

/// Where a module comes from: `--module FILE`, or `--k` with a degree bound.
#[derive(Debug, Args)]
pub struct ModuleSource {
    /// Module description file (JSON).
    #[arg(long, conflicts_with_all = ["k", "reduced"])]
    pub module: Option<PathBuf>,
    /// Use H*(K(Z/2,K)).
    #[arg(long, required_unless_present = "module")]
    pub k: Option<u32>,
    /// Drop the unit class.
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Milnor basis product Sq(R) Sq(S).
    Mul {
        /// First sequence, e.g. "2,1" or "Sq(2,1)".
        r: String,
        /// Second sequence.
        s: String,
    },
    /// chi(Sq^d) in the Milnor basis.
    Chi { d: usize },
    /// Milnor basis of degree d.
    Basis { d: usize },
    /// The class chi(Sq^(n-k)) applied to the fundamental class of K(Z/2,k).
    ChiClass { n: usize, k: u32 },
    /// Whether chi(Sq^(n-k)) of the fundamental class lies in the image of the ideal. Exit 1 if not.
    Membership {
        n: usize,
        k: u32,
        #[arg(long, value_enum)]
        ideal: IdealArg,
    },
    /// Smallest k with chi(Sq^(n-k)) of the fundamental class outside the image. Exit 1 if there is no k < n.
    MinK {
        n: u32,
        #[arg(long, value_enum)]
        ideal: IdealArg,
        /// Also search k = 1, 2, ... by linear algebra.
        #[arg(long)]
        search: bool,
        /// Largest k tried by the search (default n).
        #[arg(long, requires = "search")]
        k_max: Option<u32>,
    },
    /// Compares the closed formula with the search for each n up to N. Exit 1 on any disagreement.
    VerifyMinK {
        #[arg(long, value_enum)]
        ideal: IdealArg,
        #[arg(long)]
        n_max: u32,
        /// Smallest n checked.
        #[arg(long)]
        n_min: Option<u32>,
    },
    /// Minimal-length sequences r with sum r_i (2^i - 1) = n - alpha(n) - 1 (part a) or - 2 (part b).
    SplitMin {
        n: u64,
        #[arg(long, value_enum)]
        part: PartArg,
    },
    /// Image of the 2-series generator x_j under the Frobenius expansion.
    TwoSeries { j: u32 },
    /// Q_j-homology of a module.
    Margolis {
        #[command(flatten)]
        source: ModuleSource,
        /// Which Q_j (0 or 1).
        #[arg(long)]
        q: usize,
        /// Largest degree reported; with --k also the truncation degree.
        #[arg(long)]
        max_deg: Option<i32>,
        /// Algebra used when building the module from --k.
        #[arg(long, value_enum, default_value = "e1")]
        algebra: AlgebraArg,
    },
    /// Minimal resolution and Ext chart.
    Ext {
        #[command(flatten)]
        source: ModuleSource,
        #[arg(long, value_enum, required_unless_present = "module")]
        algebra: Option<AlgebraArg>,
        #[arg(long)]
        max_s: usize,
        #[arg(long)]
        max_t: i32,
        /// Truncation degree of the module built from --k (default max-t plus the algebra's top degree).
        #[arg(long)]
        truncate: Option<usize>,
        /// Also write the chart document here.
        #[arg(long)]
        chart_out: Option<PathBuf>,
    },
    /// Writes a module description document.
    Module {
        #[command(flatten)]
        source: ModuleSource,
        #[arg(long, value_enum, required_unless_present = "module")]
        algebra: Option<AlgebraArg>,
        /// Truncation degree for --k.
        #[arg(long, required_unless_present = "module")]
        max_deg: Option<usize>,
    },
    /// Renders a chart document.
    Render {
        #[arg(long)]
        chart: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
    },
    /// Recomputes a table of operations on named classes. Exit 1 on any mismatch.
    CheckTable {
        #[arg(value_enum)]
        table: TableArg,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Mul { .. } => "mul",
            Command::Chi { .. } => "chi",
            Command::Basis { .. } => "basis",
            Command::ChiClass { .. } => "chi-class",
            Command::Membership { .. } => "membership",
            Command::MinK { .. } => "min-k",
            Command::VerifyMinK { .. } => "verify-min-k",
            Command::SplitMin { .. } => "split-min",
            Command::TwoSeries { .. } => "two-series",
            Command::Margolis { .. } => "margolis",
            Command::Ext { .. } => "ext",
            Command::Module { .. } => "module",
            Command::Render { .. } => "render",
            Command::CheckTable { .. } => "check-table",
        }
    }
}
