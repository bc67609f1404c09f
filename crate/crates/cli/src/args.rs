use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frontdoor::corpus::DEFAULT_SEED;

/// Causal identification with front-door style criteria: d-separation, latent
/// projection, criterion checks, exact functional evaluation and the
/// counterexample constructions.
#[derive(Debug, Parser)]
#[command(name = "frontdoor", version)]
pub struct Cli {
    /// Output format; JSON emits one document per report.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Comma-separated node lists.
#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    #[arg(long, default_value = "")]
    pub z: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Functional {
    Frontdoor,
    Adjustment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    /// Functional and oracle agree on every cell.
    Equal,
    /// Some cell differs.
    Differ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Proof {
    Main,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether x and y are d-separated given z.
    Dsep {
        graph: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Project a graph onto a set of nodes (default: its observed nodes).
    Project {
        graph: PathBuf,
        #[arg(long)]
        keep: Option<String>,
    },
    /// Check identification criteria for a query.
    Check {
        graph: PathBuf,
        /// backdoor, adjustment, fdc, gfdc or all.
        #[arg(long, default_value = "all")]
        criterion: String,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Compare an identifying functional with the interventional oracle.
    Evaluate {
        model: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
        /// Treatment values, e.g. `X=0` or `X1=0,X2=1`.
        #[arg(long)]
        xstar: String,
        #[arg(long, value_enum, default_value_t = Functional::Frontdoor)]
        functional: Functional,
        /// Exit with status 1 unless the comparison comes out this way.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Interventional distribution by truncated factorization.
    Oracle {
        model: PathBuf,
        /// Intervention, e.g. `X=0`.
        #[arg(long = "do")]
        intervention: String,
        /// Restrict the output to these nodes.
        #[arg(long)]
        y: Option<String>,
    },
    /// Build a model on which the front-door functional fails.
    Counterexample {
        /// a (direct path), b or c.
        #[arg(long)]
        pattern: String,
        /// Number of mediators, or path length for pattern a.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Lift to a strictly positive pre-image model with copy probability N/(N+1).
        #[arg(long)]
        lift: Option<u64>,
        /// Write the model file here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification suite and print a pass/fail table.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Replay a derivation step by step with do-calculus rule checks.
    Verify {
        #[arg(long, value_enum)]
        proof: Proof,
        graph: PathBuf,
        #[command(flatten)]
        query: QueryArgs,
    },
}
