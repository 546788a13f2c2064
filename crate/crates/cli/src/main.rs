mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "knotkit",
    version,
    about = "Knot diagrams, invariants and their algebra"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Where a diagram comes from. Exactly one source must be given.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct DiagramSource {
    /// Catalog name: unknot, curl+, curl-, trefoil, figure8, hopf+, hopf-,
    /// whitehead, borromean, chainN, twistN
    #[arg(long)]
    standard: Option<String>,
    /// File holding a PD code
    #[arg(long)]
    file: Option<PathBuf>,
    /// PD code given inline, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
    #[arg(long)]
    pd: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse a diagram and print it in normal form
    Parse(DiagramSource),
    /// Run the structural checks on a diagram
    Validate(DiagramSource),
    /// Writhe, linking matrix and coloring count
    Invariants {
        #[command(flatten)]
        source: DiagramSource,
        /// `3color` or a file holding a quandle table
        #[arg(long, default_value = "3color")]
        quandle: String,
    },
    /// Search for a smaller equivalent diagram
    Simplify {
        #[command(flatten)]
        source: DiagramSource,
        /// Maximum number of visited states (default 100000, or KNOTKIT_BUDGET)
        #[arg(long)]
        budget: Option<usize>,
        /// Outstanding R2 insertions allowed during the search
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Apply random Reidemeister moves
    Scramble {
        #[command(flatten)]
        source: DiagramSource,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        moves: usize,
    },
    /// Signed Tait graph under the standard shading
    Tait(DiagramSource),
    /// Effective conductance between two nodes of the Tait graph or of a network file
    Conductance {
        #[arg(long, group = "input")]
        standard: Option<String>,
        #[arg(long, group = "input")]
        file: Option<PathBuf>,
        #[arg(long, group = "input")]
        pd: Option<String>,
        /// Network file: node count, then `u v g` per edge
        #[arg(long, group = "input")]
        network: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["S", "T"], required = true)]
        terminals: Vec<usize>,
    },
    /// Membership structure read off from undercrossings
    Knotset {
        #[command(flatten)]
        source: DiagramSource,
        /// `framed` keeps self-membership, `full` drops it
        #[arg(long, default_value = "full")]
        mode: String,
    },
    /// Nested curves where curve k contains curves 0..k
    Ordinal { n: usize },
    /// Processive recombination from the three-twist template
    Recombine {
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Quaternion and rotation of a half-turn word such as `iijk^2`
    Belt { word: String },
    /// Goedel code of a formula, its shift and fixed point
    Goedel {
        /// Formula such as `IsEven(#(u))`
        formula: Option<String>,
        /// Decode this code instead
        #[arg(long, conflicts_with = "formula")]
        code: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.to_json()).unwrap()
                ),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.all_checks_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
