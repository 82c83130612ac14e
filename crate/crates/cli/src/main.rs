//! `sprout`: analyses of sprouts and planar systems from the command line.
//!
//! Machine-readable output goes to stdout, diagnostics to stderr. Exit codes:
//! 0 on success, 1 when the analysis answers "no" (invalid, inadmissible,
//! not isomorphic, no single intersection), 2 on usage or input errors.

mod commands;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    #[default]
    Dot,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "sprout", version, about = "Topology of self-similar dendrites from their sprouts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a sprout is a correct, regular tree.
    Validate {
        sprout: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Index diagram as DOT.
    Diagram { sprout: PathBuf },
    /// Addresses of boundary points, or of one black vertex.
    Addresses {
        sprout: PathBuf,
        /// Only this boundary point or black vertex.
        #[arg(short, long = "point")]
        p: Option<String>,
        /// Number of symbols in the expanded rendering.
        #[arg(long, default_value_t = 9)]
        expand: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cardinality class of each point's address set.
    Classify {
        sprout: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Whether distinct boundary points have disjoint address sets.
    Admissible {
        sprout: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Degrees of white vertices against the sizes of their boundary images.
    Phi {
        sprout: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Transformation graph of boundary subsets.
    Gt {
        sprout: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: GraphFormat,
    },
    /// Orders of boundary points and ramification points in the main tree.
    Report {
        sprout: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The refined sprout, squared `n` times.
    Square {
        sprout: PathBuf,
        #[arg(short, default_value_t = 1)]
        n: u32,
    },
    /// Isomorphism between two sprouts.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Sprout of a planar affine system.
    Extract {
        ifs: PathBuf,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// SVG picture of a planar affine system.
    Render {
        ifs: PathBuf,
        /// Name the marked points after this sprout.
        #[arg(long)]
        sprout: Option<PathBuf>,
        /// Subdivision depth of the picture.
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, default_value_t = 600.0)]
        width: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(cli.command);
    if !outcome.stdout.is_empty() {
        print!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.code)
}
