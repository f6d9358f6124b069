mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_HELD: u8 = 0;
pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Exact checks of the generalized Star-of-David rule on lower-triangular
/// combinatorial matrices.
#[derive(Debug, Parser)]
#[command(name = "sdr", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the identities of order m on the first N rows.
    Check {
        #[arg(long)]
        tri: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Largest verified order up to a cap.
    MaxOrder {
        #[arg(long)]
        tri: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Matrix inverse of a window.
    Invert(WindowArgs),
    /// Integer matrix power of a window.
    Power {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, allow_hyphen_values = true)]
        exp: i64,
    },
    /// Hadamard product (`--a`, `--b`) or Hadamard inverse (`--inv`).
    Hadamard {
        #[arg(long, requires = "b", conflicts_with = "inv")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
        #[arg(long)]
        inv: Option<String>,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Contiguous j×j minor transform.
    Minor {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        j: usize,
    },
    /// Riordan arrays from series literals.
    Riordan {
        #[arg(value_enum)]
        op: RiordanOp,
        #[arg(long)]
        d: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        d2: Option<String>,
        #[arg(long)]
        h2: Option<String>,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Seeded search for counterexamples to inverse or minor closure.
    Conjecture {
        #[arg(value_enum)]
        kind: ConjectureKind,
        /// Family name, or `all`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = sdr_core::harness::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the first N rows.
    Print(WindowArgs),
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    #[arg(long)]
    pub tri: String,
    #[arg(long)]
    pub rows: usize,
    /// Write the resulting window as a triangle file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RiordanOp {
    Window,
    Mul,
    Inverse,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConjectureKind {
    Inverse,
    Minor,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
