//! Command-line front end for the `approx-veb` library.
//!
//! `aveb mst|sssp|hull|bench`; see [`Cli`] for flags and the [`input`] and
//! [`report`] modules for the file and output formats. Exit codes: 0 on
//! success, 1 on bad input, 2 when a checked invariant fails.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod input;
pub mod report;

pub use report::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub(crate) fn parse(line: usize, message: &str) -> Self {
        CliError::Parse {
            line,
            message: message.to_string(),
        }
    }
}

impl From<approx_veb::Error> for CliError {
    fn from(e: approx_veb::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "aveb", version, about = "Approximate van Emde Boas structures and their applications")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for anything randomized.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum spanning tree of an undirected graph file.
    Mst(MstArgs),
    /// Single-source shortest paths over a graph file.
    Sssp(SsspArgs),
    /// On-line approximate convex hull of a point stream.
    Hull(HullArgs),
    /// Random operation mix against one structure; CSV timing rows.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// Approximation error; the exact queue is used when absent.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Also run the exact reference algorithm and report the ratio.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct MstArgs {
    #[command(flatten)]
    pub graph: GraphInput,
}

#[derive(Debug, Args)]
pub struct SsspArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    /// Treat each edge line as one directed arc.
    #[arg(long)]
    pub directed: bool,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    /// Point stream file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// Angular bucket width in radians, at most pi/8.
    #[arg(long, conflicts_with = "buckets")]
    pub delta: Option<f64>,
    /// Number of angular buckets; the default is 1024.
    #[arg(long)]
    pub buckets: Option<u32>,
    /// Also compare against the exact hull of all points.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Exact,
    Mult,
    Add,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Structure::Exact)]
    pub structure: Structure,
    /// Keys are drawn from `[0, 2^bits)`, at most 64 bits.
    #[arg(long, default_value_t = 32)]
    pub universe_bits: u32,
    #[arg(long, default_value_t = 100_000)]
    pub ops: u64,
    /// Error of the multiplicative structure.
    #[arg(long, default_value_t = 1.0 / 16.0)]
    pub epsilon: f64,
    /// Bucket width of the additive structure.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are input errors; --help and --version succeed
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let outcome = match commands::execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    if let Err(e) = outcome.report.render(cli.format, out, err) {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    for v in &outcome.violations {
        let _ = writeln!(err, "error: invariant violated: {v}");
    }
    if outcome.violations.is_empty() {
        0
    } else {
        2
    }
}
