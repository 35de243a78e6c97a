//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use torfold::Suite;

#[derive(Debug, Parser)]
#[command(name = "torfold", version, about = "Quiver mutation, orbit mutation and folding onto tori")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mutate an ice quiver along a sequence of vertices.
    Mutate {
        #[arg(long)]
        quiver: PathBuf,
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Orbit-mutate a periodic quiver along a sequence of sites.
    OrbitMutate {
        #[arg(long)]
        periodic: PathBuf,
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fold a periodic quiver onto its orbit quiver.
    Fold {
        #[arg(long)]
        periodic: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Mutate a seed, printing its cluster variables.
    Cluster {
        #[arg(long, conflicts_with = "periodic", required_unless_present = "periodic")]
        quiver: Option<PathBuf>,
        #[arg(long)]
        periodic: Option<PathBuf>,
        #[command(flatten)]
        seq: SeqArg,
        /// Print the folded seed of a periodic quiver instead of the orbit seed.
        #[arg(long, requires = "periodic")]
        fold: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Serve the explorer HTTP API on localhost.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Debug, Args)]
pub struct SeqArg {
    /// Comma-separated vertices or sites; empty for none.
    #[arg(long, default_value = "")]
    pub seq: String,
}

impl SeqArg {
    pub fn items(&self) -> Vec<String> {
        self.seq
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect()
    }
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Write JSON here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    pub suite: Suite,
    /// Oriented cycle (ice quiver JSON) for the foldability suite.
    #[arg(long)]
    pub cycle: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Index range `a:b` (half-open).
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,
    #[command(flatten)]
    pub out: OutArg,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: torfold::SuiteError| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a >= b {
        return Err(format!("empty window {a}:{b}"));
    }
    Ok((a, b))
}
