//! Command-line front end for `reltrans`: the JSON file format, verdicts,
//! and the subcommands behind the `reltrans` binary.

pub mod commands;
pub mod format;
pub mod verdict;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use reltrans::SimMode;

use commands::{CResult, Outcome, PruneMode, Via};

#[derive(Debug, Parser)]
#[command(name = "reltrans", version, about = "Relational finite-state transducers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn parse_mode(s: &str) -> Result<SimMode, String> {
    SimMode::parse(s).ok_or_else(|| format!("unknown mode `{s}` (two-sided, backward, forward)"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Behavior on words up to a length bound.
    Behavior {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Evaluate one way only; by default both are computed and compared.
        #[arg(long, value_enum)]
        via: Option<Via>,
    },
    /// Decide equivalence of two machines or diagrams of the same kind.
    Equiv {
        file1: PathBuf,
        file2: PathBuf,
        /// Write the certificate chain here (diagrams only).
        #[arg(long, value_name = "PATH")]
        certify: Option<PathBuf>,
    },
    /// Subset construction.
    Determinize {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        certify: Option<PathBuf>,
    },
    /// Minimal deterministic automaton or presentation.
    Minimize {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        certify: Option<PathBuf>,
    },
    /// Remove states not on bi-infinite paths.
    Prune {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: PruneMode,
    },
    /// Canonical presentation of the presented subshift.
    Canonical { file: PathBuf },
    /// Check a simulation certificate between two machines.
    CheckSim {
        m1: PathBuf,
        m2: PathBuf,
        cert: PathBuf,
        /// Overrides the mode stored in the certificate.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<SimMode>,
        /// Use the bi-infinite conditions.
        #[arg(long)]
        infinite: bool,
    },
    /// Quasi-normal form of a diagram.
    Normalize { file: PathBuf },
    /// Factors of a presented subshift up to a length bound.
    Factors {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Whether the periodic point ...www... lies in the subshift.
    Periodic {
        file: PathBuf,
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Graphviz rendering on standard output.
    ExportDot { file: PathBuf },
    /// Re-serialize a file in canonical form.
    Fmt { file: PathBuf },
}

pub fn run(cli: &Cli) -> CResult<Outcome> {
    match &cli.command {
        Command::Behavior { file, max_len, via } => commands::behavior(file, *max_len, *via),
        Command::Equiv { file1, file2, certify } => commands::equiv(file1, file2, certify.as_deref()),
        Command::Determinize { file, certify } => commands::determinize_cmd(file, certify.as_deref()),
        Command::Minimize { file, certify } => commands::minimize_cmd(file, certify.as_deref()),
        Command::Prune { file, mode } => commands::prune_cmd(file, *mode),
        Command::Canonical { file } => commands::canonical(file),
        Command::CheckSim {
            m1,
            m2,
            cert,
            mode,
            infinite,
        } => commands::check_sim(m1, m2, cert, *mode, *infinite),
        Command::Normalize { file } => commands::normalize(file),
        Command::Factors { file, max_len } => commands::factors(file, *max_len),
        Command::Periodic { file, word } => commands::periodic(file, word),
        Command::ExportDot { file } => commands::export_dot(file),
        Command::Fmt { file } => commands::fmt(file),
    }
}
