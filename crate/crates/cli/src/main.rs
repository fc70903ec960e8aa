use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ufalab_cli::commands::{cmd_disj, cmd_measure, cmd_repro, DisjArgs, MeasureArgs, ReproArgs};

#[derive(Parser)]
#[command(name = "ufalab", version, about = "Exact measures and constructions for unambiguous automata and communication matrices")]
struct Cli {
    /// Print wall-clock durations and include them in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Width measures and conical-junta LP of a truth table, DNF or junta file.
    Measure {
        input: PathBuf,
        #[arg(long)]
        c1: bool,
        #[arg(long)]
        c0: bool,
        #[arg(long)]
        uc1: bool,
        /// Best error of a conical junta of this degree.
        #[arg(long, value_name = "D")]
        degplus: Option<usize>,
        /// Least degree reaching this error, e.g. 1/3.
        #[arg(long, value_name = "E")]
        eps: Option<String>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sparse set disjointness automata and the rank lower bound.
    Disj {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check both automata on every word of length 2n.
        #[arg(long)]
        verify: bool,
        /// Directory for automata, family and report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a reproduction suite.
    Repro {
        #[arg(value_parser = ["union-identity", "certificates", "lifting", "disj", "or-approx", "measures", "all"])]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for CSV, JSON and markdown reports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Measure { input, c1, c0, uc1, degplus, eps, out } => cmd_measure(
            &MeasureArgs { input, c1, c0, uc1, degplus, eps, out },
            cli.timings,
        ),
        Command::Disj { n, k, seed, verify, out } => cmd_disj(&DisjArgs { n, k, seed, verify, out }, cli.timings),
        Command::Repro { suite, seed, out } => cmd_repro(&ReproArgs { suite, seed, out }, cli.timings),
    };
    match result {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
