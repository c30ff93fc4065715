//! `fanraspaud`: analyse cubic graphs, build and check perfect-matching
//! triples, run corpora and the lemma suites.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Process exit codes. `worst` ranks mathematical failures highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Resource = 3,
    Input = 2,
    Math = 1,
}

impl Status {
    fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Resource => 1,
            Status::Input => 2,
            Status::Math => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Parser)]
#[command(name = "fanraspaud", version, about = "Perfect-matching triples in bridgeless cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Brute,
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaArg {
    All,
    Triples,
    Pairs,
    PairsAb,
    Avoidance,
    Uniform,
    ThreeCut,
}

#[derive(Subcommand)]
enum Command {
    /// Girth, bridges, oddness, chromatic class and minimality gates.
    Analyze { file: PathBuf },
    /// Find three perfect matchings with no common edge.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// Wall-clock budget; 0 expires immediately.
        #[arg(long)]
        timeout_ms: Option<u64>,
        /// Perfect matchings tried by the balanced-matching constructions.
        #[arg(long, default_value_t = 64)]
        max_pms: usize,
        /// Write the certificate here (one graph per file only).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "fr-failures")]
        persist_dir: PathBuf,
    },
    /// Solve every graph file in a directory.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Aligned text table instead of JSON rows.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value = "fr-certificates")]
        out_dir: PathBuf,
        #[arg(long)]
        timeout_ms: Option<u64>,
        #[arg(long, default_value = "fr-failures")]
        persist_dir: PathBuf,
    },
    /// Exhaustive lemma suites.
    Lemmas {
        #[arg(long, value_enum, default_value = "all")]
        lemma: LemmaArg,
        /// Longest cycle for the triple and pair suites.
        #[arg(long, default_value_t = 14)]
        max_len: usize,
        /// Largest order for the avoidance suite.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Corrupt one triple-table entry first (negative control).
        #[arg(long, hide = true)]
        mutant: bool,
        #[arg(long, default_value = "fr-failures")]
        persist_dir: PathBuf,
    },
    /// Reduce along a G8 or Petersen-minus-vertex subgraph, solve, lift.
    Reduce { file: PathBuf },
    /// Re-check certificate files written by `solve` or `corpus`.
    Verify { file: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let enum_cap = match std::env::var("FR_ENUM_CAP") {
        Ok(v) => match v.parse() {
            Ok(c) => c,
            Err(_) => {
                eprintln!("FR_ENUM_CAP must be a non-negative integer, got {v:?}");
                return ExitCode::from(Status::Input as u8);
            }
        },
        Err(_) => fanraspaud::matching::DEFAULT_ENUM_CAP,
    };
    let status = match cli.command {
        Command::Analyze { file } => commands::analyze(&file, enum_cap),
        Command::Solve { file, strategy, timeout_ms, max_pms, out, persist_dir } => {
            let cfg = commands::config(strategy, timeout_ms, max_pms, enum_cap, persist_dir);
            commands::solve(&file, &cfg, out.as_deref())
        }
        Command::Corpus { dir, jobs, table, out_dir, timeout_ms, persist_dir } => {
            let cfg = commands::config(StrategyArg::Auto, timeout_ms, 64, enum_cap, persist_dir);
            commands::corpus(&dir, &cfg, jobs, table, &out_dir, enum_cap)
        }
        Command::Lemmas { lemma, max_len, max_n, mutant, persist_dir } => {
            commands::lemmas(lemma, max_len, max_n, mutant, &persist_dir)
        }
        Command::Reduce { file } => commands::reduce(&file, enum_cap),
        Command::Verify { file } => commands::verify(&file),
    };
    ExitCode::from(status as u8)
}
