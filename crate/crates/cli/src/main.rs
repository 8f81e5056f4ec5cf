//! `godel`: corpus generation, learner runs, Kolmogorov tables and
//! reduction checks over the desk-scale Gödel numbering.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "godel", version, about)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct Opts {
    /// `key=value` config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    cap: Option<u64>,
    #[arg(long, global = true)]
    window: Option<u64>,
    #[arg(long, global = true)]
    index_bound: Option<u64>,
    #[arg(long, global = true)]
    stability_window: Option<u64>,
    /// Directory receiving result files and `manifest.json`.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LearnerKind {
    Enum,
    EnumLoop,
    Amalgamation,
    Shrinking,
    Liminf,
}

#[derive(Subcommand)]
enum Command {
    /// List programs with their behaviour on the window.
    Enumerate {
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long, default_value_t = 9)]
        to: u64,
    },
    /// Run a learner on every corpus instance.
    Learn {
        #[arg(long, value_enum)]
        learner: LearnerKind,
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Least window-verified index of every corpus instance.
    Kolmogorov {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Check a catalog reduction against a corpus.
    ReduceCheck {
        #[arg(long)]
        reduction: String,
        #[arg(long)]
        corpus: PathBuf,
        /// constant-answer, off-by-one, shift-down or drop-preprocessing.
        #[arg(long)]
        mutant: Option<String>,
    },
    /// Write a deterministic corpus.
    CorpusGen {
        /// total-programs, literal-sequences, bounded-monotone, lpo-mixed or families.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure classes, mapped to exit codes 1 and 2.
pub enum Failure {
    Semantic(String),
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { from, to } => commands::enumerate(&cli.opts, from, to),
        Command::Learn { learner, corpus } => commands::learn(&cli.opts, learner, &corpus),
        Command::Kolmogorov { corpus } => commands::kolmogorov(&cli.opts, &corpus),
        Command::ReduceCheck {
            reduction,
            corpus,
            mutant,
        } => commands::reduce_check(&cli.opts, &reduction, &corpus, mutant.as_deref()),
        Command::CorpusGen { kind, size, seed } => commands::corpus_gen(&cli.opts, &kind, size, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Semantic(message)) => {
            eprintln!("godel: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("godel: {message}");
            ExitCode::from(2)
        }
    }
}
