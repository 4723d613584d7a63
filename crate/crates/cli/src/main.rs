//! decept-cue: command-line pipelines for cross-domain deception corpus
//! analytics — cleaning, feature extraction, n-gram analysis, significance
//! testing, feature selection, random-forest training, and cross-domain
//! generalization reports.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use config::RunConfig;

/// Command failure with the exit-code class: 2 for usage/schema problems,
/// 1 for runtime errors.
#[derive(Debug)]
pub struct CmdError {
    pub message: String,
    pub usage: bool,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            usage: true,
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            usage: false,
        }
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<decept_core::corpus::CorpusError> for CmdError {
    fn from(e: decept_core::corpus::CorpusError) -> Self {
        use decept_core::corpus::CorpusError::*;
        match &e {
            Parse { .. } | Schema { .. } | DuplicateId { .. } => CmdError::usage(e.to_string()),
            Io(_) => CmdError::usage(e.to_string()),
        }
    }
}

impl From<decept_core::features::FeaturesError> for CmdError {
    fn from(e: decept_core::features::FeaturesError) -> Self {
        use decept_core::features::FeaturesError::*;
        match &e {
            Parse { .. } | UnknownFeature { .. } | EmptyDictionary => CmdError::usage(e.to_string()),
            _ => CmdError::runtime(e.to_string()),
        }
    }
}

impl From<decept_core::crossdomain::CrossdomainError> for CmdError {
    fn from(e: decept_core::crossdomain::CrossdomainError) -> Self {
        use decept_core::crossdomain::CrossdomainError::*;
        match &e {
            Parse { .. } | Range { .. } | Ratio(_) => CmdError::usage(e.to_string()),
            _ => CmdError::runtime(e.to_string()),
        }
    }
}

impl From<decept_core::model::ModelError> for CmdError {
    fn from(e: decept_core::model::ModelError) -> Self {
        CmdError::runtime(e.to_string())
    }
}

impl From<decept_core::selection::SelectionError> for CmdError {
    fn from(e: decept_core::selection::SelectionError) -> Self {
        CmdError::runtime(e.to_string())
    }
}

impl From<decept_core::ngrams::NgramError> for CmdError {
    fn from(e: decept_core::ngrams::NgramError) -> Self {
        CmdError::runtime(e.to_string())
    }
}

impl From<decept_core::text::TextError> for CmdError {
    fn from(e: decept_core::text::TextError) -> Self {
        CmdError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::runtime(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "decept-cue",
    version,
    about = "Corpus analytics for cross-domain deception research"
)]
struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (fallback: DECEPT_CUE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Base seed for every seeded operation.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clean a corpus: strip metadata, normalize breaks, drop
    /// empty/non-English/overlong/duplicate documents.
    Clean(commands::clean::CleanArgs),
    /// Extract a feature matrix (cues, stylistic, dictionary).
    Features(commands::features::FeaturesArgs),
    /// Rank function-word n-grams and test their class differences.
    Ngrams(commands::ngrams::NgramsArgs),
    /// Welch + Holm significance testing over a feature matrix.
    Sigtest(commands::sigtest::SigtestArgs),
    /// Three-stage feature selection on a feature matrix.
    Select(commands::select::SelectArgs),
    /// Train a random forest and cross-validate it.
    Train(commands::train::TrainArgs),
    /// Cross-domain experiment: train per domain, score on all domains,
    /// and test generalization against the coin-flip baseline.
    Crossdomain(commands::crossdomain::CrossdomainArgs),
    /// Analyze an externally supplied score table.
    ScoresAnalyze(commands::scores::ScoresAnalyzeArgs),
    /// Shared-feature table (N / CC) across per-domain feature sets.
    CcTable(commands::cc_table::CcTableArgs),
    /// Validate taxonomy labels against the closed vocabularies.
    TaxonomyValidate(commands::taxonomy::TaxonomyArgs),
}

fn configure_threads(cli_threads: Option<usize>, cfg: &RunConfig) {
    let threads = cli_threads.or(cfg.threads).or_else(|| {
        std::env::var("DECEPT_CUE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run() -> Result<(), CmdError> {
    let cli = Cli::parse();
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    configure_threads(cli.threads, &cfg);

    match cli.command {
        Command::Clean(args) => commands::clean::run(args, &mut cfg),
        Command::Features(args) => commands::features::run(args, &mut cfg),
        Command::Ngrams(args) => commands::ngrams::run(args, &mut cfg),
        Command::Sigtest(args) => commands::sigtest::run(args, &mut cfg),
        Command::Select(args) => commands::select::run(args, &mut cfg),
        Command::Train(args) => commands::train::run(args, &mut cfg),
        Command::Crossdomain(args) => commands::crossdomain::run(args, &mut cfg),
        Command::ScoresAnalyze(args) => commands::scores::run(args, &mut cfg),
        Command::CcTable(args) => commands::cc_table::run(args, &cfg),
        Command::TaxonomyValidate(args) => commands::taxonomy::run(args),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
