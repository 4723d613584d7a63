//! Cross-domain experiment harness: stratified splits, cross-evaluation
//! score tables (from internally trained forests or external files), and
//! the generalization / correlation analyses over them.

pub mod analysis;
pub mod harness;
pub mod scores;
pub mod split;

use thiserror::Error;

pub use analysis::{
    generalization_test, multidomain_correlation, CorrelationReport, GeneralizationCell,
    GeneralizationReport, PairCorrelation,
};
pub use harness::{cross_eval_rf, CrossEvalConfig};
pub use scores::{load_scores, ScoreEntry, ScoreTable};
pub use split::{split_domain, DomainSplit};

#[derive(Debug, Error)]
pub enum CrossdomainError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("f1 = {value} outside [0, 1] at line {line}")]
    Range { line: usize, value: f64 },
    #[error("bad split ratios: {0}")]
    Ratio(String),
    #[error("pair ({a}, {b}) has {have} runs after exclusions; need {need}")]
    TooFewRuns {
        a: String,
        b: String,
        have: usize,
        need: usize,
    },
    #[error("pair ({train}, {eval}) has {have} converged runs; need at least 2")]
    DegenerateSample {
        train: String,
        eval: String,
        have: usize,
    },
    #[error("no deceptive proportion supplied for domain '{0}'")]
    MissingQ(String),
    #[error("need at least 2 domains, got {0}")]
    TooFewDomains(usize),
    #[error(transparent)]
    Stats(#[from] crate::stats::StatsError),
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
    #[error(transparent)]
    Features(#[from] crate::features::FeaturesError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CrossdomainError>;
