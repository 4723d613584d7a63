//! Three-stage feature selection (importance pruning, colinearity pruning,
//! permutation selection) and cross-domain shared-feature analysis.

pub mod shared;
pub mod stages;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use shared::{cumulative_counts, shared_features, SharedFeatureTable, SharedGroup};
pub use stages::{
    colinearity_prune, permutation_select, rf_importance_prune, run_selection_pipeline,
    SelectionConfig,
};

#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("duplicate domain '{0}'")]
    DuplicateDomain(String),
    #[error("need at least 2 domains, got {0}")]
    TooFewDomains(usize),
    #[error("cumulative-count cross-check failed for subset {subset:?}: {by_sum} by group sums vs {by_intersection} by intersection")]
    CcMismatch {
        subset: Vec<String>,
        by_sum: usize,
        by_intersection: usize,
    },
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
    #[error(transparent)]
    Stats(#[from] crate::stats::StatsError),
    #[error(transparent)]
    Features(#[from] crate::features::FeaturesError),
}

pub type Result<T> = std::result::Result<T, SelectionError>;

/// One accepted action in the pruning history.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageLogEntry {
    pub stage: String,
    pub removed: Vec<String>,
    pub metric_before: f64,
    pub metric_after: f64,
}

/// The selected features of one domain with the full pruning history and
/// the stage-1 importances used for representative picking.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureSet {
    pub domain: String,
    pub names: Vec<String>,
    pub stage_log: Vec<StageLogEntry>,
    #[serde(default)]
    pub stage1_importance: std::collections::BTreeMap<String, f64>,
}

impl FeatureSet {
    pub fn new(domain: impl Into<String>, names: Vec<String>) -> Self {
        Self {
            domain: domain.into(),
            names,
            stage_log: Vec::new(),
            stage1_importance: Default::default(),
        }
    }

    pub fn name_set(&self) -> std::collections::BTreeSet<String> {
        self.names.iter().cloned().collect()
    }
}
