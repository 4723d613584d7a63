//! From-scratch random forest: bootstrap bagging over Gini trees, per-node
//! feature subsampling, out-of-bag accuracy, train-median imputation, and
//! stratified k-fold cross-validation.

pub mod metrics;
pub mod tree;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::features::FeatureMatrix;

pub use metrics::{metrics, Metrics};
pub use tree::DecisionTree;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("training data has a single class")]
    SingleClass,
    #[error("training matrix is empty")]
    EmptyMatrix,
    #[error("column mismatch: {detail}")]
    ColumnMismatch { detail: String },
    #[error("no rows were out of bag; too little data")]
    NoOobRows,
    #[error("class '{class}' has {have} rows; stratified {need}-fold needs at least {need}")]
    TooFewRows {
        class: &'static str,
        have: usize,
        need: usize,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid config: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Random-forest hyperparameters. Split quality is always Gini impurity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RFConfig {
    pub n_trees: usize,
    pub min_leaf: usize,
    pub feature_fraction: f64,
    pub seed: u64,
}

impl Default for RFConfig {
    fn default() -> Self {
        Self {
            n_trees: 50,
            min_leaf: 5,
            feature_fraction: 0.5,
            seed: 0,
        }
    }
}

impl RFConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_trees < 1 {
            return Err(ModelError::BadConfig("n_trees must be >= 1".into()));
        }
        if self.min_leaf < 1 {
            return Err(ModelError::BadConfig("min_leaf must be >= 1".into()));
        }
        if !(self.feature_fraction > 0.0 && self.feature_fraction <= 1.0) {
            return Err(ModelError::BadConfig(
                "feature_fraction must be in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// A trained forest, including everything needed to reproduce and apply
/// it: config, per-column imputation medians, normalized impurity
/// importances, and per-row out-of-bag vote tallies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Forest {
    pub version: u32,
    pub config: RFConfig,
    pub feature_names: Vec<String>,
    pub medians: Vec<f64>,
    pub importances: Vec<f64>,
    trees: Vec<DecisionTree>,
    /// (truthful votes, deceptive votes) per training row from trees whose
    /// bootstrap excluded that row.
    oob_votes: Vec<(u32, u32)>,
    train_labels: Vec<u8>,
}

fn label_to_u8(l: Label) -> u8 {
    match l {
        Label::Truthful => 0,
        Label::Deceptive => 1,
    }
}

/// Median by linear interpolation of the present values; 0 when a column
/// is entirely missing (a constant column can never split).
fn column_median(values: &[Option<f64>]) -> f64 {
    let mut present: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    if present.is_empty() {
        return 0.0;
    }
    present.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (present.len() - 1) as f64 * 0.5;
    let lo = h.floor() as usize;
    if lo + 1 < present.len() {
        present[lo] + (h - lo as f64) * (present[lo + 1] - present[lo])
    } else {
        present[lo]
    }
}

fn impute(matrix: &FeatureMatrix, medians: &[f64]) -> Vec<Vec<f64>> {
    matrix
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, v)| v.unwrap_or(medians[j]))
                .collect()
        })
        .collect()
}

/// Train a forest on the matrix with bootstrap bagging; deterministic
/// given the config seed (per-tree seeds are derived by counter).
pub fn train_random_forest(matrix: &FeatureMatrix, cfg: &RFConfig) -> Result<Forest> {
    cfg.validate()?;
    let n = matrix.n_rows();
    let d = matrix.n_features();
    if n == 0 || d == 0 {
        return Err(ModelError::EmptyMatrix);
    }
    let labels: Vec<u8> = matrix.labels.iter().map(|&l| label_to_u8(l)).collect();
    if labels.iter().all(|&l| l == 0) || labels.iter().all(|&l| l == 1) {
        return Err(ModelError::SingleClass);
    }

    let medians: Vec<f64> = (0..d).map(|j| column_median(&matrix.column(j))).collect();
    let data = impute(matrix, &medians);
    let per_split = (cfg.feature_fraction * d as f64).ceil() as usize;

    struct TreeOut {
        tree: DecisionTree,
        importance: Vec<f64>,
        oob_predictions: Vec<(usize, u8)>,
    }

    let outs: Vec<TreeOut> = (0..cfg.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(t as u64));
            let mut in_bag = vec![false; n];
            let rows: Vec<usize> = (0..n)
                .map(|_| {
                    let r = rng.gen_range(0..n);
                    in_bag[r] = true;
                    r
                })
                .collect();
            let fit = tree::fit_tree(&data, &labels, rows, per_split, cfg.min_leaf, &mut rng);
            let oob_predictions: Vec<(usize, u8)> = (0..n)
                .filter(|&r| !in_bag[r])
                .map(|r| (r, fit.tree.predict_row(&data[r])))
                .collect();
            TreeOut {
                tree: fit.tree,
                importance: fit.importance,
                oob_predictions,
            }
        })
        .collect();

    let mut importances = vec![0.0; d];
    let mut oob_votes = vec![(0u32, 0u32); n];
    let mut trees = Vec::with_capacity(cfg.n_trees);
    for out in outs {
        for (j, v) in out.importance.iter().enumerate() {
            importances[j] += v;
        }
        for (r, pred) in out.oob_predictions {
            if pred == 0 {
                oob_votes[r].0 += 1;
            } else {
                oob_votes[r].1 += 1;
            }
        }
        trees.push(out.tree);
    }
    let total: f64 = importances.iter().sum();
    if total > 0.0 {
        for v in &mut importances {
            *v /= total;
        }
    }

    Ok(Forest {
        version: 1,
        config: *cfg,
        feature_names: matrix.feature_names.clone(),
        medians,
        importances,
        trees,
        oob_votes,
        train_labels: labels,
    })
}

impl Forest {
    pub fn importance_of(&self, name: &str) -> Option<f64> {
        self.feature_names
            .iter()
            .position(|n| n == name)
            .map(|i| self.importances[i])
    }

    fn check_columns(&self, matrix: &FeatureMatrix) -> Result<()> {
        if matrix.feature_names != self.feature_names {
            return Err(ModelError::ColumnMismatch {
                detail: format!(
                    "expected {} training columns, got {}",
                    self.feature_names.len(),
                    matrix.feature_names.len()
                ),
            });
        }
        Ok(())
    }

    /// Predicted labels and deceptive-class probabilities. Missing cells
    /// are imputed with the stored training medians; vote ties predict
    /// truthful.
    pub fn predict(&self, matrix: &FeatureMatrix) -> Result<(Vec<Label>, Vec<f64>)> {
        self.check_columns(matrix)?;
        let data = impute(matrix, &self.medians);
        let n_trees = self.trees.len() as f64;
        let mut labels = Vec::with_capacity(data.len());
        let mut probs = Vec::with_capacity(data.len());
        for row in &data {
            let dec_votes = self
                .trees
                .iter()
                .filter(|t| t.predict_row(row) == 1)
                .count() as f64;
            let p = dec_votes / n_trees;
            probs.push(p);
            labels.push(if p > 0.5 { Label::Deceptive } else { Label::Truthful });
        }
        Ok((labels, probs))
    }

    /// Accuracy over rows predicted only by trees whose bootstrap excluded
    /// them; rows never out of bag are skipped.
    pub fn oob_accuracy(&self) -> Result<f64> {
        let mut correct = 0usize;
        let mut counted = 0usize;
        for (votes, &truth) in self.oob_votes.iter().zip(&self.train_labels) {
            if votes.0 == 0 && votes.1 == 0 {
                continue;
            }
            counted += 1;
            let pred = u8::from(votes.1 > votes.0);
            if pred == truth {
                correct += 1;
            }
        }
        if counted == 0 {
            return Err(ModelError::NoOobRows);
        }
        Ok(correct as f64 / counted as f64)
    }
}

/// Per-fold and aggregate cross-validation metrics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CVReport {
    pub k: usize,
    pub fold_seed: u64,
    pub per_fold: Vec<Metrics>,
    pub mean: Metrics,
    pub std: Metrics,
}

/// Stratified fold assignment: per class, shuffled indices are dealt into
/// folds with each class's overflow offset so overall fold sizes differ by
/// at most one.
pub fn stratified_folds(labels: &[Label], k: usize, seed: u64) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; labels.len()];
    let mut offset = 0usize;
    for class in [Label::Truthful, Label::Deceptive] {
        let mut idxs: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == class)
            .map(|(i, _)| i)
            .collect();
        if idxs.len() < k {
            return Err(ModelError::TooFewRows {
                class: match class {
                    Label::Truthful => "truthful",
                    Label::Deceptive => "deceptive",
                },
                have: idxs.len(),
                need: k,
            });
        }
        idxs.shuffle(&mut rng);
        for (pos, &row) in idxs.iter().enumerate() {
            assignment[row] = (pos + offset) % k;
        }
        offset = (offset + idxs.len()) % k;
    }
    Ok(assignment)
}

/// Stratified k-fold cross-validation of the forest on the matrix;
/// per-fold forests use seeds derived from the config seed by counter.
pub fn cross_validate(matrix: &FeatureMatrix, cfg: &RFConfig, k: usize, seed: u64) -> Result<CVReport> {
    if k < 2 {
        return Err(ModelError::BadConfig("k must be >= 2".into()));
    }
    let folds = stratified_folds(&matrix.labels, k, seed)?;
    let mut per_fold = Vec::with_capacity(k);
    for fold in 0..k {
        let train_idx: Vec<usize> = (0..matrix.n_rows()).filter(|&i| folds[i] != fold).collect();
        let test_idx: Vec<usize> = (0..matrix.n_rows()).filter(|&i| folds[i] == fold).collect();
        let train = matrix.take_rows(&train_idx);
        let test = matrix.take_rows(&test_idx);
        let fold_cfg = RFConfig {
            seed: cfg.seed.wrapping_add(fold as u64 + 1),
            ..*cfg
        };
        let forest = train_random_forest(&train, &fold_cfg)?;
        let (pred, _) = forest.predict(&test)?;
        per_fold.push(metrics(&pred, &test.labels)?);
    }

    let agg = |f: fn(&Metrics) -> f64| -> (f64, f64) {
        let vals: Vec<f64> = per_fold.iter().map(f).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / vals.len() as f64;
        (mean, var.sqrt())
    };
    let (acc, acc_sd) = agg(|m| m.accuracy);
    let (prec, prec_sd) = agg(|m| m.precision);
    let (rec, rec_sd) = agg(|m| m.recall);
    let (f1, f1_sd) = agg(|m| m.f1);
    Ok(CVReport {
        k,
        fold_seed: seed,
        mean: Metrics {
            accuracy: acc,
            precision: prec,
            recall: rec,
            f1,
            zero_division: per_fold.iter().any(|m| m.zero_division),
        },
        std: Metrics {
            accuracy: acc_sd,
            precision: prec_sd,
            recall: rec_sd,
            f1: f1_sd,
            zero_division: false,
        },
        per_fold,
    })
}
