//! The three pruning stages. Every candidate drop is validated against an
//! accuracy guard (out-of-bag for stages 1 and 2, cross-validation for
//! stage 3), so each stage's output is a subset of its input and the
//! recorded metric never decreases across an accepted drop.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::features::FeatureMatrix;
use crate::model::{cross_validate, stratified_folds, train_random_forest, RFConfig};
use crate::stats::{single_linkage_cluster, spearman, StatsError};

use super::{FeatureSet, Result, StageLogEntry};

#[derive(Debug, Clone)]
pub struct SelectionConfig {
    pub rf: RFConfig,
    /// Cut on 1 - |spearman| for the colinearity clustering.
    pub colinearity_cut: f64,
    /// Folds for stage 3 permutation importance and its CV guard.
    pub cv_folds: usize,
    pub seed: u64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            rf: RFConfig::default(),
            colinearity_cut: 0.05,
            cv_folds: 5,
            seed: 0,
        }
    }
}

fn train_oob(matrix: &FeatureMatrix, names: &[String], rf: &RFConfig) -> Result<(f64, Vec<(String, f64)>)> {
    let sub = matrix.select(names)?;
    let forest = train_random_forest(&sub, rf)?;
    let oob = forest.oob_accuracy()?;
    let importances = sub
        .feature_names
        .iter()
        .cloned()
        .zip(forest.importances.iter().copied())
        .collect();
    Ok((oob, importances))
}

/// Stage 1: iteratively drop the lowest-importance feature while the
/// out-of-bag accuracy does not decrease; stop at the first drop that
/// would decrease it.
pub fn rf_importance_prune(matrix: &FeatureMatrix, cfg: &SelectionConfig) -> Result<FeatureSet> {
    let rf = RFConfig {
        seed: cfg.seed,
        ..cfg.rf
    };
    let mut names = matrix.feature_names.clone();
    let (mut oob, mut importances) = train_oob(matrix, &names, &rf)?;
    let mut fs = FeatureSet::new(domain_of(matrix), names.clone());

    while names.len() > 1 {
        // Lowest importance, ties broken by name.
        let weakest = importances
            .iter()
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then_with(|| a.0.cmp(&b.0)))
            .map(|(n, _)| n.clone())
            .expect("non-empty");
        let candidate: Vec<String> = names.iter().filter(|n| **n != weakest).cloned().collect();
        let (new_oob, new_importances) = train_oob(matrix, &candidate, &rf)?;
        if new_oob >= oob {
            fs.stage_log.push(StageLogEntry {
                stage: "stage1: rf_importance".into(),
                removed: vec![weakest],
                metric_before: oob,
                metric_after: new_oob,
            });
            names = candidate;
            oob = new_oob;
            importances = new_importances;
        } else {
            break;
        }
    }
    fs.names = names;
    fs.stage1_importance = importances.into_iter().collect();
    Ok(fs)
}

fn domain_of(matrix: &FeatureMatrix) -> String {
    matrix
        .domains
        .first()
        .cloned()
        .unwrap_or_else(|| "unknown".into())
}

/// Absolute Spearman correlation distance between the columns; constant
/// columns have no rank order and count as maximally distant.
fn correlation_distances(matrix: &FeatureMatrix, names: &[String]) -> Result<Vec<Vec<f64>>> {
    let sub = matrix.select(names)?;
    let cols: Vec<Vec<f64>> = (0..sub.n_features())
        .map(|j| {
            let col = sub.column(j);
            let median = {
                let mut present: Vec<f64> = col.iter().filter_map(|v| *v).collect();
                if present.is_empty() {
                    0.0
                } else {
                    present.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    present[present.len() / 2]
                }
            };
            col.into_iter().map(|v| v.unwrap_or(median)).collect()
        })
        .collect();
    let k = cols.len();
    let mut dist = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let d = match spearman(&cols[i], &cols[j]) {
                Ok(rho) => 1.0 - rho.abs(),
                Err(StatsError::ConstantVector) => 1.0,
                Err(e) => return Err(e.into()),
            };
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    Ok(dist)
}

/// Stage 2: cluster features at 1 - |rho| below the cut, keep one
/// representative per cluster (highest stage-1 importance, ties by name),
/// and drop the rest one at a time under the OOB guard.
pub fn colinearity_prune(
    matrix: &FeatureMatrix,
    fs: &FeatureSet,
    cfg: &SelectionConfig,
) -> Result<FeatureSet> {
    let rf = RFConfig {
        seed: cfg.seed.wrapping_add(1),
        ..cfg.rf
    };
    let names = fs.names.clone();
    let mut out = fs.clone();
    if names.len() < 2 {
        return Ok(out);
    }
    let dist = correlation_distances(matrix, &names)?;
    let clusters = single_linkage_cluster(&dist, cfg.colinearity_cut)?;

    let importance = |name: &str| fs.stage1_importance.get(name).copied().unwrap_or(0.0);
    let mut drop_candidates: Vec<String> = Vec::new();
    for cluster in clusters {
        if cluster.len() < 2 {
            continue;
        }
        let mut members: Vec<&String> = cluster.iter().map(|&i| &names[i]).collect();
        members.sort_by(|a, b| {
            importance(b)
                .partial_cmp(&importance(a))
                .unwrap()
                .then_with(|| a.cmp(b))
        });
        for doomed in &members[1..] {
            drop_candidates.push((*doomed).clone());
        }
    }
    drop_candidates.sort();

    let mut current = names;
    let (mut oob, _) = train_oob(matrix, &current, &rf)?;
    for candidate in drop_candidates {
        if current.len() == 1 {
            break;
        }
        let trial: Vec<String> = current.iter().filter(|n| **n != candidate).cloned().collect();
        let (new_oob, _) = train_oob(matrix, &trial, &rf)?;
        if new_oob >= oob {
            out.stage_log.push(StageLogEntry {
                stage: "stage2: colinearity".into(),
                removed: vec![candidate],
                metric_before: oob,
                metric_after: new_oob,
            });
            current = trial;
            oob = new_oob;
        }
    }
    out.names = current;
    Ok(out)
}

/// Mean held-out accuracy drop when a feature's column is permuted within
/// each test fold.
fn permutation_importance(
    matrix: &FeatureMatrix,
    names: &[String],
    cfg: &SelectionConfig,
) -> Result<Vec<(String, f64)>> {
    let sub = matrix.select(names)?;
    let folds = stratified_folds(&sub.labels, cfg.cv_folds, cfg.seed.wrapping_add(2))?;
    let mut drops = vec![0.0; sub.n_features()];
    for fold in 0..cfg.cv_folds {
        let train_idx: Vec<usize> = (0..sub.n_rows()).filter(|&i| folds[i] != fold).collect();
        let test_idx: Vec<usize> = (0..sub.n_rows()).filter(|&i| folds[i] == fold).collect();
        let train = sub.take_rows(&train_idx);
        let test = sub.take_rows(&test_idx);
        let rf = RFConfig {
            seed: cfg.seed.wrapping_add(3 + fold as u64),
            ..cfg.rf
        };
        let forest = train_random_forest(&train, &rf)?;
        let accuracy = |m: &FeatureMatrix| -> Result<f64> {
            let (pred, _) = forest.predict(m)?;
            Ok(crate::model::metrics(&pred, &m.labels)?.accuracy)
        };
        let base = accuracy(&test)?;
        for j in 0..sub.n_features() {
            let mut rng =
                ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1000 + (fold * sub.n_features() + j) as u64));
            let mut permuted = test.clone();
            let mut column: Vec<Option<f64>> = permuted.rows.iter().map(|r| r[j]).collect();
            column.shuffle(&mut rng);
            for (row, v) in permuted.rows.iter_mut().zip(column) {
                row[j] = v;
            }
            drops[j] += (base - accuracy(&permuted)?) / cfg.cv_folds as f64;
        }
    }
    Ok(names.iter().cloned().zip(drops).collect())
}

/// Stage 3: greedily drop features whose permutation importance is <= 0
/// while cross-validated accuracy does not decrease.
pub fn permutation_select(
    matrix: &FeatureMatrix,
    fs: &FeatureSet,
    cfg: &SelectionConfig,
) -> Result<FeatureSet> {
    let mut out = fs.clone();
    if fs.names.len() < 2 {
        return Ok(out);
    }
    let importances = permutation_importance(matrix, &fs.names, cfg)?;
    let mut candidates: Vec<(String, f64)> = importances
        .into_iter()
        .filter(|(_, imp)| *imp <= 0.0)
        .collect();
    candidates.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then_with(|| a.0.cmp(&b.0)));

    let rf = RFConfig {
        seed: cfg.seed.wrapping_add(50),
        ..cfg.rf
    };
    let cv_seed = cfg.seed.wrapping_add(51);
    let cv_accuracy = |names: &[String]| -> Result<f64> {
        let sub = matrix.select(names)?;
        Ok(cross_validate(&sub, &rf, cfg.cv_folds, cv_seed)?.mean.accuracy)
    };

    let mut current = fs.names.clone();
    let mut baseline = cv_accuracy(&current)?;
    for (candidate, _) in candidates {
        if current.len() == 1 {
            break;
        }
        let trial: Vec<String> = current.iter().filter(|n| **n != candidate).cloned().collect();
        let trial_accuracy = cv_accuracy(&trial)?;
        if trial_accuracy >= baseline {
            out.stage_log.push(StageLogEntry {
                stage: "stage3: permutation".into(),
                removed: vec![candidate],
                metric_before: baseline,
                metric_after: trial_accuracy,
            });
            current = trial;
            baseline = trial_accuracy;
        }
    }
    out.names = current;
    Ok(out)
}

/// All three stages in order.
pub fn run_selection_pipeline(matrix: &FeatureMatrix, cfg: &SelectionConfig) -> Result<FeatureSet> {
    let stage1 = rf_importance_prune(matrix, cfg)?;
    let stage2 = colinearity_prune(matrix, &stage1, cfg)?;
    permutation_select(matrix, &stage2, cfg)
}
