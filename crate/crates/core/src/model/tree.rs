//! Axis-aligned decision tree with Gini splits.
//!
//! Thresholds are midpoints between consecutive distinct sorted values;
//! ties in gain resolve to the lowest feature index, then the lowest
//! threshold, so training is fully deterministic given the sampled
//! feature sets.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Node {
    Leaf {
        label: u8,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<Node>,
}

fn gini(c0: usize, c1: usize) -> f64 {
    let n = (c0 + c1) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p0 = c0 as f64 / n;
    let p1 = c1 as f64 / n;
    1.0 - p0 * p0 - p1 * p1
}

fn majority(c0: usize, c1: usize) -> u8 {
    // Tie goes to class 0 (truthful).
    u8::from(c1 > c0)
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    gain: f64,
}

pub struct TreeFit {
    pub tree: DecisionTree,
    /// Impurity decrease per feature, weighted by node fraction.
    pub importance: Vec<f64>,
}

/// Grow a tree on the given row multiset.
///
/// `rows` indexes into `data`/`labels` (bootstrap duplicates allowed);
/// `n_features_per_split` features are sampled without replacement at each
/// node. Nodes stop when smaller than `2 * min_leaf`, pure, or without a
/// positive-gain split that leaves `min_leaf` rows per child.
pub fn fit_tree<R: Rng>(
    data: &[Vec<f64>],
    labels: &[u8],
    rows: Vec<usize>,
    n_features_per_split: usize,
    min_leaf: usize,
    rng: &mut R,
) -> TreeFit {
    let d = data.first().map_or(0, Vec::len);
    let n_root = rows.len();
    let mut fit = TreeFit {
        tree: DecisionTree { nodes: Vec::new() },
        importance: vec![0.0; d],
    };
    grow(
        data,
        labels,
        rows,
        n_features_per_split,
        min_leaf,
        n_root,
        rng,
        &mut fit,
    );
    fit
}

#[allow(clippy::too_many_arguments)]
fn grow<R: Rng>(
    data: &[Vec<f64>],
    labels: &[u8],
    rows: Vec<usize>,
    n_features_per_split: usize,
    min_leaf: usize,
    n_root: usize,
    rng: &mut R,
    fit: &mut TreeFit,
) -> usize {
    let c1 = rows.iter().filter(|&&r| labels[r] == 1).count();
    let c0 = rows.len() - c1;
    let node_gini = gini(c0, c1);

    let make_leaf = |fit: &mut TreeFit| {
        fit.tree.nodes.push(Node::Leaf {
            label: majority(c0, c1),
        });
        fit.tree.nodes.len() - 1
    };

    if rows.len() < 2 * min_leaf || c0 == 0 || c1 == 0 {
        return make_leaf(fit);
    }

    let d = data[0].len();
    let mut feature_pool: Vec<usize> = (0..d).collect();
    feature_pool.shuffle(rng);
    let mut candidates: Vec<usize> = feature_pool
        .into_iter()
        .take(n_features_per_split.clamp(1, d))
        .collect();
    candidates.sort_unstable();

    let mut best: Option<SplitChoice> = None;
    let mut pairs: Vec<(f64, u8)> = Vec::with_capacity(rows.len());
    for &feature in &candidates {
        pairs.clear();
        pairs.extend(rows.iter().map(|&r| (data[r][feature], labels[r])));
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let m = pairs.len();
        let total1 = c1;
        let mut left1 = 0usize;
        for i in 1..m {
            if pairs[i - 1].1 == 1 {
                left1 += 1;
            }
            if pairs[i - 1].0 >= pairs[i].0 {
                continue; // only split between distinct values
            }
            if i < min_leaf || m - i < min_leaf {
                continue;
            }
            let left0 = i - left1;
            let right1 = total1 - left1;
            let right0 = (m - i) - right1;
            let weighted = (i as f64 / m as f64) * gini(left0, left1)
                + ((m - i) as f64 / m as f64) * gini(right0, right1);
            let gain = node_gini - weighted;
            if gain > 0.0 && best.as_ref().is_none_or(|b| gain > b.gain) {
                best = Some(SplitChoice {
                    feature,
                    threshold: 0.5 * (pairs[i - 1].0 + pairs[i].0),
                    gain,
                });
            }
        }
    }

    let Some(choice) = best else {
        return make_leaf(fit);
    };

    fit.importance[choice.feature] += (rows.len() as f64 / n_root as f64) * choice.gain;
    let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
        .into_iter()
        .partition(|&r| data[r][choice.feature] <= choice.threshold);

    let node_idx = fit.tree.nodes.len();
    fit.tree.nodes.push(Node::Split {
        feature: choice.feature,
        threshold: choice.threshold,
        left: 0,
        right: 0,
    });
    let left = grow(
        data,
        labels,
        left_rows,
        n_features_per_split,
        min_leaf,
        n_root,
        rng,
        fit,
    );
    let right = grow(
        data,
        labels,
        right_rows,
        n_features_per_split,
        min_leaf,
        n_root,
        rng,
        fit,
    );
    if let Node::Split {
        left: l, right: r, ..
    } = &mut fit.tree.nodes[node_idx]
    {
        *l = left;
        *r = right;
    }
    node_idx
}

impl DecisionTree {
    pub fn predict_row(&self, row: &[f64]) -> u8 {
        let mut idx = 0;
        loop {
            match &self.nodes[idx] {
                Node::Leaf { label } => return *label,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    idx = if row[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }
}
