//! Statistical primitives: t-tests, Holm correction, Spearman correlation,
//! single-linkage clustering, IQR outliers, simple regression, the coin-flip
//! F1 baseline, and the deception verdict.
//!
//! Everything here is pure and deterministic; vectors are treated as
//! immutable inputs.

pub mod special;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use special::{t_cdf, t_sf, t_two_sided};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("p-value {0} outside [0, 1]")]
    InvalidP(f64),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("constant vector has no rank order")]
    ConstantVector,
    #[error("malformed distance matrix: {0}")]
    MalformedMatrix(String),
    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("x values are constant; regression slope undefined")]
    ConstantX,
    #[error("{name} = {value} outside [0, 1]")]
    OutOfRange { name: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, StatsError>;

/// Alternative hypothesis for a t-test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    TwoSided,
    Greater,
    Less,
}

/// Result of a single hypothesis test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub df: f64,
    pub p_value: f64,
    pub alternative: Alternative,
    /// Difference of means: first sample minus second (or minus mu0).
    pub mean_diff: f64,
}

/// Holm step-down correction over a family of p-values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectionResult {
    pub raw_p: Vec<f64>,
    pub adjusted_p: Vec<f64>,
    pub rejected: Vec<bool>,
    pub alpha: f64,
}

/// Verdict of the compliance-probability deception test.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DeceptionVerdict {
    /// P(C | K(A, T)): compliance once the manipulation is exposed.
    pub p_exposed: f64,
    /// P(C | A): compliance with the action alone.
    pub p_unexposed: f64,
    pub deceives: bool,
    /// Largest theta for which the action still theta-deceives.
    pub theta_max: f64,
}

/// Ordinary least-squares fit of y on x.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Regression {
    pub slope: f64,
    pub intercept: f64,
    pub r: f64,
    pub p_slope: f64,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_variance(xs: &[f64], m: f64) -> f64 {
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

fn p_from_t(t: f64, df: f64, alternative: Alternative) -> f64 {
    match alternative {
        Alternative::TwoSided => t_two_sided(t, df),
        Alternative::Greater => t_sf(t, df),
        Alternative::Less => t_cdf(t, df),
    }
}

/// Welch's unequal-variance two-sample t-test.
pub fn welch_t_test(a: &[f64], b: &[f64], alternative: Alternative) -> Result<TestResult> {
    if a.len() < 2 || b.len() < 2 {
        return Err(StatsError::DegenerateSample(format!(
            "sample sizes {} and {}; need at least 2 each",
            a.len(),
            b.len()
        )));
    }
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_variance(a, ma), sample_variance(b, mb));
    if va == 0.0 && vb == 0.0 {
        return Err(StatsError::DegenerateSample(
            "both samples have zero variance".into(),
        ));
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let se2 = va / na + vb / nb;
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2 / ((va / na).powi(2) / (na - 1.0) + (vb / nb).powi(2) / (nb - 1.0));
    Ok(TestResult {
        statistic: t,
        df,
        p_value: p_from_t(t, df, alternative),
        alternative,
        mean_diff: ma - mb,
    })
}

/// One-sample t-test of the mean against `mu0`.
pub fn one_sample_t_test(sample: &[f64], mu0: f64, alternative: Alternative) -> Result<TestResult> {
    if sample.len() < 2 {
        return Err(StatsError::DegenerateSample(format!(
            "sample size {}; need at least 2",
            sample.len()
        )));
    }
    let m = mean(sample);
    let v = sample_variance(sample, m);
    if v == 0.0 {
        return Err(StatsError::DegenerateSample(
            "sample variance is zero".into(),
        ));
    }
    let n = sample.len() as f64;
    let t = (m - mu0) / (v / n).sqrt();
    let df = n - 1.0;
    Ok(TestResult {
        statistic: t,
        df,
        p_value: p_from_t(t, df, alternative),
        alternative,
        mean_diff: m - mu0,
    })
}

/// Bonferroni-Holm step-down correction.
///
/// Adjusted p-values are the running maximum of `min(1, (m - j) * p_(j))`
/// over the ascending order; rejection is the step-down rule at `alpha`.
pub fn holm_correct(raw_p: &[f64], alpha: f64) -> Result<CorrectionResult> {
    for &p in raw_p {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(StatsError::InvalidP(p));
        }
    }
    let m = raw_p.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| raw_p[i].partial_cmp(&raw_p[j]).unwrap());

    let mut adjusted = vec![0.0; m];
    let mut running = 0.0f64;
    for (rank, &idx) in order.iter().enumerate() {
        let scaled = ((m - rank) as f64 * raw_p[idx]).min(1.0);
        running = running.max(scaled);
        adjusted[idx] = running;
    }
    let rejected: Vec<bool> = adjusted.iter().map(|&p| p <= alpha).collect();
    Ok(CorrectionResult {
        raw_p: raw_p.to_vec(),
        adjusted_p: adjusted,
        rejected,
        alpha,
    })
}

/// Average ranks (1-based), ties share the mean of their positions.
fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0;
        for k in i..=j {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let (mx, my) = (mean(x), mean(y));
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewValues {
            needed: 2,
            got: x.len(),
        });
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    pearson(&rx, &ry).ok_or(StatsError::ConstantVector)
}

/// Single-linkage clusters of a symmetric distance matrix, cut at `cut`.
///
/// Pairs strictly closer than the cut merge; the result is the list of
/// clusters as sorted index lists, ordered by smallest member.
pub fn single_linkage_cluster(dist: &[Vec<f64>], cut: f64) -> Result<Vec<Vec<usize>>> {
    let n = dist.len();
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(StatsError::MalformedMatrix(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if dist[i][i] != 0.0 {
            return Err(StatsError::MalformedMatrix(format!(
                "diagonal entry ({i},{i}) = {} is not zero",
                dist[i][i]
            )));
        }
        for j in 0..n {
            let d = row[j];
            if d < 0.0 || d.is_nan() {
                return Err(StatsError::MalformedMatrix(format!(
                    "entry ({i},{j}) = {d} is negative or NaN"
                )));
            }
            if (d - dist[j][i]).abs() > 1e-12 {
                return Err(StatsError::MalformedMatrix(format!(
                    "asymmetric at ({i},{j}): {d} vs {}",
                    dist[j][i]
                )));
            }
        }
    }
    // Single-linkage clusters at a fixed cut are exactly the connected
    // components of the sub-threshold graph.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if dist[i][j] < cut {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Tukey fences over type-7 (linear interpolation) quartiles.
pub fn iqr_outliers(values: &[f64], k: f64) -> Result<Vec<bool>> {
    if values.len() < 4 {
        return Err(StatsError::TooFewValues {
            needed: 4,
            got: values.len(),
        });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| -> f64 {
        let h = (sorted.len() as f64 - 1.0) * p;
        let lo = h.floor() as usize;
        let frac = h - lo as f64;
        if lo + 1 < sorted.len() {
            sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
        } else {
            sorted[lo]
        }
    };
    let (q1, q3) = (q(0.25), q(0.75));
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - k * iqr, q3 + k * iqr);
    Ok(values.iter().map(|&v| v < lo || v > hi).collect())
}

/// Ordinary least squares of y on x with the slope's two-sided p-value.
pub fn linear_regression(x: &[f64], y: &[f64]) -> Result<Regression> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let n = x.len();
    if n < 3 {
        return Err(StatsError::TooFewValues { needed: 3, got: n });
    }
    let (mx, my) = (mean(x), mean(y));
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    if sxx == 0.0 {
        return Err(StatsError::ConstantX);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r = if syy == 0.0 { 0.0 } else { sxy / (sxx * syy).sqrt() };
    let df = (n - 2) as f64;
    let p_slope = if r.abs() >= 1.0 {
        0.0
    } else if r == 0.0 {
        1.0
    } else {
        let t = r * (df / (1.0 - r * r)).sqrt();
        t_two_sided(t, df)
    };
    Ok(Regression {
        slope,
        intercept,
        r,
        p_slope,
    })
}

/// Expected F1 of a fair coin classifier on a set with deceptive
/// proportion `q`: q / (0.5 + q).
pub fn coin_flip_f1(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) || q.is_nan() {
        return Err(StatsError::OutOfRange {
            name: "q",
            value: q,
        });
    }
    Ok(q / (0.5 + q))
}

/// Deception verdict from compliance probabilities with and without
/// exposing the manipulation.
pub fn theta_deception(p_exposed: f64, p_unexposed: f64) -> Result<DeceptionVerdict> {
    for (name, v) in [("p_exposed", p_exposed), ("p_unexposed", p_unexposed)] {
        if !(0.0..=1.0).contains(&v) || v.is_nan() {
            return Err(StatsError::OutOfRange { name, value: v });
        }
    }
    let theta_max = (p_unexposed - p_exposed).max(0.0);
    Ok(DeceptionVerdict {
        p_exposed,
        p_unexposed,
        deceives: p_exposed < p_unexposed,
        theta_max,
    })
}
