//! Score-table analyses: pairwise correlation of union-trained models and
//! the cross-domain generalization test against the coin-flip baseline.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::stats::{
    coin_flip_f1, iqr_outliers, linear_regression, one_sample_t_test, Alternative, StatsError,
};

use super::{CrossdomainError, Result, ScoreTable};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairCorrelation {
    pub domain_a: String,
    pub domain_b: String,
    pub n_runs: usize,
    pub excluded_outliers: usize,
    pub slope: f64,
    pub r: f64,
    pub p: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub trained_on: String,
    pub alpha: f64,
    /// Exclusion order is fixed: convergence filter, then per-domain IQR.
    pub exclusion_order: Vec<String>,
    pub pairs: Vec<PairCorrelation>,
}

/// Pairwise linear regression of per-run F1 scores across evaluation
/// domains for models trained on `trained_on`. Runs failing convergence
/// are dropped first, then runs whose score is an IQR outlier in either
/// domain of the pair (outliers judged per domain independently).
pub fn multidomain_correlation(
    table: &ScoreTable,
    trained_on: &str,
    iqr_k: f64,
    alpha: f64,
) -> Result<CorrelationReport> {
    // run_id -> eval domain -> f1 (converged only).
    let mut runs: BTreeMap<&str, BTreeMap<&str, f64>> = BTreeMap::new();
    for e in &table.entries {
        if e.train_domain == trained_on && e.converged {
            runs.entry(&e.run_id).or_default().insert(&e.eval_domain, e.f1);
        }
    }
    let domains: BTreeSet<&str> = runs.values().flat_map(|m| m.keys().copied()).collect();

    // Per-domain outlier run ids.
    let mut outlier_runs: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for &domain in &domains {
        let pairs: Vec<(&str, f64)> = runs
            .iter()
            .filter_map(|(run, scores)| scores.get(domain).map(|&f| (*run, f)))
            .collect();
        let values: Vec<f64> = pairs.iter().map(|(_, f)| *f).collect();
        if values.len() >= 4 {
            let mask = iqr_outliers(&values, iqr_k)?;
            let excluded = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &out)| out)
                .map(|((run, _), _)| *run)
                .collect();
            outlier_runs.insert(domain, excluded);
        }
    }

    let empty = BTreeSet::new();
    let mut report_pairs = Vec::new();
    let domain_list: Vec<&str> = domains.into_iter().collect();
    for (i, &a) in domain_list.iter().enumerate() {
        for &b in &domain_list[i + 1..] {
            let out_a = outlier_runs.get(a).unwrap_or(&empty);
            let out_b = outlier_runs.get(b).unwrap_or(&empty);
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            let mut excluded = 0usize;
            for (run, scores) in &runs {
                let (Some(&fa), Some(&fb)) = (scores.get(a), scores.get(b)) else {
                    continue;
                };
                if out_a.contains(run) || out_b.contains(run) {
                    excluded += 1;
                    continue;
                }
                xs.push(fa);
                ys.push(fb);
            }
            if xs.len() < 4 {
                return Err(CrossdomainError::TooFewRuns {
                    a: a.to_string(),
                    b: b.to_string(),
                    have: xs.len(),
                    need: 4,
                });
            }
            let reg = linear_regression(&xs, &ys)?;
            report_pairs.push(PairCorrelation {
                domain_a: a.to_string(),
                domain_b: b.to_string(),
                n_runs: xs.len(),
                excluded_outliers: excluded,
                slope: reg.slope,
                r: reg.r,
                p: reg.p_slope,
                significant: reg.p_slope < alpha,
            });
        }
    }
    Ok(CorrelationReport {
        trained_on: trained_on.to_string(),
        alpha,
        exclusion_order: vec!["convergence".into(), "iqr_per_domain".into()],
        pairs: report_pairs,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneralizationCell {
    pub train_domain: String,
    pub eval_domain: String,
    pub n_runs: usize,
    pub p: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneralizationReport {
    pub alpha: f64,
    pub train_domains: Vec<String>,
    pub eval_domains: Vec<String>,
    pub cf_f1: BTreeMap<String, f64>,
    pub cells: Vec<GeneralizationCell>,
}

/// One-sample t-test per (train, eval) pair of the converged F1 runs
/// against the eval domain's coin-flip baseline, alternative "greater"
/// (rejecting the null that the mean F1 is at or below the baseline).
pub fn generalization_test(
    table: &ScoreTable,
    q: &BTreeMap<String, f64>,
    alpha: f64,
) -> Result<GeneralizationReport> {
    let train_domains = table.train_domains();
    let eval_domains = table.eval_domains();
    let mut cf = BTreeMap::new();
    for domain in &eval_domains {
        let &prop = q
            .get(domain)
            .ok_or_else(|| CrossdomainError::MissingQ(domain.clone()))?;
        cf.insert(domain.clone(), coin_flip_f1(prop)?);
    }

    let mut cells = Vec::new();
    for train in &train_domains {
        for eval in &eval_domains {
            let f1s = table.converged_f1s(train, eval);
            if f1s.is_empty() {
                continue;
            }
            if f1s.len() < 2 {
                return Err(CrossdomainError::DegenerateSample {
                    train: train.clone(),
                    eval: eval.clone(),
                    have: f1s.len(),
                });
            }
            let baseline = cf[eval];
            let p = match one_sample_t_test(&f1s, baseline, Alternative::Greater) {
                Ok(r) => r.p_value,
                // A constant sample sits strictly above or below (or at)
                // the baseline with no sampling noise to weigh.
                Err(StatsError::DegenerateSample(_)) => {
                    let mean = f1s.iter().sum::<f64>() / f1s.len() as f64;
                    if mean > baseline {
                        0.0
                    } else if mean < baseline {
                        1.0
                    } else {
                        0.5
                    }
                }
                Err(e) => return Err(e.into()),
            };
            cells.push(GeneralizationCell {
                train_domain: train.clone(),
                eval_domain: eval.clone(),
                n_runs: f1s.len(),
                p,
                significant: p < alpha,
            });
        }
    }
    Ok(GeneralizationReport {
        alpha,
        train_domains,
        eval_domains,
        cf_f1: cf,
        cells,
    })
}

impl GeneralizationReport {
    pub fn cell(&self, train: &str, eval: &str) -> Option<&GeneralizationCell> {
        self.cells
            .iter()
            .find(|c| c.train_domain == train && c.eval_domain == eval)
    }

    /// Markdown p-value matrix, rows = train domain, columns = eval
    /// domain, two-decimal cells.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| Trained on \\ Evaluated on |");
        for eval in &self.eval_domains {
            out.push_str(&format!(" {eval} |"));
        }
        out.push('\n');
        out.push_str(&"|---".repeat(self.eval_domains.len() + 1));
        out.push_str("|\n");
        for train in &self.train_domains {
            out.push_str(&format!("| {train} |"));
            for eval in &self.eval_domains {
                match self.cell(train, eval) {
                    Some(cell) => out.push_str(&format!(" {:.2} |", cell.p)),
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossdomain::ScoreEntry;

    fn entry(train: &str, eval: &str, run: usize, f1: f64, converged: bool) -> ScoreEntry {
        ScoreEntry {
            train_domain: train.into(),
            eval_domain: eval.into(),
            run_id: format!("r{run}"),
            f1,
            converged,
        }
    }

    #[test]
    fn identical_columns_slope_one() {
        let mut entries = Vec::new();
        for run in 0..8 {
            let f = 0.4 + 0.05 * run as f64;
            entries.push(entry("union", "A", run, f, true));
            entries.push(entry("union", "B", run, f, true));
        }
        let table = ScoreTable { entries };
        let report = multidomain_correlation(&table, "union", 1.5, 0.05).unwrap();
        assert_eq!(report.pairs.len(), 1);
        let pair = &report.pairs[0];
        assert!((pair.slope - 1.0).abs() < 1e-12);
        assert!((pair.r - 1.0).abs() < 1e-12);
        assert!(pair.significant);
    }

    #[test]
    fn outlier_excluded_before_regression() {
        let mut entries = Vec::new();
        for run in 0..8 {
            let f = 0.5 + 0.01 * run as f64;
            entries.push(entry("union", "A", run, f, true));
            entries.push(entry("union", "B", run, f, true));
        }
        // One wild run in domain A only.
        entries.push(entry("union", "A", 99, 0.99, true));
        entries.push(entry("union", "B", 99, 0.53, true));
        let table = ScoreTable { entries };
        let report = multidomain_correlation(&table, "union", 1.5, 0.05).unwrap();
        let pair = &report.pairs[0];
        assert_eq!(pair.excluded_outliers, 1);
        assert_eq!(pair.n_runs, 8);
        assert!((pair.r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn non_converged_runs_dropped() {
        let mut entries = Vec::new();
        for run in 0..6 {
            entries.push(entry("union", "A", run, 0.4 + 0.02 * run as f64, true));
            entries.push(entry("union", "B", run, 0.4 + 0.02 * run as f64, true));
        }
        entries.push(entry("union", "A", 7, 0.1, false));
        entries.push(entry("union", "B", 7, 0.9, false));
        let table = ScoreTable { entries };
        let report = multidomain_correlation(&table, "union", 1.5, 0.05).unwrap();
        assert_eq!(report.pairs[0].n_runs, 6);
        assert_eq!(report.exclusion_order, vec!["convergence", "iqr_per_domain"]);
    }

    #[test]
    fn generalization_extremes() {
        let mut entries = Vec::new();
        for run in 0..10 {
            entries.push(entry("A", "A", run, 0.93 + 0.001 * run as f64, true));
            entries.push(entry("A", "B", run, 0.20 + 0.001 * run as f64, true));
        }
        let table = ScoreTable { entries };
        let mut q = BTreeMap::new();
        q.insert("A".to_string(), 0.5);
        q.insert("B".to_string(), 0.5);
        let report = generalization_test(&table, &q, 0.01).unwrap();
        let diag = report.cell("A", "A").unwrap();
        assert!(diag.p < 1e-6);
        assert!(diag.significant);
        let off = report.cell("A", "B").unwrap();
        assert!(off.p > 0.999);
        let md = report.to_markdown();
        assert!(md.contains("0.00"));
        assert!(md.contains("1.00"));
    }

    #[test]
    fn centered_runs_p_half() {
        let mut entries = Vec::new();
        // Symmetric around the baseline 0.5.
        for (run, f) in [0.48, 0.49, 0.5, 0.51, 0.52].iter().enumerate() {
            entries.push(entry("A", "A", run, *f, true));
        }
        let table = ScoreTable { entries };
        let mut q = BTreeMap::new();
        q.insert("A".to_string(), 0.5);
        let report = generalization_test(&table, &q, 0.01).unwrap();
        assert!((report.cell("A", "A").unwrap().p - 0.5).abs() < 1e-9);
    }

    #[test]
    fn missing_q_rejected() {
        let table = ScoreTable {
            entries: vec![entry("A", "B", 0, 0.5, true), entry("A", "B", 1, 0.6, true)],
        };
        let q = BTreeMap::new();
        assert!(matches!(
            generalization_test(&table, &q, 0.01),
            Err(CrossdomainError::MissingQ(_))
        ));
    }
}
