//! Per-feature significance testing: Welch t-tests between the classes on
//! each feature column, Holm-corrected across the family.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{FeatureMatrix, FeaturesError, Result};
use crate::corpus::Label;
use crate::stats::{holm_correct, welch_t_test, Alternative};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigRow {
    pub name: String,
    pub statistic: f64,
    pub df: f64,
    pub p_raw: f64,
    pub p_holm: f64,
    pub significant: bool,
    /// '+' when the deceptive class mean is larger, '-' when smaller.
    pub direction: char,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigReport {
    pub alpha: f64,
    pub rows: Vec<SigRow>,
    /// Features that could not be tested, with the reason.
    pub skipped: Vec<(String, String)>,
}

/// Welch-test every feature column (deceptive vs truthful, two-sided,
/// missing cells excluded) and Holm-correct the family.
pub fn significance_report(matrix: &FeatureMatrix, alpha: f64) -> Result<SigReport> {
    let mut tested: Vec<(String, crate::stats::TestResult)> = Vec::new();
    let mut skipped = Vec::new();
    for (idx, name) in matrix.feature_names.iter().enumerate() {
        let mut deceptive = Vec::new();
        let mut truthful = Vec::new();
        for (row, label) in matrix.rows.iter().zip(&matrix.labels) {
            if let Some(v) = row[idx] {
                match label {
                    Label::Deceptive => deceptive.push(v),
                    Label::Truthful => truthful.push(v),
                }
            }
        }
        match welch_t_test(&deceptive, &truthful, Alternative::TwoSided) {
            Ok(result) => tested.push((name.clone(), result)),
            Err(e) => skipped.push((name.clone(), e.to_string())),
        }
    }
    let raw: Vec<f64> = tested.iter().map(|(_, r)| r.p_value).collect();
    let correction = holm_correct(&raw, alpha).map_err(|e| FeaturesError::DegenerateInput {
        message: e.to_string(),
    })?;
    let rows = tested
        .into_iter()
        .enumerate()
        .map(|(i, (name, r))| SigRow {
            name,
            statistic: r.statistic,
            df: r.df,
            p_raw: r.p_value,
            p_holm: correction.adjusted_p[i],
            significant: correction.rejected[i],
            direction: if r.mean_diff > 0.0 {
                '+'
            } else if r.mean_diff < 0.0 {
                '-'
            } else {
                '='
            },
        })
        .collect();
    Ok(SigReport {
        alpha,
        rows,
        skipped,
    })
}

impl SigReport {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["name", "statistic", "df", "p_raw", "p_holm", "significant", "direction"])
            .map_err(|e| FeaturesError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        for row in &self.rows {
            w.write_record([
                row.name.clone(),
                format!("{:?}", row.statistic),
                format!("{:?}", row.df),
                format!("{:?}", row.p_raw),
                format!("{:?}", row.p_holm),
                row.significant.to_string(),
                row.direction.to_string(),
            ])
            .map_err(|e| FeaturesError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        }
        w.flush()?;
        Ok(())
    }
}
