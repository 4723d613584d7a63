//! Binary classification metrics with "deceptive" as the positive class.

use serde::{Deserialize, Serialize};

use crate::corpus::Label;

use super::ModelError;

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// True when a zero denominator forced precision, recall, or f1 to 0.
    pub zero_division: bool,
}

/// Standard accuracy/precision/recall/F1; zero-denominator cases yield 0
/// with the flag set.
pub fn metrics(pred: &[Label], truth: &[Label]) -> Result<Metrics, ModelError> {
    if pred.len() != truth.len() {
        return Err(ModelError::LengthMismatch {
            left: pred.len(),
            right: truth.len(),
        });
    }
    let (mut tp, mut fp, mut tn, mut fne) = (0usize, 0usize, 0usize, 0usize);
    for (&p, &t) in pred.iter().zip(truth) {
        match (p, t) {
            (Label::Deceptive, Label::Deceptive) => tp += 1,
            (Label::Deceptive, Label::Truthful) => fp += 1,
            (Label::Truthful, Label::Truthful) => tn += 1,
            (Label::Truthful, Label::Deceptive) => fne += 1,
        }
    }
    let n = pred.len() as f64;
    let mut zero_division = false;
    let mut ratio = |num: usize, den: usize| -> f64 {
        if den == 0 {
            zero_division = true;
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    let accuracy = if pred.is_empty() { 0.0 } else { (tp + tn) as f64 / n };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fne);
    let f1 = if precision + recall == 0.0 {
        zero_division = true;
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(Metrics {
        accuracy,
        precision,
        recall,
        f1,
        zero_division,
    })
}
