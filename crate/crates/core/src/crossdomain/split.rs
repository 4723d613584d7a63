//! Stratified train/validate/test splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Label};

use super::{CrossdomainError, Result};

#[derive(Debug, Clone)]
pub struct DomainSplit {
    pub train: Corpus,
    pub validate: Corpus,
    pub test: Corpus,
}

/// Stratified-by-class random partition; deterministic by seed. Per class
/// the split sizes follow the ratios by largest remainder, so totals are
/// within rounding of the requested proportions.
pub fn split_domain(corpus: &Corpus, ratios: [f64; 3], seed: u64) -> Result<DomainSplit> {
    let sum: f64 = ratios.iter().sum();
    if (sum - 1.0).abs() > 1e-9 || ratios.iter().any(|&r| r < 0.0) {
        return Err(CrossdomainError::Ratio(format!(
            "ratios {ratios:?} must be non-negative and sum to 1"
        )));
    }
    if corpus.is_empty() {
        return Err(CrossdomainError::Ratio("corpus is empty".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for class in [Label::Truthful, Label::Deceptive] {
        let mut idxs: Vec<usize> = corpus
            .documents
            .iter()
            .enumerate()
            .filter(|(_, d)| d.label == class)
            .map(|(i, _)| i)
            .collect();
        idxs.shuffle(&mut rng);
        let n = idxs.len();
        let mut counts = [0usize; 3];
        let mut fractions: Vec<(usize, f64)> = Vec::new();
        let mut assigned = 0usize;
        for (i, &r) in ratios.iter().enumerate() {
            let exact = n as f64 * r;
            counts[i] = exact.floor() as usize;
            assigned += counts[i];
            fractions.push((i, exact - exact.floor()));
        }
        // Largest remainder; ties favor the earlier split (train first).
        fractions.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        for k in 0..(n - assigned) {
            counts[fractions[k % 3].0] += 1;
        }
        let mut cursor = 0;
        for (part, &count) in parts.iter_mut().zip(&counts) {
            part.extend(&idxs[cursor..cursor + count]);
            cursor += count;
        }
    }

    let take = |name: &str, idxs: &Vec<usize>| -> Corpus {
        let mut sorted = idxs.clone();
        sorted.sort_unstable();
        Corpus {
            name: format!("{}-{name}", corpus.name),
            documents: sorted.iter().map(|&i| corpus.documents[i].clone()).collect(),
            provenance: corpus.provenance.clone(),
        }
    };
    Ok(DomainSplit {
        train: take("train", &parts[0]),
        validate: take("validate", &parts[1]),
        test: take("test", &parts[2]),
    })
}
