//! Function-word n-grams: per-document occurrence scores, class-difference
//! ranking, Holm-corrected significance testing, and tf-idf vectorization.

pub mod tfidf;

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::stats::{holm_correct, welch_t_test, Alternative, StatsError};
use crate::text::TokenizedDoc;

pub use tfidf::{TfidfMode, TfidfVectorizer};

#[derive(Debug, Error)]
pub enum NgramError {
    #[error("corpus has a single class; ranking needs both")]
    SingleClassCorpus,
    #[error("class '{class}' has {count} documents; need at least 2")]
    DegenerateSample { class: &'static str, count: usize },
    #[error("no terms in the training vocabulary")]
    EmptyVocabulary,
    #[error("n must be in 1..=8, got {0}")]
    BadOrder(usize),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

pub type Result<T> = std::result::Result<T, NgramError>;

/// Which word count divides each sentence's occurrence count. The formula
/// uses the full sentence word count; the function-word-only variant is
/// exposed for sensitivity analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OccDenominator {
    #[default]
    SentenceWords,
    FunctionWords,
}

/// A ranked n-gram with per-class aggregate occurrence scores.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NgramEntry {
    pub ngram: Vec<String>,
    pub n: usize,
    pub agg_truthful: f64,
    pub agg_deceptive: f64,
    /// Signed difference: deceptive minus truthful aggregate.
    pub diff: f64,
}

/// A significance-tested n-gram.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NgramTest {
    #[serde(flatten)]
    pub entry: NgramEntry,
    pub t: f64,
    pub df: f64,
    pub p_raw: f64,
    pub p_holm: f64,
    pub significant: bool,
    /// '+' when deceptive scores are larger on average.
    pub sign: char,
}

fn fw_sequence(sentence: &crate::text::Sentence) -> Vec<&str> {
    sentence
        .tokens
        .iter()
        .filter(|t| t.is_function_word)
        .map(|t| t.lower.as_str())
        .collect()
}

fn sentence_denominator(
    sentence: &crate::text::Sentence,
    fw_len: usize,
    n: usize,
    denom: OccDenominator,
) -> Option<f64> {
    let base = match denom {
        OccDenominator::SentenceWords => sentence.word_count(),
        OccDenominator::FunctionWords => fw_len,
    };
    if base <= n {
        None
    } else {
        Some((base - n) as f64)
    }
}

/// Occ_n(x, t): sum over sentences of the n-gram's occurrence count in the
/// sentence's function-word subsequence over (word count - n). Sentences
/// with word count <= n are skipped.
pub fn occ_score(ngram: &[String], doc: &TokenizedDoc, denom: OccDenominator) -> Result<f64> {
    let n = ngram.len();
    if n == 0 || n > 8 {
        return Err(NgramError::BadOrder(n));
    }
    let mut total = 0.0;
    for sentence in &doc.sentences {
        let fws = fw_sequence(sentence);
        let Some(d) = sentence_denominator(sentence, fws.len(), n, denom) else {
            continue;
        };
        if fws.len() < n {
            continue;
        }
        let hits = fws
            .windows(n)
            .filter(|w| w.iter().zip(ngram).all(|(a, b)| *a == b))
            .count();
        total += hits as f64 / d;
    }
    Ok(total)
}

/// All function-word n-grams of a document with their Occ scores, for every
/// order in `n_range`.
fn doc_ngram_scores(
    doc: &TokenizedDoc,
    n_range: std::ops::RangeInclusive<usize>,
    denom: OccDenominator,
) -> HashMap<Vec<String>, f64> {
    let mut scores: HashMap<Vec<String>, f64> = HashMap::new();
    for sentence in &doc.sentences {
        let fws = fw_sequence(sentence);
        for n in n_range.clone() {
            let Some(d) = sentence_denominator(sentence, fws.len(), n, denom) else {
                continue;
            };
            if fws.len() < n {
                continue;
            }
            for w in fws.windows(n) {
                let key: Vec<String> = w.iter().map(|s| s.to_string()).collect();
                *scores.entry(key).or_insert(0.0) += 1.0 / d;
            }
        }
    }
    scores
}

/// Rank all function-word n-grams by the absolute class difference of
/// aggregate Occ scores, descending, ties broken lexicographically.
pub fn rank_ngrams(
    docs: &[(Label, &TokenizedDoc)],
    n_range: std::ops::RangeInclusive<usize>,
    top_k: usize,
    denom: OccDenominator,
) -> Result<Vec<NgramEntry>> {
    if *n_range.start() == 0 || *n_range.end() > 8 {
        return Err(NgramError::BadOrder(*n_range.end()));
    }
    let has_truthful = docs.iter().any(|(l, _)| *l == Label::Truthful);
    let has_deceptive = docs.iter().any(|(l, _)| *l == Label::Deceptive);
    if !has_truthful || !has_deceptive {
        return Err(NgramError::SingleClassCorpus);
    }

    let mut aggregates: HashMap<Vec<String>, (f64, f64)> = HashMap::new();
    for (label, doc) in docs {
        for (ngram, score) in doc_ngram_scores(doc, n_range.clone(), denom) {
            let entry = aggregates.entry(ngram).or_insert((0.0, 0.0));
            match label {
                Label::Truthful => entry.0 += score,
                Label::Deceptive => entry.1 += score,
            }
        }
    }
    let mut entries: Vec<NgramEntry> = aggregates
        .into_iter()
        .map(|(ngram, (truthful, deceptive))| NgramEntry {
            n: ngram.len(),
            agg_truthful: truthful,
            agg_deceptive: deceptive,
            diff: deceptive - truthful,
            ngram,
        })
        .collect();
    entries.sort_by(|a, b| {
        b.diff
            .abs()
            .partial_cmp(&a.diff.abs())
            .unwrap()
            .then_with(|| a.ngram.cmp(&b.ngram))
    });
    entries.truncate(top_k);
    Ok(entries)
}

/// Welch-test each candidate n-gram's per-document Occ scores between the
/// classes, Holm-correcting across the candidate family.
pub fn ngram_significance(
    candidates: Vec<NgramEntry>,
    docs: &[(Label, &TokenizedDoc)],
    alpha: f64,
    denom: OccDenominator,
) -> Result<Vec<NgramTest>> {
    let truthful_count = docs.iter().filter(|(l, _)| *l == Label::Truthful).count();
    let deceptive_count = docs.len() - truthful_count;
    if truthful_count < 2 {
        return Err(NgramError::DegenerateSample {
            class: "truthful",
            count: truthful_count,
        });
    }
    if deceptive_count < 2 {
        return Err(NgramError::DegenerateSample {
            class: "deceptive",
            count: deceptive_count,
        });
    }

    // Per-doc Occ scores for every candidate in one pass over documents.
    let candidate_set: HashMap<&[String], usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, e)| (e.ngram.as_slice(), i))
        .collect();
    let n_lo = candidates.iter().map(|e| e.n).min().unwrap_or(1);
    let n_hi = candidates.iter().map(|e| e.n).max().unwrap_or(1);
    let mut truthful_scores = vec![vec![0.0f64; truthful_count]; candidates.len()];
    let mut deceptive_scores = vec![vec![0.0f64; deceptive_count]; candidates.len()];
    let (mut ti, mut di) = (0, 0);
    for (label, doc) in docs {
        let scores = doc_ngram_scores(doc, n_lo..=n_hi, denom);
        for (ngram, score) in &scores {
            if let Some(&ci) = candidate_set.get(ngram.as_slice()) {
                match label {
                    Label::Truthful => truthful_scores[ci][ti] = *score,
                    Label::Deceptive => deceptive_scores[ci][di] = *score,
                }
            }
        }
        match label {
            Label::Truthful => ti += 1,
            Label::Deceptive => di += 1,
        }
    }

    struct Outcome {
        t: f64,
        df: f64,
        p: f64,
        sign: char,
    }
    let mut outcomes = Vec::with_capacity(candidates.len());
    for ci in 0..candidates.len() {
        let dec = &deceptive_scores[ci];
        let tru = &truthful_scores[ci];
        let outcome = match welch_t_test(dec, tru, Alternative::TwoSided) {
            Ok(r) => Outcome {
                t: r.statistic,
                df: r.df,
                p: r.p_value,
                sign: if r.mean_diff > 0.0 { '+' } else if r.mean_diff < 0.0 { '-' } else { '=' },
            },
            Err(StatsError::DegenerateSample(_)) => {
                // Zero variance on both sides: identical scores mean no
                // evidence, differing constants mean exact separation.
                let md = mean(dec) - mean(tru);
                if md == 0.0 {
                    Outcome { t: 0.0, df: f64::NAN, p: 1.0, sign: '=' }
                } else {
                    Outcome {
                        t: if md > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY },
                        df: f64::NAN,
                        p: 0.0,
                        sign: if md > 0.0 { '+' } else { '-' },
                    }
                }
            }
            Err(e) => return Err(e.into()),
        };
        outcomes.push(outcome);
    }

    let raw: Vec<f64> = outcomes.iter().map(|o| o.p).collect();
    let correction = holm_correct(&raw, alpha)?;
    Ok(candidates
        .into_iter()
        .zip(outcomes)
        .enumerate()
        .map(|(i, (entry, o))| NgramTest {
            entry,
            t: o.t,
            df: o.df,
            p_raw: o.p,
            p_holm: correction.adjusted_p[i],
            significant: correction.rejected[i],
            sign: o.sign,
        })
        .collect())
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// CSV export: `ngram,n,agg_truthful,agg_deceptive,diff,t,p_raw,p_holm,significant`.
pub fn write_ngram_tests_csv<W: Write>(tests: &[NgramTest], writer: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "ngram",
        "n",
        "agg_truthful",
        "agg_deceptive",
        "diff",
        "t",
        "p_raw",
        "p_holm",
        "significant",
    ])?;
    for t in tests {
        w.write_record([
            t.entry.ngram.join(" "),
            t.entry.n.to_string(),
            format!("{:?}", t.entry.agg_truthful),
            format!("{:?}", t.entry.agg_deceptive),
            format!("{:?}", t.entry.diff),
            format!("{:?}", t.t),
            format!("{:?}", t.p_raw),
            format!("{:?}", t.p_holm),
            t.significant.to_string(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::TextPipeline;

    fn ngram(words: &[&str]) -> Vec<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    fn tokenized(text: &str) -> TokenizedDoc {
        TextPipeline::builtin().process(text)
    }

    #[test]
    fn occ_worked_examples() {
        let doc = tokenized("the cat sat on the mat");
        // 6 words, FW subsequence [the, on, the].
        let occ = occ_score(&ngram(&["the"]), &doc, OccDenominator::default()).unwrap();
        assert!((occ - 0.4).abs() < 1e-12);
        let occ = occ_score(&ngram(&["the", "on"]), &doc, OccDenominator::default()).unwrap();
        assert!((occ - 0.25).abs() < 1e-12);
        let occ = occ_score(&ngram(&["under"]), &doc, OccDenominator::default()).unwrap();
        assert_eq!(occ, 0.0);
    }

    #[test]
    fn occ_skips_short_sentences() {
        let doc = tokenized("Go now. The cat sat on the mat happily today.");
        // First sentence has 2 words; for n=2 the denominator is zero, skip.
        let occ = occ_score(&ngram(&["the", "on"]), &doc, OccDenominator::default()).unwrap();
        assert!(occ > 0.0);
        let short_only = tokenized("Go on.");
        let occ = occ_score(&ngram(&["on", "the"]), &short_only, OccDenominator::default()).unwrap();
        assert_eq!(occ, 0.0);
    }

    #[test]
    fn occ_additive_over_sentences() {
        let parts = ["The cat is on a mat.", "We saw the dog by the door."];
        let whole = tokenized(&parts.join(" "));
        let x = ngram(&["the"]);
        let total = occ_score(&x, &whole, OccDenominator::default()).unwrap();
        let sum: f64 = parts
            .iter()
            .map(|p| occ_score(&x, &tokenized(p), OccDenominator::default()).unwrap())
            .sum();
        assert!((total - sum).abs() < 1e-12);
    }

    #[test]
    fn occ_content_word_invariance() {
        // Same FW positions and sentence length, different content words.
        let a = tokenized("the cat sat on the mat");
        let b = tokenized("the dog lay on the rug");
        let x = ngram(&["the", "on"]);
        assert_eq!(
            occ_score(&x, &a, OccDenominator::default()).unwrap(),
            occ_score(&x, &b, OccDenominator::default()).unwrap()
        );
    }

    fn planted_docs() -> Vec<(Label, TokenizedDoc)> {
        // Deceptive docs contain "but"; otherwise both classes share the
        // same templates so no other n-gram separates them.
        let templates = [
            "I saw the {} thing",
            "We found the {} box near the door",
            "They kept the {} item on a shelf for days",
            "She left the {} part outside",
        ];
        let mut docs = Vec::new();
        for i in 0..12 {
            let filler = ["red", "blue", "green", "small"][i % 4];
            let base = templates[i % templates.len()].replace("{}", filler);
            // Equal added word counts keep every other n-gram's Occ
            // distribution identical between the classes.
            docs.push((
                Label::Deceptive,
                tokenized(&format!("{base} but it broke.")),
            ));
            docs.push((Label::Truthful, tokenized(&format!("{base} it broke today."))));
        }
        docs
    }

    #[test]
    fn planted_ngram_ranks_positive() {
        let docs = planted_docs();
        let refs: Vec<(Label, &TokenizedDoc)> = docs.iter().map(|(l, d)| (*l, d)).collect();
        let ranked = rank_ngrams(&refs, 1..=2, 200, OccDenominator::default()).unwrap();
        let but = ranked.iter().find(|e| e.ngram == ngram(&["but"])).unwrap();
        assert!(but.diff > 0.0);
        assert_eq!(but.agg_truthful, 0.0);
    }

    #[test]
    fn symmetric_corpus_all_zero_diffs() {
        let text = "We went to the store and back.";
        let docs = vec![
            (Label::Truthful, tokenized(text)),
            (Label::Deceptive, tokenized(text)),
        ];
        let refs: Vec<(Label, &TokenizedDoc)> = docs.iter().map(|(l, d)| (*l, d)).collect();
        let ranked = rank_ngrams(&refs, 1..=3, 50, OccDenominator::default()).unwrap();
        assert!(ranked.iter().all(|e| e.diff.abs() < 1e-12));
    }

    #[test]
    fn top_k_and_order() {
        let docs = planted_docs();
        let refs: Vec<(Label, &TokenizedDoc)> = docs.iter().map(|(l, d)| (*l, d)).collect();
        let ranked = rank_ngrams(&refs, 1..=1, 2, OccDenominator::default()).unwrap();
        assert_eq!(ranked.len(), 2);
        assert!(ranked[0].diff.abs() >= ranked[1].diff.abs());
        // Identical reruns produce identical rankings.
        let again = rank_ngrams(&refs, 1..=1, 2, OccDenominator::default()).unwrap();
        let a: Vec<&Vec<String>> = ranked.iter().map(|e| &e.ngram).collect();
        let b: Vec<&Vec<String>> = again.iter().map(|e| &e.ngram).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn single_class_rejected() {
        let docs = vec![(Label::Truthful, tokenized("only one side here"))];
        let refs: Vec<(Label, &TokenizedDoc)> = docs.iter().map(|(l, d)| (*l, d)).collect();
        assert!(matches!(
            rank_ngrams(&refs, 1..=1, 10, OccDenominator::default()),
            Err(NgramError::SingleClassCorpus)
        ));
    }

    #[test]
    fn planted_significance() {
        let docs = planted_docs();
        let refs: Vec<(Label, &TokenizedDoc)> = docs.iter().map(|(l, d)| (*l, d)).collect();
        let ranked = rank_ngrams(&refs, 1..=1, 100, OccDenominator::default()).unwrap();
        let tests = ngram_significance(ranked, &refs, 0.01, OccDenominator::default()).unwrap();
        let but = tests.iter().find(|t| t.entry.ngram == ngram(&["but"])).unwrap();
        assert!(but.significant, "p_holm = {}", but.p_holm);
        assert_eq!(but.sign, '+');
        // A function word present identically in both classes is not significant.
        let the = tests.iter().find(|t| t.entry.ngram == ngram(&["the"]));
        if let Some(the) = the {
            assert!(!the.significant);
        }
    }

    #[test]
    fn identical_classes_p_one() {
        let text = "We all saw the same thing at the same place.";
        let mut docs = Vec::new();
        for _ in 0..3 {
            docs.push((Label::Truthful, tokenized(text)));
            docs.push((Label::Deceptive, tokenized(text)));
        }
        let refs: Vec<(Label, &TokenizedDoc)> = docs.iter().map(|(l, d)| (*l, d)).collect();
        let ranked = rank_ngrams(&refs, 1..=1, 10, OccDenominator::default()).unwrap();
        let tests = ngram_significance(ranked, &refs, 0.01, OccDenominator::default()).unwrap();
        for t in &tests {
            assert_eq!(t.p_raw, 1.0);
            assert!(!t.significant);
        }
    }
}
