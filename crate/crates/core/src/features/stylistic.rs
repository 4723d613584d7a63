//! The 55 character-level stylistic features: text/word lengths, digit and
//! capital proportions, letter/digit frequencies, hapax richness, and
//! punctuation-mark frequencies.

use std::collections::HashMap;

use super::FeatureVector;
use crate::text::tokenize_words;

/// The punctuation marks tracked by f_e_0 .. f_e_11, in feature order.
pub const DEFAULT_PUNCTUATION: [char; 12] =
    ['.', ',', '!', '?', ';', ':', '\'', '"', '-', '(', ')', '_'];

#[derive(Debug, Clone)]
pub struct StylisticConfig {
    pub punctuation_marks: Vec<char>,
}

impl Default for StylisticConfig {
    fn default() -> Self {
        Self {
            punctuation_marks: DEFAULT_PUNCTUATION.to_vec(),
        }
    }
}

/// Names of the stylistic features for a config, in the matrix's
/// lexicographic order they will appear anyway; this is declaration order.
pub fn stylistic_feature_names(cfg: &StylisticConfig) -> Vec<String> {
    let mut names = vec![
        "len_text".to_string(),
        "len_words".to_string(),
        "avg_len".to_string(),
        "num_short_w".to_string(),
        "per_digit".to_string(),
        "per_cap".to_string(),
        "richness".to_string(),
    ];
    for c in b'a'..=b'z' {
        names.push(format!("f_{}", c as char));
    }
    for d in 0..10 {
        names.push(format!("f_{d}"));
    }
    for i in 0..cfg.punctuation_marks.len() {
        names.push(format!("f_e_{i}"));
    }
    names
}

/// Character-level extraction over the raw text; word-based entries use
/// the shared tokenizer. Frequency families with an empty denominator are
/// missing.
pub fn extract_stylistic_features(text: &str, doc_id: &str, cfg: &StylisticConfig) -> FeatureVector {
    let mut fv = FeatureVector::new(doc_id);

    let total_chars = text.chars().count();
    fv.set("len_text", total_chars as f64);

    let tokens = tokenize_words(text);
    let words: Vec<&str> = tokens
        .iter()
        .filter(|t| !t.is_punct)
        .map(|t| t.surface.as_str())
        .collect();
    fv.set("len_words", words.len() as f64);

    if words.is_empty() {
        fv.set_missing("avg_len");
        fv.set_missing("richness");
    } else {
        let total_len: usize = words.iter().map(|w| w.chars().count()).sum();
        fv.set("avg_len", total_len as f64 / words.len() as f64);
        let mut counts: HashMap<String, usize> = HashMap::new();
        for w in &words {
            *counts.entry(w.to_lowercase()).or_insert(0) += 1;
        }
        let hapax = counts.values().filter(|&&c| c == 1).count();
        fv.set("richness", hapax as f64 / words.len() as f64);
    }
    let short = words.iter().filter(|w| w.chars().count() <= 3).count();
    fv.set("num_short_w", short as f64);

    // Proportions over all characters, including spaces and punctuation.
    if total_chars == 0 {
        fv.set_missing("per_digit");
        fv.set_missing("per_cap");
    } else {
        let digits = text.chars().filter(|c| c.is_ascii_digit()).count();
        let caps = text.chars().filter(|c| c.is_uppercase()).count();
        fv.set("per_digit", digits as f64 / total_chars as f64);
        fv.set("per_cap", caps as f64 / total_chars as f64);
    }

    let mut letter_counts = [0usize; 26];
    let mut digit_counts = [0usize; 10];
    for c in text.chars() {
        if c.is_ascii_alphabetic() {
            letter_counts[(c.to_ascii_lowercase() as u8 - b'a') as usize] += 1;
        } else if c.is_ascii_digit() {
            digit_counts[(c as u8 - b'0') as usize] += 1;
        }
    }
    let total_letters: usize = letter_counts.iter().sum();
    for (i, &count) in letter_counts.iter().enumerate() {
        let name = format!("f_{}", (b'a' + i as u8) as char);
        if total_letters == 0 {
            fv.set_missing(&name);
        } else {
            fv.set(&name, count as f64 / total_letters as f64);
        }
    }
    let total_digits: usize = digit_counts.iter().sum();
    for (d, &count) in digit_counts.iter().enumerate() {
        let name = format!("f_{d}");
        if total_digits == 0 {
            fv.set_missing(&name);
        } else {
            fv.set(&name, count as f64 / total_digits as f64);
        }
    }

    let mark_counts: Vec<usize> = cfg
        .punctuation_marks
        .iter()
        .map(|&m| text.chars().filter(|&c| c == m).count())
        .collect();
    let total_marks: usize = mark_counts.iter().sum();
    for (i, &count) in mark_counts.iter().enumerate() {
        let name = format!("f_e_{i}");
        if total_marks == 0 {
            fv.set_missing(&name);
        } else {
            fv.set(&name, count as f64 / total_marks as f64);
        }
    }

    fv
}
