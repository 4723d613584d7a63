//! Engineered cue features over a tagged, function-word-marked document:
//! counts, per-sentence and per-word ratios, diversity measures,
//! dictionary-backed categories, and the three readability indices.

use super::dictionary::CategoryDictionary;
use super::readability::{readability, DocStats, ReadabilityIndex};
use super::{FeatureVector, FeaturesError};
use crate::text::{count_syllables, tagset, TokenizedDoc};

/// All cue feature names, in declaration order.
pub const CUE_FEATURE_NAMES: [&str; 22] = [
    "words",
    "verbs",
    "sens",
    "sen_len",
    "word_len",
    "paus",
    "modi",
    "modal",
    "cert",
    "self_ref",
    "group_ref",
    "emot",
    "lex_div",
    "content_div",
    "redun",
    "spatio_temp",
    "percep_info",
    "pos_affect",
    "neg_affect",
    "ari",
    "smog",
    "fog",
];

/// Extract the cue features. The document must be tokenized, tagged, and
/// function-word marked; dictionary-backed cues are missing when no
/// dictionary (or the needed category) is available.
pub fn extract_cue_features(
    doc: &TokenizedDoc,
    doc_id: &str,
    dict: Option<&CategoryDictionary>,
) -> Result<FeatureVector, FeaturesError> {
    for token in doc.words() {
        if token.pos.is_none() {
            return Err(FeaturesError::MissingPrerequisite {
                doc_id: doc_id.to_string(),
                message: format!("token '{}' is untagged; cue features need POS tags", token.surface),
            });
        }
    }

    let mut fv = FeatureVector::new(doc_id);
    let words: Vec<_> = doc.words().collect();
    let w = words.len();
    let s = doc.sentences.len();

    let mut verbs = 0usize;
    let mut nouns = 0usize;
    let mut adjectives = 0usize;
    let mut adverbs = 0usize;
    let mut modals = 0usize;
    let mut function_words = 0usize;
    let mut self_refs = 0usize;
    let mut group_refs = 0usize;
    let mut alnum_chars = 0usize;
    let mut polysyllables = 0usize;
    let mut distinct = std::collections::HashSet::new();
    let mut content_total = 0usize;
    let mut content_distinct = std::collections::HashSet::new();
    for t in &words {
        let tag = t.pos.as_deref().unwrap_or_default();
        if tagset::is_verb_tag(tag) {
            verbs += 1;
        }
        if tagset::is_noun_tag(tag) {
            nouns += 1;
        }
        if tagset::is_adjective_tag(tag) {
            adjectives += 1;
        }
        if tagset::is_adverb_tag(tag) {
            adverbs += 1;
        }
        if tag == "MD" {
            modals += 1;
        }
        if t.is_function_word {
            function_words += 1;
        } else {
            content_total += 1;
            content_distinct.insert(t.lower.clone());
        }
        if t.lower == "i" || t.lower == "me" {
            self_refs += 1;
        }
        if t.lower == "we" || t.lower == "us" {
            group_refs += 1;
        }
        alnum_chars += t.surface.chars().filter(|c| c.is_alphanumeric()).count();
        if count_syllables(&t.surface) >= 3 {
            polysyllables += 1;
        }
        distinct.insert(t.lower.clone());
    }
    let punct_marks = doc.tokens().filter(|t| t.is_punct).count();

    fv.set("words", w as f64);
    fv.set("verbs", verbs as f64);
    fv.set("sens", s as f64);
    fv.set("modi", (adjectives + adverbs) as f64);

    let per_sentence = |fv: &mut FeatureVector, name: &str, num: f64| {
        if s == 0 {
            fv.set_missing(name);
        } else {
            fv.set(name, num / s as f64);
        }
    };
    per_sentence(&mut fv, "sen_len", w as f64);
    per_sentence(&mut fv, "paus", punct_marks as f64);
    per_sentence(&mut fv, "redun", function_words as f64);

    let per_word = |fv: &mut FeatureVector, name: &str, num: f64| {
        if w == 0 {
            fv.set_missing(name);
        } else {
            fv.set(name, num / w as f64);
        }
    };
    per_word(&mut fv, "word_len", doc.char_count as f64);
    per_word(&mut fv, "modal", modals as f64);
    per_word(&mut fv, "self_ref", self_refs as f64);
    per_word(&mut fv, "group_ref", group_refs as f64);
    per_word(&mut fv, "lex_div", distinct.len() as f64);

    if nouns + verbs == 0 {
        fv.set_missing("emot");
    } else {
        fv.set("emot", (adjectives + adverbs) as f64 / (nouns + verbs) as f64);
    }
    if content_total == 0 {
        fv.set_missing("content_div");
    } else {
        fv.set("content_div", content_distinct.len() as f64 / content_total as f64);
    }

    // Dictionary-backed cues: certainty, spatiotemporal, perceptual, and
    // the two affect categories.
    let lowers: Vec<&str> = words.iter().map(|t| t.lower.as_str()).collect();
    let dict_cue = |fv: &mut FeatureVector, name: &str, categories: &[&str]| {
        let total: Option<usize> = dict.and_then(|d| {
            categories
                .iter()
                .map(|c| d.match_count(c, lowers.iter().copied()))
                .sum()
        });
        match total {
            Some(hits) if w > 0 => fv.set(name, hits as f64 / w as f64),
            _ => fv.set_missing(name),
        }
    };
    dict_cue(&mut fv, "cert", &["certain"]);
    dict_cue(&mut fv, "spatio_temp", &["space", "time"]);
    dict_cue(&mut fv, "percep_info", &["percep"]);
    dict_cue(&mut fv, "pos_affect", &["posemo"]);
    dict_cue(&mut fv, "neg_affect", &["negemo"]);

    let stats = DocStats {
        chars: alnum_chars,
        words: w,
        sentences: s,
        polysyllables,
        complex_words: polysyllables,
    };
    for (name, index) in [
        ("ari", ReadabilityIndex::Ari),
        ("smog", ReadabilityIndex::Smog),
        ("fog", ReadabilityIndex::Fog),
    ] {
        match readability(stats, index) {
            Ok(v) => fv.set(name, v),
            Err(_) => fv.set_missing(name),
        }
    }

    Ok(fv)
}
