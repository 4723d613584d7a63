//! Corpus cleaning: metadata stripping, HTML break normalization,
//! removal of empty / non-English / overlong / duplicate documents, and
//! optional label flipping.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{Corpus, Provenance};
use crate::text::FunctionWordLexicon;

/// Default metadata rule: leading RFC-822 style header block (header lines
/// with optional folded continuations, terminated by a blank line).
const EMAIL_HEADER_BLOCK: &str = concat!(
    r"(?s)\A(?:(?:From|To|Cc|Bcc|Subject|Date|Received|Return-Path|Reply-To|Sender",
    r"|Message-ID|MIME-Version|Content-Type|Content-Transfer-Encoding|X-[A-Za-z0-9-]+)",
    r":[^\n]*\n(?:[ \t][^\n]*\n)*)+\n+"
);

#[derive(Debug, Clone)]
pub struct CleanConfig {
    pub flip_labels: bool,
    pub max_chars: usize,
    pub dedup: bool,
    pub drop_non_english: bool,
    /// Regex rules whose matches are deleted before any other step.
    pub metadata_rules: Vec<String>,
}

impl Default for CleanConfig {
    fn default() -> Self {
        Self {
            flip_labels: false,
            max_chars: 1_000_000,
            dedup: true,
            drop_non_english: true,
            metadata_rules: vec![EMAIL_HEADER_BLOCK.to_string()],
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CleanReport {
    pub removed_duplicates: usize,
    pub removed_non_english: usize,
    pub removed_empty: usize,
    pub removed_overlong: usize,
    pub labels_flipped: bool,
    pub transformations: Vec<String>,
}

impl CleanReport {
    pub fn total_removed(&self) -> usize {
        self.removed_duplicates + self.removed_non_english + self.removed_empty + self.removed_overlong
    }
}

/// Hash of the text lowercased with whitespace runs collapsed; the
/// duplicate notion used by dedup.
fn dedup_key(text: &str) -> u64 {
    let mut hasher = DefaultHasher::new();
    let mut last_space = false;
    for c in text.trim().chars() {
        if c.is_whitespace() {
            if !last_space {
                ' '.hash(&mut hasher);
                last_space = true;
            }
        } else {
            for lc in c.to_lowercase() {
                lc.hash(&mut hasher);
            }
            last_space = false;
        }
    }
    hasher.finish()
}

/// Heuristic non-English check: almost no tokens from the English
/// function-word lexicon AND mostly non-ASCII letters.
fn looks_non_english(text: &str, lexicon: &FunctionWordLexicon) -> bool {
    let tokens: Vec<String> = text
        .split_whitespace()
        .map(|t| {
            t.trim_matches(|c: char| !c.is_alphanumeric())
                .to_lowercase()
        })
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return false;
    }
    let fw_hits = tokens.iter().filter(|t| lexicon.contains(t)).count();
    let fw_fraction = fw_hits as f64 / tokens.len() as f64;

    let total_chars = text.chars().count();
    let ascii_letters = text.chars().filter(|c| c.is_ascii_alphabetic()).count();
    let ascii_fraction = ascii_letters as f64 / total_chars.max(1) as f64;

    fw_fraction < 0.05 && ascii_fraction < 0.5
}

fn apply_to_fixpoint(re: &Regex, text: &str) -> String {
    let mut current = text.to_string();
    for _ in 0..64 {
        let next = re.replace_all(&current, "").into_owned();
        if next == current {
            break;
        }
        current = next;
    }
    current
}

/// Clean a corpus. The per-document transformations run first; removals are
/// tallied by first applicable reason (empty, non-English, overlong, then
/// duplicate). Cleaning a cleaned corpus removes nothing further.
pub fn clean_corpus(corpus: &Corpus, cfg: &CleanConfig) -> (Corpus, CleanReport) {
    let lexicon = FunctionWordLexicon::builtin();
    let br_re = Regex::new(r"(?i)<br\s*/?\s*>").unwrap();
    let metadata_res: Vec<Regex> = cfg
        .metadata_rules
        .iter()
        .filter_map(|r| Regex::new(r).ok())
        .collect();

    let mut report = CleanReport {
        labels_flipped: cfg.flip_labels,
        ..Default::default()
    };
    if !metadata_res.is_empty() {
        report.transformations.push("strip_metadata".into());
    }
    report.transformations.push("html_br_to_newline".into());
    report.transformations.push("trim".into());

    let mut kept = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    for doc in &corpus.documents {
        let mut text = doc.text.clone();
        for re in &metadata_res {
            text = apply_to_fixpoint(re, &text);
        }
        text = br_re.replace_all(&text, "\n").into_owned();
        let text = text.trim().to_string();

        if text.is_empty() {
            report.removed_empty += 1;
            continue;
        }
        if cfg.drop_non_english && looks_non_english(&text, &lexicon) {
            report.removed_non_english += 1;
            continue;
        }
        if text.chars().count() > cfg.max_chars {
            report.removed_overlong += 1;
            continue;
        }
        if cfg.dedup && !seen.insert(dedup_key(&text)) {
            report.removed_duplicates += 1;
            continue;
        }
        let mut cleaned = doc.clone();
        cleaned.text = text;
        if cfg.flip_labels {
            cleaned.label = cleaned.label.flip();
        }
        kept.push(cleaned);
    }

    let cleaned = Corpus {
        name: corpus.name.clone(),
        documents: kept,
        provenance: Provenance::Cleaned(report.clone()),
    };
    (cleaned, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Document, Label};
    use proptest::prelude::*;

    fn doc(id: &str, text: &str, label: Label) -> Document {
        Document {
            id: id.into(),
            text: text.into(),
            label,
            domain: "test".into(),
            meta: None,
            taxonomy: None,
        }
    }

    fn corpus_of(docs: Vec<Document>) -> Corpus {
        Corpus::new("test", docs)
    }

    #[test]
    fn br_tags_become_newlines() {
        let c = corpus_of(vec![doc("a", "a<BR>b and c<br/>d plus e<br />f", Label::Truthful)]);
        let (cleaned, _) = clean_corpus(&c, &CleanConfig::default());
        assert_eq!(cleaned.documents[0].text, "a\nb and c\nd plus e\nf");
    }

    #[test]
    fn duplicates_keep_first() {
        let c = corpus_of(vec![
            doc("a", "The same text here", Label::Truthful),
            doc("b", "the   SAME text here", Label::Deceptive),
        ]);
        let (cleaned, report) = clean_corpus(&c, &CleanConfig::default());
        assert_eq!(cleaned.len(), 1);
        assert_eq!(cleaned.documents[0].id, "a");
        assert_eq!(report.removed_duplicates, 1);
    }

    #[test]
    fn flip_labels_inverts() {
        let c = corpus_of(vec![doc("a", "some text here", Label::Truthful)]);
        let cfg = CleanConfig {
            flip_labels: true,
            ..Default::default()
        };
        let (cleaned, report) = clean_corpus(&c, &cfg);
        assert_eq!(cleaned.documents[0].label, Label::Deceptive);
        assert!(report.labels_flipped);
    }

    #[test]
    fn empty_and_overlong_removed() {
        let long_text = "x ".repeat(600);
        let cfg = CleanConfig {
            max_chars: 100,
            ..Default::default()
        };
        let c = corpus_of(vec![
            doc("a", "   ", Label::Truthful),
            doc("b", &long_text, Label::Truthful),
            doc("c", "keep this one", Label::Deceptive),
        ]);
        let (cleaned, report) = clean_corpus(&c, &cfg);
        assert_eq!(cleaned.len(), 1);
        assert_eq!(report.removed_empty, 1);
        assert_eq!(report.removed_overlong, 1);
    }

    #[test]
    fn email_headers_stripped() {
        let text = "From: a@b.c\nSubject: hi\nX-Spam: no\n\nDear you, send the money now.";
        let c = corpus_of(vec![doc("a", text, Label::Deceptive)]);
        let (cleaned, _) = clean_corpus(&c, &CleanConfig::default());
        assert_eq!(cleaned.documents[0].text, "Dear you, send the money now.");
    }

    #[test]
    fn non_english_heuristic() {
        let c = corpus_of(vec![
            doc("ru", "Это совершенно не английский текст для проверки", Label::Truthful),
            doc("en", "this is an english sentence with the usual words", Label::Truthful),
        ]);
        let (cleaned, report) = clean_corpus(&c, &CleanConfig::default());
        assert_eq!(cleaned.len(), 1);
        assert_eq!(cleaned.documents[0].id, "en");
        assert_eq!(report.removed_non_english, 1);
    }

    #[test]
    fn accounting_identity() {
        let c = corpus_of(vec![
            doc("a", "", Label::Truthful),
            doc("b", "good text one", Label::Truthful),
            doc("c", "good text one", Label::Deceptive),
            doc("d", "good text two", Label::Deceptive),
        ]);
        let (cleaned, report) = clean_corpus(&c, &CleanConfig::default());
        assert_eq!(c.len() - cleaned.len(), report.total_removed());
    }

    proptest! {
        #[test]
        fn idempotent(texts in proptest::collection::vec("[ -~\\n]{0,60}", 0..12), flip in any::<bool>()) {
            let docs: Vec<Document> = texts
                .iter()
                .enumerate()
                .map(|(i, t)| doc(&format!("d{i}"), t, if i % 2 == 0 { Label::Truthful } else { Label::Deceptive }))
                .collect();
            let cfg = CleanConfig { flip_labels: flip, ..Default::default() };
            let (once, _) = clean_corpus(&corpus_of(docs), &cfg);
            let (twice, report2) = clean_corpus(&once, &cfg);
            prop_assert_eq!(report2.total_removed(), 0, "second clean removed documents");
            let texts_once: Vec<&str> = once.documents.iter().map(|d| d.text.as_str()).collect();
            let texts_twice: Vec<&str> = twice.documents.iter().map(|d| d.text.as_str()).collect();
            prop_assert_eq!(texts_once, texts_twice);
        }

        #[test]
        fn flip_is_involution(n in 1usize..10) {
            let docs: Vec<Document> = (0..n)
                .map(|i| doc(&format!("d{i}"), &format!("distinct text number {i} here"), if i % 2 == 0 { Label::Truthful } else { Label::Deceptive }))
                .collect();
            let cfg = CleanConfig { flip_labels: true, ..Default::default() };
            let original = corpus_of(docs);
            let (flipped, _) = clean_corpus(&original, &cfg);
            let (back, _) = clean_corpus(&flipped, &cfg);
            for (a, b) in original.documents.iter().zip(&back.documents) {
                prop_assert_eq!(a.label, b.label);
            }
        }

        #[test]
        fn removal_accounting(texts in proptest::collection::vec("[a-z <>br/]{0,40}", 0..20)) {
            let docs: Vec<Document> = texts
                .iter()
                .enumerate()
                .map(|(i, t)| doc(&format!("d{i}"), t, Label::Truthful))
                .collect();
            let raw = corpus_of(docs);
            let raw_len = raw.len();
            let (cleaned, report) = clean_corpus(&raw, &CleanConfig::default());
            prop_assert_eq!(raw_len - cleaned.len(), report.total_removed());
        }
    }
}
