//! Category dictionaries (LIWC-style): word lists per category, reported
//! as the percentage of a text's words falling in each category.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use super::{FeatureVector, FeaturesError};
use crate::text::TokenizedDoc;

const DEMO: &str = include_str!("../../assets/demo_categories.dict");

/// Patterns are literal lowercase words or stems with a trailing `*`.
#[derive(Debug, Clone)]
struct CategoryPatterns {
    literals: HashSet<String>,
    stems: Vec<String>,
}

impl CategoryPatterns {
    fn matches(&self, word_lower: &str) -> bool {
        self.literals.contains(word_lower) || self.stems.iter().any(|s| word_lower.starts_with(s.as_str()))
    }
}

#[derive(Debug, Clone)]
pub struct CategoryDictionary {
    categories: BTreeMap<String, CategoryPatterns>,
}

impl CategoryDictionary {
    /// The small open demo dictionary bundled with the crate.
    pub fn demo() -> Self {
        Self::parse(DEMO).expect("bundled dictionary is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self, FeaturesError> {
        let text = std::fs::read_to_string(path).map_err(|e| FeaturesError::DegenerateInput {
            message: format!("cannot read dictionary {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// Parse `[category]` sections with one pattern per line.
    pub fn parse(text: &str) -> Result<Self, FeaturesError> {
        let mut categories: BTreeMap<String, CategoryPatterns> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim().to_string();
                if categories.contains_key(&name) {
                    return Err(FeaturesError::DuplicateFeature { name });
                }
                categories.insert(
                    name.clone(),
                    CategoryPatterns {
                        literals: HashSet::new(),
                        stems: Vec::new(),
                    },
                );
                current = Some(name);
                continue;
            }
            let Some(cat) = &current else {
                return Err(FeaturesError::DegenerateInput {
                    message: format!("dictionary line {} precedes any [category]", idx + 1),
                });
            };
            let pattern = line.to_lowercase();
            let entry = categories.get_mut(cat).unwrap();
            if let Some(stem) = pattern.strip_suffix('*') {
                entry.stems.push(stem.to_string());
            } else {
                entry.literals.insert(pattern);
            }
        }
        if categories.is_empty() {
            return Err(FeaturesError::EmptyDictionary);
        }
        Ok(Self { categories })
    }

    pub fn category_names(&self) -> impl Iterator<Item = &str> {
        self.categories.keys().map(String::as_str)
    }

    pub fn has_category(&self, name: &str) -> bool {
        self.categories.contains_key(name)
    }

    /// Number of words (lowercased) matching the category, or None for an
    /// unknown category.
    pub fn match_count<'a>(
        &self,
        category: &str,
        words_lower: impl Iterator<Item = &'a str>,
    ) -> Option<usize> {
        let patterns = self.categories.get(category)?;
        Some(words_lower.filter(|w| patterns.matches(w)).count())
    }
}

/// Per-category percentages plus the raw WC and WPS values.
pub fn extract_dictionary_features(
    doc: &TokenizedDoc,
    doc_id: &str,
    dict: &CategoryDictionary,
) -> Result<FeatureVector, FeaturesError> {
    if dict.categories.is_empty() {
        return Err(FeaturesError::EmptyDictionary);
    }
    let words: Vec<&str> = doc.words().map(|t| t.lower.as_str()).collect();
    let word_count = words.len();
    let sentence_count = doc.sentences.len();

    let mut fv = FeatureVector::new(doc_id);
    for (name, patterns) in &dict.categories {
        if word_count == 0 {
            fv.set_missing(name);
        } else {
            let hits = words.iter().filter(|w| patterns.matches(w)).count();
            fv.set(name, 100.0 * hits as f64 / word_count as f64);
        }
    }
    fv.set("WC", word_count as f64);
    if sentence_count == 0 {
        fv.set_missing("WPS");
    } else {
        fv.set("WPS", word_count as f64 / sentence_count as f64);
    }
    Ok(fv)
}

/// Feature names this extractor emits for a given dictionary.
pub fn dictionary_feature_names(dict: &CategoryDictionary) -> Vec<String> {
    let mut names: Vec<String> = dict.category_names().map(str::to_string).collect();
    names.push("WC".into());
    names.push("WPS".into());
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::TextPipeline;

    #[test]
    fn wildcard_matches() {
        let dict = CategoryDictionary::parse("[certain]\ncertain*\n").unwrap();
        let doc = TextPipeline::builtin().process("I am certainly certain");
        let fv = extract_dictionary_features(&doc, "d", &dict).unwrap();
        assert_eq!(fv.get("certain"), Some(50.0));
    }

    #[test]
    fn wps_definition() {
        let dict = CategoryDictionary::parse("[x]\nzzz\n").unwrap();
        let doc = TextPipeline::builtin().process("one two three four five. six seven eight nine ten.");
        let fv = extract_dictionary_features(&doc, "d", &dict).unwrap();
        assert_eq!(fv.get("WPS"), Some(5.0));
        assert_eq!(fv.get("WC"), Some(10.0));
        assert_eq!(fv.get("x"), Some(0.0));
    }

    #[test]
    fn empty_dictionary_rejected() {
        assert!(matches!(
            CategoryDictionary::parse("# nothing"),
            Err(FeaturesError::EmptyDictionary)
        ));
    }

    #[test]
    fn duplicate_category_rejected() {
        assert!(CategoryDictionary::parse("[a]\nx\n[a]\ny\n").is_err());
    }

    #[test]
    fn demo_dictionary_has_cue_categories() {
        let dict = CategoryDictionary::demo();
        for cat in ["certain", "space", "time", "percep", "posemo", "negemo"] {
            assert!(dict.has_category(cat), "{cat} missing from demo dictionary");
        }
    }

    #[test]
    fn percentages_within_range() {
        let dict = CategoryDictionary::demo();
        let doc = TextPipeline::builtin().process("I love this great nice happy day. It was certainly wonderful.");
        let fv = extract_dictionary_features(&doc, "d", &dict).unwrap();
        for (name, value) in fv.iter() {
            if name != "WC" && name != "WPS" {
                let v = value.expect("non-empty doc has all percentages");
                assert!((0.0..=100.0).contains(&v), "{name} = {v}");
            }
        }
    }
}
