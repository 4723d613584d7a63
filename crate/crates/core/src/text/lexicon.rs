//! Function-word lexicon: a set of lowercase closed-class words with a
//! default POS tag for each.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use super::TextError;

const BUILTIN: &str = include_str!("../../assets/function_words.txt");

#[derive(Debug, Clone)]
pub struct FunctionWordLexicon {
    words: HashSet<String>,
    pos_map: HashMap<String, String>,
}

impl FunctionWordLexicon {
    /// The lexicon bundled with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("bundled lexicon is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self, TextError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parse `word` or `word<TAB>POS` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, TextError> {
        let mut words = HashSet::new();
        let mut pos_map = HashMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = match line.split_once('\t') {
                Some((w, t)) => (w.trim(), Some(t.trim())),
                None => (line, None),
            };
            let word = word.to_lowercase();
            if let Some(tag) = tag {
                if !super::tagset::is_valid_tag(tag) {
                    return Err(TextError::UnknownTag {
                        tag: tag.to_string(),
                        location: format!("lexicon entry '{word}'"),
                    });
                }
                pos_map.insert(word.clone(), tag.to_string());
            }
            words.insert(word);
        }
        if words.is_empty() {
            return Err(TextError::EmptyLexicon);
        }
        Ok(Self { words, pos_map })
    }

    pub fn contains(&self, lower: &str) -> bool {
        self.words.contains(lower)
    }

    pub fn default_tag(&self, lower: &str) -> Option<&str> {
        self.pos_map.get(lower).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Abbreviation list used by the sentence segmenter; lowercase entries
/// include the trailing period.
#[derive(Debug, Clone)]
pub struct AbbreviationList {
    entries: HashSet<String>,
}

const BUILTIN_ABBREV: &str = include_str!("../../assets/abbreviations.txt");

impl AbbreviationList {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_ABBREV)
    }

    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase())
            .collect();
        Self { entries }
    }

    pub fn from_path(path: &Path) -> Result<Self, TextError> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, token_with_period: &str) -> bool {
        self.entries.contains(&token_with_period.to_lowercase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_lexicon_loads() {
        let lex = FunctionWordLexicon::builtin();
        assert!(lex.len() > 150);
        for w in ["the", "and", "is", "of", "on", "in", "must", "n't"] {
            assert!(lex.contains(w), "{w} missing");
        }
        assert_eq!(lex.default_tag("must"), Some("MD"));
        assert_eq!(lex.default_tag("the"), Some("DT"));
        assert!(!lex.contains("cat"));
    }

    #[test]
    fn parse_rejects_empty_and_bad_tags() {
        assert!(matches!(
            FunctionWordLexicon::parse("# nothing\n"),
            Err(TextError::EmptyLexicon)
        ));
        assert!(matches!(
            FunctionWordLexicon::parse("the\tZZZ\n"),
            Err(TextError::UnknownTag { .. })
        ));
    }

    #[test]
    fn entries_are_lowercased() {
        let lex = FunctionWordLexicon::parse("THE\tDT\n").unwrap();
        assert!(lex.contains("the"));
    }

    #[test]
    fn abbreviations_contain_basics() {
        let a = AbbreviationList::builtin();
        assert!(a.contains("dr."));
        assert!(a.contains("e.g."));
        assert!(!a.contains("cat."));
    }
}
