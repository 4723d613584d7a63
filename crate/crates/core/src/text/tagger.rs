//! Deterministic lexicon + suffix/shape POS tagger.
//!
//! Closed-class words take their lexicon tag; remaining words go through
//! shape checks (numbers, emails/URLs, mid-sentence capitals) and then an
//! ordered suffix table. Everything else is NN. The rules are fixed so the
//! same input always yields the same tags.

use super::lexicon::FunctionWordLexicon;
use super::TokenizedDoc;

/// Suffix rules applied in order: (suffix, minimum word length, tag).
const SUFFIX_RULES: &[(&str, usize, &str)] = &[
    ("ly", 3, "RB"),
    ("ing", 5, "VBG"),
    ("ed", 4, "VBD"),
    ("ful", 4, "JJ"),
    ("ous", 4, "JJ"),
    ("ive", 4, "JJ"),
    ("able", 5, "JJ"),
    ("ible", 5, "JJ"),
    ("less", 5, "JJ"),
    ("ish", 5, "JJ"),
    ("tion", 5, "NN"),
    ("sion", 5, "NN"),
    ("ment", 5, "NN"),
    ("ness", 5, "NN"),
    ("ity", 5, "NN"),
    ("ize", 4, "VB"),
    ("ise", 4, "VB"),
    ("est", 5, "JJS"),
];

#[derive(Debug, Clone, Default)]
pub struct TaggerModel;

impl TaggerModel {
    pub fn builtin() -> Self {
        Self
    }

    /// Tag a word outside the lexicon. `mid_sentence` is true for any token
    /// after the first word of its sentence.
    fn tag_open_class(&self, surface: &str, lower: &str, mid_sentence: bool) -> String {
        if looks_numeric(surface) {
            return "CD".into();
        }
        if surface.contains('@') || lower.starts_with("http") || lower.starts_with("www.") {
            return "ADD".into();
        }
        if mid_sentence && surface.chars().next().is_some_and(|c| c.is_uppercase()) {
            return "NNP".into();
        }
        for &(suffix, min_len, tag) in SUFFIX_RULES {
            if lower.len() >= min_len && lower.ends_with(suffix) {
                return tag.into();
            }
        }
        if lower.len() >= 4
            && lower.ends_with('s')
            && !lower.ends_with("ss")
            && !lower.ends_with("us")
            && !lower.ends_with("is")
        {
            return "NNS".into();
        }
        "NN".into()
    }
}

/// Literal tag for a punctuation token.
pub fn punct_tag(surface: &str) -> String {
    let first = surface.chars().next().unwrap_or('.');
    match first {
        '.' | '!' | '?' | '…' => ".".into(),
        ',' => ",".into(),
        ';' | ':' => ":".into(),
        '(' | '[' | '{' => "-LRB-".into(),
        ')' | ']' | '}' => "-RRB-".into(),
        '"' | '\u{201c}' | '\u{201d}' | '\'' | '`' | '\u{2018}' | '\u{2019}' => "''".into(),
        '-' | '\u{2013}' | '\u{2014}' => "HYPH".into(),
        '$' => "$".into(),
        '#' => "#".into(),
        '%' | '+' | '=' | '<' | '>' | '^' | '~' | '|' | '*' | '&' | '/' | '\\' => "SYM".into(),
        _ => "NFP".into(),
    }
}

fn looks_numeric(surface: &str) -> bool {
    let mut digits = 0;
    for c in surface.chars() {
        if c.is_ascii_digit() {
            digits += 1;
        } else if !matches!(c, '.' | ',' | '%' | '$' | '+' | '-') {
            return false;
        }
    }
    digits > 0
}

/// Assign a tag to every token. Non-punct tokens take the lexicon tag when
/// available, otherwise the shape/suffix rules; punctuation gets its
/// literal tag.
pub fn tag_pos(mut doc: TokenizedDoc, lexicon: &FunctionWordLexicon, tagger: &TaggerModel) -> TokenizedDoc {
    for sentence in &mut doc.sentences {
        let mut word_index = 0;
        for token in &mut sentence.tokens {
            if token.is_punct {
                token.pos = Some(punct_tag(&token.surface));
                continue;
            }
            let tag = if let Some(t) = lexicon.default_tag(&token.lower) {
                t.to_string()
            } else {
                tagger.tag_open_class(&token.surface, &token.lower, word_index > 0)
            };
            token.pos = Some(tag);
            word_index += 1;
        }
    }
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{tokenize_words, Sentence};

    fn tag_sentence(s: &str) -> Vec<(String, String)> {
        let doc = TokenizedDoc {
            sentences: vec![Sentence {
                tokens: tokenize_words(s),
            }],
            char_count: s.chars().count(),
        };
        let lex = FunctionWordLexicon::builtin();
        let tagged = tag_pos(doc, &lex, &TaggerModel::builtin());
        tagged.sentences[0]
            .tokens
            .iter()
            .map(|t| (t.surface.clone(), t.pos.clone().unwrap()))
            .collect()
    }

    #[test]
    fn lexicon_tags_win() {
        let tags = tag_sentence("You must go");
        assert_eq!(tags[0].1, "PRP");
        assert_eq!(tags[1].1, "MD");
    }

    #[test]
    fn suffix_rules() {
        let tags = tag_sentence("he ran quickly");
        assert_eq!(tags[2].1, "RB");
        let tags = tag_sentence("they were walking");
        assert_eq!(tags[2].1, "VBG");
        let tags = tag_sentence("it seemed");
        assert_eq!(tags[1].1, "VBD");
    }

    #[test]
    fn shapes() {
        let tags = tag_sentence("pay 12 dollars");
        assert_eq!(tags[1].1, "CD");
        let tags = tag_sentence("mail bob@example.com now");
        assert_eq!(tags[1].1, "ADD");
        let tags = tag_sentence("ask Smith today");
        assert_eq!(tags[1].1, "NNP");
    }

    #[test]
    fn sentence_initial_capital_not_nnp() {
        let tags = tag_sentence("Cats sleep");
        assert_eq!(tags[0].1, "NNS");
    }

    #[test]
    fn punct_literal() {
        let tags = tag_sentence("stop .");
        assert_eq!(tags[1].1, ".");
        let tags = tag_sentence("a , b");
        assert_eq!(tags[1].1, ",");
    }

    #[test]
    fn every_token_tagged() {
        let tags = tag_sentence("The quick brown fox, he ran over 2 fences!");
        for (surface, tag) in &tags {
            assert!(
                crate::text::tagset::is_valid_tag(tag),
                "{surface} got invalid tag {tag}"
            );
        }
    }
}
