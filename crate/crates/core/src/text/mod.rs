//! Sentence segmentation, tokenization, function-word marking, the
//! deterministic POS tagger, tagged-document ingestion, and syllable
//! counting.
//!
//! All operations are pure; lexicon and tagger tables are shared read-only.

pub mod lexicon;
pub mod segment;
pub mod syllable;
pub mod tagged;
pub mod tagger;
pub mod tagset;
pub mod tokenize;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lexicon::{AbbreviationList, FunctionWordLexicon};
pub use segment::segment_sentences;
pub use syllable::count_syllables;
pub use tagged::{ingest_tagged, ingest_tagged_reader};
pub use tagger::{tag_pos, TaggerModel};
pub use tokenize::tokenize_words;

#[derive(Debug, Error)]
pub enum TextError {
    #[error("unknown tag '{tag}' at {location}")]
    UnknownTag { tag: String, location: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("lexicon has no entries")]
    EmptyLexicon,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One token of a tokenized document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub pos: Option<String>,
    pub is_function_word: bool,
    pub is_punct: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    /// Number of word (non-punctuation) tokens.
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| !t.is_punct).count()
    }
}

/// A document after segmentation and tokenization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TokenizedDoc {
    pub sentences: Vec<Sentence>,
    /// Characters of the original text, including spaces and punctuation.
    pub char_count: usize,
}

impl TokenizedDoc {
    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(Sentence::word_count).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens().filter(|t| !t.is_punct)
    }
}

/// Set `is_function_word` from lexicon membership on every non-punct token.
pub fn mark_function_words(mut doc: TokenizedDoc, lexicon: &FunctionWordLexicon) -> TokenizedDoc {
    for sentence in &mut doc.sentences {
        for token in &mut sentence.tokens {
            token.is_function_word = !token.is_punct && lexicon.contains(&token.lower);
        }
    }
    doc
}

/// Shared immutable text-processing configuration: segment, tokenize, tag,
/// and mark function words in one pass.
#[derive(Debug, Clone)]
pub struct TextPipeline {
    pub lexicon: FunctionWordLexicon,
    pub abbreviations: AbbreviationList,
    pub tagger: TaggerModel,
}

impl TextPipeline {
    pub fn builtin() -> Self {
        Self {
            lexicon: FunctionWordLexicon::builtin(),
            abbreviations: AbbreviationList::builtin(),
            tagger: TaggerModel::builtin(),
        }
    }

    pub fn process(&self, text: &str) -> TokenizedDoc {
        let spans = segment_sentences(text, &self.abbreviations);
        let sentences: Vec<Sentence> = spans
            .into_iter()
            .map(|(s, e)| Sentence {
                tokens: tokenize_words(&text[s..e]),
            })
            .filter(|s| !s.tokens.is_empty())
            .collect();
        let doc = TokenizedDoc {
            sentences,
            char_count: text.chars().count(),
        };
        let doc = tag_pos(doc, &self.lexicon, &self.tagger);
        mark_function_words(doc, &self.lexicon)
    }
}
