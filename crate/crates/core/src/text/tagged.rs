//! Ingestion of externally tagged documents (gold tags), bypassing the
//! built-in tagger.
//!
//! Format is tagged-JSONL: one document per line,
//! `{"sentences":[{"tokens":["the"],"tags":["DT"]}]}`.

use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use super::{tagset, Sentence, TextError, Token, TokenizedDoc};

#[derive(Deserialize)]
struct TaggedDoc {
    sentences: Vec<TaggedSentence>,
}

#[derive(Deserialize)]
struct TaggedSentence {
    tokens: Vec<String>,
    tags: Vec<String>,
}

fn is_punct_surface(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_alphanumeric() && !c.is_whitespace())
}

/// Parse and validate a tagged-JSONL stream into documents.
pub fn ingest_tagged_reader<R: BufRead>(reader: R) -> Result<Vec<TokenizedDoc>, TextError> {
    let mut docs = Vec::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: TaggedDoc = serde_json::from_str(&line).map_err(|e| TextError::Parse {
            line: line_no + 1,
            message: e.to_string(),
        })?;
        let mut sentences = Vec::new();
        let mut char_count = 0usize;
        for (s_idx, s) in parsed.sentences.iter().enumerate() {
            if s.tokens.len() != s.tags.len() {
                return Err(TextError::Parse {
                    line: line_no + 1,
                    message: format!(
                        "sentence {}: {} tokens but {} tags",
                        s_idx + 1,
                        s.tokens.len(),
                        s.tags.len()
                    ),
                });
            }
            if s.tokens.is_empty() {
                return Err(TextError::Parse {
                    line: line_no + 1,
                    message: format!("sentence {} is empty", s_idx + 1),
                });
            }
            let mut tokens = Vec::new();
            for (t_idx, (tok, tag)) in s.tokens.iter().zip(&s.tags).enumerate() {
                if !tagset::is_valid_tag(tag) {
                    return Err(TextError::UnknownTag {
                        tag: tag.clone(),
                        location: format!(
                            "line {}, sentence {}, token {}",
                            line_no + 1,
                            s_idx + 1,
                            t_idx + 1
                        ),
                    });
                }
                char_count += tok.chars().count() + 1;
                tokens.push(Token {
                    lower: tok.to_lowercase(),
                    surface: tok.clone(),
                    pos: Some(tag.clone()),
                    is_function_word: false,
                    is_punct: is_punct_surface(tok),
                });
            }
            sentences.push(Sentence { tokens });
        }
        docs.push(TokenizedDoc {
            sentences,
            char_count: char_count.saturating_sub(1),
        });
    }
    Ok(docs)
}

pub fn ingest_tagged(path: &Path) -> Result<Vec<TokenizedDoc>, TextError> {
    let file = std::fs::File::open(path)?;
    ingest_tagged_reader(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_doc() {
        let line = r#"{"sentences":[{"tokens":["the","cat"],"tags":["DT","NN"]}]}"#;
        let docs = ingest_tagged_reader(line.as_bytes()).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].sentences[0].tokens[0].pos.as_deref(), Some("DT"));
    }

    #[test]
    fn rejects_unknown_tag() {
        let line = r#"{"sentences":[{"tokens":["x"],"tags":["ZZZ"]}]}"#;
        let err = ingest_tagged_reader(line.as_bytes()).unwrap_err();
        match err {
            TextError::UnknownTag { tag, location } => {
                assert_eq!(tag, "ZZZ");
                assert!(location.contains("token 1"));
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn accepts_added_tags() {
        let line = r#"{"sentences":[{"tokens":["-","x@y.z"],"tags":["HYPH","ADD"]}]}"#;
        assert!(ingest_tagged_reader(line.as_bytes()).is_ok());
    }

    #[test]
    fn rejects_length_mismatch() {
        let line = r#"{"sentences":[{"tokens":["a","b"],"tags":["DT"]}]}"#;
        assert!(matches!(
            ingest_tagged_reader(line.as_bytes()),
            Err(TextError::Parse { line: 1, .. })
        ));
    }
}
