//! Word tokenizer: whitespace split, peripheral punctuation separated,
//! clitic contractions split per the bundled rule table.

use super::Token;

const CONTRACTIONS: &str = include_str!("../../assets/contractions.txt");

/// Clitic suffixes in match order (longest first).
pub fn contraction_suffixes() -> Vec<&'static str> {
    let mut list: Vec<&'static str> = CONTRACTIONS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    list.sort_by_key(|s| std::cmp::Reverse(s.len()));
    list
}

fn is_punct_char(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

fn make_token(surface: &str) -> Token {
    let is_punct = !surface.is_empty() && surface.chars().all(is_punct_char);
    Token {
        lower: surface.to_lowercase(),
        surface: surface.to_string(),
        pos: None,
        is_function_word: false,
        is_punct,
    }
}

/// Split a peripheral punctuation run into tokens, grouping repeats of the
/// same mark (so "..." and "--" stay single tokens).
fn push_punct_run(chars: &[char], out: &mut Vec<Token>) {
    let mut i = 0;
    while i < chars.len() {
        let mut j = i + 1;
        while j < chars.len() && chars[j] == chars[i] {
            j += 1;
        }
        let s: String = chars[i..j].iter().collect();
        out.push(make_token(&s));
        i = j;
    }
}

/// Tokenize one sentence.
pub fn tokenize_words(sentence: &str) -> Vec<Token> {
    let suffixes = contraction_suffixes();
    let mut tokens = Vec::new();
    for chunk in sentence.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let mut start = 0;
        while start < chars.len() && is_punct_char(chars[start]) {
            start += 1;
        }
        let mut end = chars.len();
        while end > start && is_punct_char(chars[end - 1]) {
            end -= 1;
        }
        push_punct_run(&chars[..start], &mut tokens);
        if end > start {
            let core: String = chars[start..end].iter().collect();
            push_word(&core, &suffixes, &mut tokens);
        }
        push_punct_run(&chars[end..], &mut tokens);
    }
    tokens
}

/// Split clitics off the end of a word, recursively ("they'll've" is two
/// clitics deep). The stem must keep at least one character.
fn push_word(word: &str, suffixes: &[&str], out: &mut Vec<Token>) {
    let lower = word.to_lowercase();
    for suffix in suffixes {
        if lower.len() > suffix.len() && lower.ends_with(suffix) {
            let cut = word.len() - suffix.len();
            let (stem, clitic) = word.split_at(cut);
            push_word(stem, suffixes, out);
            out.push(make_token(clitic));
            return;
        }
    }
    out.push(make_token(word));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(s: &str) -> Vec<String> {
        tokenize_words(s).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn basic_sentence() {
        let toks = tokenize_words("the cat sat.");
        let s: Vec<&str> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(s, vec!["the", "cat", "sat", "."]);
        assert!(toks[3].is_punct);
        assert!(!toks[2].is_punct);
    }

    #[test]
    fn contractions() {
        assert_eq!(surfaces("don't"), vec!["do", "n't"]);
        assert_eq!(surfaces("I'm"), vec!["I", "'m"]);
        assert_eq!(surfaces("can't"), vec!["ca", "n't"]);
        assert_eq!(surfaces("Smith's"), vec!["Smith", "'s"]);
    }

    #[test]
    fn empty() {
        assert!(tokenize_words("").is_empty());
    }

    #[test]
    fn peripheral_punct() {
        assert_eq!(surfaces("(hello)"), vec!["(", "hello", ")"]);
        assert_eq!(surfaces("wait..."), vec!["wait", "..."]);
        assert_eq!(surfaces("\"quoted,\""), vec!["\"", "quoted", ",", "\""]);
    }

    #[test]
    fn internal_punct_kept() {
        assert_eq!(surfaces("well-known"), vec!["well-known"]);
        assert_eq!(surfaces("3.14"), vec!["3.14"]);
    }

    #[test]
    fn lone_punct() {
        let toks = tokenize_words("- -- ...");
        let s: Vec<&str> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(s, vec!["-", "--", "..."]);
        assert!(toks.iter().all(|t| t.is_punct));
    }

    #[test]
    fn determinism() {
        let a = tokenize_words("They'll've gone, won't they?");
        let b = tokenize_words("They'll've gone, won't they?");
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.surface, y.surface);
        }
    }
}
