//! Rule-based sentence segmentation.
//!
//! Boundaries fall after runs of `.`, `!`, `?` followed by whitespace, and
//! at newline runs. A single `.` does not split when the preceding token is
//! a known abbreviation or a lone capital initial.

use super::lexicon::AbbreviationList;

/// Byte spans of sentences, trimmed of surrounding whitespace.
/// Together the spans cover every non-whitespace byte of the input.
pub fn segment_sentences(text: &str, abbreviations: &AbbreviationList) -> Vec<(usize, usize)> {
    let bytes = text.as_bytes();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut boundaries: Vec<usize> = Vec::new(); // byte offsets where a sentence ends (exclusive)

    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c == '\n' {
            boundaries.push(pos);
            i += 1;
            continue;
        }
        if c == '.' || c == '!' || c == '?' {
            // Absorb the whole terminator run ("...", "?!").
            let run_start = i;
            let mut j = i;
            while j + 1 < chars.len() && matches!(chars[j + 1].1, '.' | '!' | '?') {
                j += 1;
            }
            let next_is_break = j + 1 >= chars.len() || chars[j + 1].1.is_whitespace();
            let mut split = next_is_break;
            if split && c == '.' && j == run_start {
                // Abbreviation guard applies to a single period only.
                let word = preceding_word(&chars, run_start);
                if !word.is_empty() {
                    let mut with_period = word.clone();
                    with_period.push('.');
                    let single_initial =
                        word.chars().count() == 1 && word.chars().all(|c| c.is_uppercase());
                    if single_initial || abbreviations.contains(&with_period) {
                        split = false;
                    }
                }
            }
            if split {
                let end = chars[j].0 + chars[j].1.len_utf8();
                boundaries.push(end);
            }
            i = j + 1;
            continue;
        }
        i += 1;
    }
    boundaries.push(bytes.len());

    let mut spans = Vec::new();
    let mut start = 0;
    for &end in &boundaries {
        if end > start {
            if let Some(span) = trim_span(text, start, end) {
                spans.push(span);
            }
        }
        start = start.max(end);
    }
    spans
}

/// The word (letters plus internal periods) immediately before `idx`.
fn preceding_word(chars: &[(usize, char)], idx: usize) -> String {
    let mut rev = Vec::new();
    let mut k = idx;
    while k > 0 {
        let c = chars[k - 1].1;
        if c.is_alphabetic() || (c == '.' && !rev.is_empty()) {
            rev.push(c);
            k -= 1;
        } else {
            break;
        }
    }
    rev.iter().rev().collect()
}

fn trim_span(text: &str, start: usize, end: usize) -> Option<(usize, usize)> {
    let slice = &text[start..end];
    let trimmed = slice.trim();
    if trimmed.is_empty() {
        return None;
    }
    let lead = slice.len() - slice.trim_start().len();
    let trail = slice.len() - slice.trim_end().len();
    Some((start + lead, end - trail))
}
