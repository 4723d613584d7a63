//! Readability indices: ARI, SMOG, and Gunning fog.

use serde::{Deserialize, Serialize};

use super::FeaturesError;

/// Document counts feeding the readability formulas. `chars` counts
/// letters and digits only; `complex_words` and `polysyllables` both mean
/// words of three or more syllables.
#[derive(Debug, Clone, Copy, Default)]
pub struct DocStats {
    pub chars: usize,
    pub words: usize,
    pub sentences: usize,
    pub polysyllables: usize,
    pub complex_words: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReadabilityIndex {
    Ari,
    Smog,
    Fog,
}

/// Evaluate one readability index; requires at least one word and one
/// sentence.
pub fn readability(stats: DocStats, index: ReadabilityIndex) -> Result<f64, FeaturesError> {
    if stats.words == 0 || stats.sentences == 0 {
        return Err(FeaturesError::DegenerateInput {
            message: format!(
                "readability needs words >= 1 and sentences >= 1 (got {} and {})",
                stats.words, stats.sentences
            ),
        });
    }
    let chars = stats.chars as f64;
    let words = stats.words as f64;
    let sentences = stats.sentences as f64;
    Ok(match index {
        ReadabilityIndex::Ari => 4.71 * (chars / words) + 0.5 * (words / sentences) - 21.43,
        ReadabilityIndex::Smog => {
            1.0430 * (stats.polysyllables as f64 * 30.0 / sentences).sqrt() + 3.1291
        }
        ReadabilityIndex::Fog => {
            0.4 * ((words / sentences) + 100.0 * (stats.complex_words as f64 / words))
        }
    })
}
