//! tf-idf vectorization of function words, their POS tags, or raw
//! unigrams. The vocabulary comes from the training split only;
//! out-of-vocabulary terms are ignored at inference.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::features::FeatureMatrix;
use crate::text::TokenizedDoc;

use super::{NgramError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TfidfMode {
    /// Function-word tokens only.
    FunctionWords,
    /// Function words replaced by their POS tags before counting.
    FwPos,
    /// All word tokens.
    RawUnigrams,
}

fn doc_terms(doc: &TokenizedDoc, mode: TfidfMode) -> Vec<String> {
    doc.words()
        .filter_map(|t| match mode {
            TfidfMode::FunctionWords => t.is_function_word.then(|| t.lower.clone()),
            TfidfMode::FwPos => {
                if t.is_function_word {
                    t.pos.clone()
                } else {
                    None
                }
            }
            TfidfMode::RawUnigrams => Some(t.lower.clone()),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TfidfVectorizer {
    pub mode: TfidfMode,
    vocabulary: BTreeMap<String, usize>,
    idf: Vec<f64>,
}

impl TfidfVectorizer {
    /// Build the vocabulary and idf table from training documents:
    /// idf = ln((1 + N) / (1 + df)) + 1.
    pub fn fit(train: &[&TokenizedDoc], mode: TfidfMode) -> Result<Self> {
        let n = train.len() as f64;
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for doc in train {
            let unique: HashSet<String> = doc_terms(doc, mode).into_iter().collect();
            for term in unique {
                *df.entry(term).or_insert(0) += 1;
            }
        }
        if df.is_empty() {
            return Err(NgramError::EmptyVocabulary);
        }
        let mut vocabulary = BTreeMap::new();
        let mut idf = Vec::with_capacity(df.len());
        for (i, (term, count)) in df.into_iter().enumerate() {
            vocabulary.insert(term, i);
            idf.push(((1.0 + n) / (1.0 + count as f64)).ln() + 1.0);
        }
        Ok(Self {
            mode,
            vocabulary,
            idf,
        })
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn feature_names(&self) -> Vec<String> {
        self.vocabulary.keys().cloned().collect()
    }

    pub fn idf_of(&self, term: &str) -> Option<f64> {
        self.vocabulary.get(term).map(|&i| self.idf[i])
    }

    /// Dense L2-normalized tf-idf row; out-of-vocabulary terms ignored.
    pub fn transform(&self, doc: &TokenizedDoc) -> Vec<f64> {
        let mut row = vec![0.0; self.vocabulary.len()];
        for term in doc_terms(doc, self.mode) {
            if let Some(&i) = self.vocabulary.get(&term) {
                row[i] += 1.0;
            }
        }
        for (i, v) in row.iter_mut().enumerate() {
            *v *= self.idf[i];
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for v in &mut row {
                *v /= norm;
            }
        }
        row
    }

    /// Vectorize labeled documents into a feature matrix (columns are the
    /// vocabulary terms in lexicographic order).
    pub fn matrix(&self, docs: &[(String, Label, String, &TokenizedDoc)]) -> FeatureMatrix {
        FeatureMatrix {
            feature_names: self.feature_names(),
            rows: docs
                .iter()
                .map(|(_, _, _, d)| self.transform(d).into_iter().map(Some).collect())
                .collect(),
            doc_ids: docs.iter().map(|(id, _, _, _)| id.clone()).collect(),
            labels: docs.iter().map(|(_, l, _, _)| *l).collect(),
            domains: docs.iter().map(|(_, _, dom, _)| dom.clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::TextPipeline;

    fn tokenized(text: &str) -> TokenizedDoc {
        TextPipeline::builtin().process(text)
    }

    #[test]
    fn single_doc_single_term_normalizes_to_one() {
        let doc = tokenized("the");
        let v = TfidfVectorizer::fit(&[&doc], TfidfMode::FunctionWords).unwrap();
        assert_eq!(v.transform(&doc), vec![1.0]);
    }

    #[test]
    fn idf_worked_example() {
        // Term in every doc of N=10 -> idf 1; term in one doc -> ln(11/2)+1.
        let common: Vec<TokenizedDoc> = (0..9).map(|i| tokenized(&format!("the item{i}"))).collect();
        let rare = tokenized("the onlyhere");
        let mut refs: Vec<&TokenizedDoc> = common.iter().collect();
        refs.push(&rare);
        let v = TfidfVectorizer::fit(&refs, TfidfMode::RawUnigrams).unwrap();
        assert!((v.idf_of("the").unwrap() - 1.0).abs() < 1e-12);
        let expect = (11.0f64 / 2.0).ln() + 1.0;
        assert!((v.idf_of("onlyhere").unwrap() - expect).abs() < 1e-12);
        assert!((expect - 2.7047).abs() < 1e-4);
    }

    #[test]
    fn fw_pos_mode_uses_tags() {
        let doc = tokenized("the cat was here");
        let v = TfidfVectorizer::fit(&[&doc], TfidfMode::FwPos).unwrap();
        let names = v.feature_names();
        // the -> DT, was -> VBD, here -> RB; "cat" is a content word.
        assert_eq!(names, vec!["DT", "RB", "VBD"]);
    }

    #[test]
    fn oov_ignored() {
        let train = tokenized("we went there");
        let v = TfidfVectorizer::fit(&[&train], TfidfMode::FunctionWords).unwrap();
        let eval = tokenized("completely different words only");
        let row = v.transform(&eval);
        assert!(row.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn rows_unit_norm() {
        let docs: Vec<TokenizedDoc> = [
            "We went to the store and it was fine.",
            "They said that the offer would expire soon.",
            "You must act now or lose everything here.",
        ]
        .iter()
        .map(|t| tokenized(t))
        .collect();
        let refs: Vec<&TokenizedDoc> = docs.iter().collect();
        let v = TfidfVectorizer::fit(&refs, TfidfMode::FunctionWords).unwrap();
        for d in &docs {
            let row = v.transform(d);
            let norm: f64 = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_vocabulary_rejected() {
        let doc = tokenized("zxqv plugh xyzzy");
        assert!(matches!(
            TfidfVectorizer::fit(&[&doc], TfidfMode::FunctionWords),
            Err(NgramError::EmptyVocabulary)
        ));
    }
}
