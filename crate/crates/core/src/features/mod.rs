//! Feature extraction and matrix assembly: engineered cues, the 55
//! stylistic features, dictionary-category percentages, and readability
//! indices. Extraction is parallel per document with a deterministic
//! ordered merge.

pub mod cues;
pub mod dictionary;
pub mod readability;
pub mod sigtest;
pub mod stylistic;

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, Label};
use crate::text::TextPipeline;

pub use cues::{extract_cue_features, CUE_FEATURE_NAMES};
pub use dictionary::{extract_dictionary_features, CategoryDictionary};
pub use readability::{readability, DocStats, ReadabilityIndex};
pub use sigtest::{significance_report, SigReport, SigRow};
pub use stylistic::{extract_stylistic_features, StylisticConfig};

#[derive(Debug, Error)]
pub enum FeaturesError {
    #[error("duplicate feature name '{name}'")]
    DuplicateFeature { name: String },
    #[error("doc '{doc_id}': {message}")]
    MissingPrerequisite { doc_id: String, message: String },
    #[error("dictionary has no categories")]
    EmptyDictionary,
    #[error("{message}")]
    DegenerateInput { message: String },
    #[error("matrix parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown feature '{name}'")]
    UnknownFeature { name: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FeaturesError>;

/// Named feature values for one document. Values are finite; missing
/// (undefined) entries are explicit and never zero-filled here.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureVector {
    pub doc_id: String,
    values: BTreeMap<String, Option<f64>>,
}

impl FeatureVector {
    pub fn new(doc_id: impl Into<String>) -> Self {
        Self {
            doc_id: doc_id.into(),
            values: BTreeMap::new(),
        }
    }

    /// Store a value; non-finite input marks the feature missing instead.
    pub fn set(&mut self, name: &str, value: f64) {
        if value.is_finite() {
            self.values.insert(name.to_string(), Some(value));
        } else {
            self.values.insert(name.to_string(), None);
        }
    }

    pub fn set_missing(&mut self, name: &str) {
        self.values.insert(name.to_string(), None);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied().flatten()
    }

    pub fn has(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Option<f64>)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    fn merge(&mut self, other: FeatureVector) {
        self.values.extend(other.values);
    }
}

/// Rectangular doc-by-feature matrix with aligned labels and domains.
/// Missing cells stay explicit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
    pub doc_ids: Vec<String>,
    pub labels: Vec<Label>,
    pub domains: Vec<String>,
}

impl FeatureMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    pub fn col_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }

    /// Column values in row order.
    pub fn column(&self, idx: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r[idx]).collect()
    }

    /// Keep only the named columns (in matrix order); errors on unknown
    /// names.
    pub fn select(&self, names: &[String]) -> Result<FeatureMatrix> {
        let keep: Vec<usize> = {
            let mut idxs = Vec::with_capacity(names.len());
            for n in names {
                idxs.push(self.col_index(n).ok_or_else(|| FeaturesError::UnknownFeature {
                    name: n.clone(),
                })?);
            }
            idxs.sort_unstable();
            idxs
        };
        Ok(FeatureMatrix {
            feature_names: keep.iter().map(|&i| self.feature_names[i].clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| keep.iter().map(|&i| r[i]).collect())
                .collect(),
            doc_ids: self.doc_ids.clone(),
            labels: self.labels.clone(),
            domains: self.domains.clone(),
        })
    }

    /// Row subset by index, preserving order.
    pub fn take_rows(&self, idxs: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            feature_names: self.feature_names.clone(),
            rows: idxs.iter().map(|&i| self.rows[i].clone()).collect(),
            doc_ids: idxs.iter().map(|&i| self.doc_ids[i].clone()).collect(),
            labels: idxs.iter().map(|&i| self.labels[i]).collect(),
            domains: idxs.iter().map(|&i| self.domains[i].clone()).collect(),
        }
    }

    /// CSV with `doc_id,label,domain` first; missing cells are empty.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["doc_id".to_string(), "label".into(), "domain".into()];
        header.extend(self.feature_names.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut record = vec![
                self.doc_ids[i].clone(),
                self.labels[i].as_str().to_string(),
                self.domains[i].clone(),
            ];
            for cell in row {
                record.push(match cell {
                    Some(v) => format_cell(*v),
                    None => String::new(),
                });
            }
            w.write_record(&record).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: BufRead>(reader: R) -> Result<FeatureMatrix> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(reader);
        let headers = rdr.headers().map_err(|e| FeaturesError::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let cols: Vec<String> = headers.iter().map(str::to_string).collect();
        if cols.len() < 3 || cols[0] != "doc_id" || cols[1] != "label" || cols[2] != "domain" {
            return Err(FeaturesError::Parse {
                line: 1,
                message: "header must start with doc_id,label,domain".into(),
            });
        }
        let feature_names: Vec<String> = cols[3..].to_vec();
        let mut matrix = FeatureMatrix {
            feature_names,
            rows: Vec::new(),
            doc_ids: Vec::new(),
            labels: Vec::new(),
            domains: Vec::new(),
        };
        for (idx, record) in rdr.records().enumerate() {
            let line = idx + 2;
            let record = record.map_err(|e| FeaturesError::Parse {
                line,
                message: e.to_string(),
            })?;
            let label = Label::parse(&record[1]).ok_or_else(|| FeaturesError::Parse {
                line,
                message: format!("bad label '{}'", &record[1]),
            })?;
            let mut row = Vec::with_capacity(matrix.feature_names.len());
            for cell in record.iter().skip(3) {
                if cell.is_empty() {
                    row.push(None);
                } else {
                    let v: f64 = cell.parse().map_err(|e| FeaturesError::Parse {
                        line,
                        message: format!("bad number '{cell}': {e}"),
                    })?;
                    row.push(Some(v));
                }
            }
            if row.len() != matrix.feature_names.len() {
                return Err(FeaturesError::Parse {
                    line,
                    message: format!(
                        "expected {} feature cells, got {}",
                        matrix.feature_names.len(),
                        row.len()
                    ),
                });
            }
            matrix.doc_ids.push(record[0].to_string());
            matrix.labels.push(label);
            matrix.domains.push(record[2].to_string());
            matrix.rows.push(row);
        }
        Ok(matrix)
    }
}

fn csv_err(e: csv::Error) -> FeaturesError {
    FeaturesError::Parse {
        line: 0,
        message: e.to_string(),
    }
}

/// Full precision round-trippable float formatting.
fn format_cell(v: f64) -> String {
    let mut buffer = ryu_format(v);
    if buffer.ends_with(".0") {
        buffer.truncate(buffer.len() - 2);
    }
    buffer
}

fn ryu_format(v: f64) -> String {
    // `{:?}` on f64 prints the shortest representation that round-trips.
    format!("{v:?}")
}

/// Which feature families to extract.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractorSet {
    pub cues: bool,
    pub stylistic: bool,
    pub dictionary: bool,
}

impl ExtractorSet {
    pub fn all() -> Self {
        Self {
            cues: true,
            stylistic: true,
            dictionary: true,
        }
    }
}

/// Shared extraction configuration: text pipeline, enabled extractors,
/// optional dictionary, and the stylistic settings.
pub struct FeatureExtraction {
    pub pipeline: TextPipeline,
    pub extractors: ExtractorSet,
    pub dictionary: Option<CategoryDictionary>,
    pub stylistic: StylisticConfig,
}

impl FeatureExtraction {
    pub fn new(extractors: ExtractorSet, dictionary: Option<CategoryDictionary>) -> Self {
        Self {
            pipeline: TextPipeline::builtin(),
            extractors,
            dictionary,
            stylistic: StylisticConfig::default(),
        }
    }

    /// The full header this configuration produces, sorted, with
    /// cross-extractor collisions rejected.
    pub fn feature_names(&self) -> Result<Vec<String>> {
        let mut names: Vec<String> = Vec::new();
        if self.extractors.cues {
            names.extend(CUE_FEATURE_NAMES.iter().map(|s| s.to_string()));
        }
        if self.extractors.stylistic {
            names.extend(stylistic::stylistic_feature_names(&self.stylistic));
        }
        if self.extractors.dictionary {
            let dict = self.dictionary.as_ref().ok_or(FeaturesError::EmptyDictionary)?;
            names.extend(dictionary::dictionary_feature_names(dict));
        }
        let mut sorted = names.clone();
        sorted.sort();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(FeaturesError::DuplicateFeature {
                    name: pair[0].clone(),
                });
            }
        }
        Ok(sorted)
    }

    pub fn extract_doc(&self, doc_id: &str, text: &str) -> Result<FeatureVector> {
        let mut fv = FeatureVector::new(doc_id);
        let needs_tokens = self.extractors.cues || self.extractors.dictionary;
        let tokenized = needs_tokens.then(|| self.pipeline.process(text));
        if self.extractors.cues {
            let doc = tokenized.as_ref().unwrap();
            fv.merge(extract_cue_features(doc, doc_id, self.dictionary.as_ref())?);
        }
        if self.extractors.stylistic {
            fv.merge(extract_stylistic_features(text, doc_id, &self.stylistic));
        }
        if self.extractors.dictionary {
            let dict = self.dictionary.as_ref().ok_or(FeaturesError::EmptyDictionary)?;
            let doc = tokenized.as_ref().unwrap();
            fv.merge(extract_dictionary_features(doc, doc_id, dict)?);
        }
        Ok(fv)
    }

    /// One row per document, columns in lexicographic order; rows keep
    /// explicit missing markers.
    pub fn build_matrix(&self, corpus: &Corpus) -> Result<FeatureMatrix> {
        let feature_names = self.feature_names()?;
        let vectors: Vec<Result<FeatureVector>> = corpus
            .documents
            .par_iter()
            .map(|d| self.extract_doc(&d.id, &d.text))
            .collect();

        let mut rows = Vec::with_capacity(vectors.len());
        for fv in vectors {
            let fv = fv?;
            let row: Vec<Option<f64>> = feature_names.iter().map(|n| fv.get(n)).collect();
            rows.push(row);
        }
        Ok(FeatureMatrix {
            feature_names,
            rows,
            doc_ids: corpus.documents.iter().map(|d| d.id.clone()).collect(),
            labels: corpus.documents.iter().map(|d| d.label).collect(),
            domains: corpus.documents.iter().map(|d| d.domain.clone()).collect(),
        })
    }
}
