//! Labeled multi-domain corpora: loading, validation, cleaning, and
//! persistence.

pub mod clean;
pub mod taxonomy;

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use clean::{clean_corpus, CleanConfig, CleanReport};
pub use taxonomy::{validate_taxonomy, TaxonomyLabel, ValidationReport};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing field '{field}' at line {line}")]
    Schema { field: &'static str, line: usize },
    #[error("duplicate document id '{id}' at line {line}")]
    DuplicateId { id: String, line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CorpusError>;

/// Class label of a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Truthful,
    Deceptive,
}

impl Label {
    pub fn flip(self) -> Self {
        match self {
            Label::Truthful => Label::Deceptive,
            Label::Deceptive => Label::Truthful,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Truthful => "truthful",
            Label::Deceptive => "deceptive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "truthful" => Some(Label::Truthful),
            "deceptive" => Some(Label::Deceptive),
            _ => None,
        }
    }
}

/// One labeled text sample with domain and optional taxonomy metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub label: Label,
    pub domain: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taxonomy: Option<TaxonomyLabel>,
}

/// Where a corpus came from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Raw,
    Cleaned(CleanReport),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub documents: Vec<Document>,
    pub provenance: Provenance,
}

impl Corpus {
    pub fn new(name: impl Into<String>, documents: Vec<Document>) -> Self {
        Self {
            name: name.into(),
            documents,
            provenance: Provenance::Raw,
        }
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// (truthful, deceptive) counts; they always sum to `len()`.
    pub fn class_counts(&self) -> (usize, usize) {
        let deceptive = self
            .documents
            .iter()
            .filter(|d| d.label == Label::Deceptive)
            .count();
        (self.documents.len() - deceptive, deceptive)
    }

    /// Fraction of documents labeled deceptive.
    pub fn deceptive_proportion(&self) -> f64 {
        if self.documents.is_empty() {
            return 0.0;
        }
        self.class_counts().1 as f64 / self.documents.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Jsonl,
    Csv,
}

/// Load a corpus, rejecting duplicate ids and rows with missing fields.
/// Input order is preserved.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let documents = match format {
        CorpusFormat::Jsonl => read_jsonl(reader)?,
        CorpusFormat::Csv => read_csv(reader)?,
    };
    Ok(Corpus::new(name, documents))
}

fn check_duplicates(docs: &[Document]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (i, d) in docs.iter().enumerate() {
        if !seen.insert(d.id.as_str()) {
            return Err(CorpusError::DuplicateId {
                id: d.id.clone(),
                line: i + 1,
            });
        }
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let value: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        docs.push(document_from_value(value, line_no)?);
    }
    check_duplicates(&docs)?;
    Ok(docs)
}

fn document_from_value(value: serde_json::Value, line: usize) -> Result<Document> {
    let get_str = |field: &'static str| -> Result<String> {
        match value.get(field) {
            None | Some(serde_json::Value::Null) => Err(CorpusError::Schema { field, line }),
            Some(serde_json::Value::String(s)) => Ok(s.clone()),
            Some(other) => Err(CorpusError::Parse {
                line,
                message: format!("field '{field}' is not a string: {other}"),
            }),
        }
    };
    let id = get_str("id")?;
    let text = get_str("text")?;
    let label_raw = get_str("label")?;
    let label = Label::parse(&label_raw).ok_or_else(|| CorpusError::Parse {
        line,
        message: format!("label '{label_raw}' is not 'truthful' or 'deceptive'"),
    })?;
    let domain = get_str("domain")?;
    let meta = match value.get("meta") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(
            serde_json::from_value(v.clone()).map_err(|e| CorpusError::Parse {
                line,
                message: format!("bad meta: {e}"),
            })?,
        ),
    };
    let taxonomy = match value.get("taxonomy") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(
            serde_json::from_value(v.clone()).map_err(|e| CorpusError::Parse {
                line,
                message: format!("bad taxonomy: {e}"),
            })?,
        ),
    };
    Ok(Document {
        id,
        text,
        label,
        domain,
        meta,
        taxonomy,
    })
}

pub fn read_csv<R: std::io::Read>(reader: R) -> Result<Vec<Document>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| CorpusError::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let col = |name: &'static str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or(CorpusError::Schema {
                field: name,
                line: 1,
            })
    };
    let (id_col, text_col, label_col, domain_col) =
        (col("id")?, col("text")?, col("label")?, col("domain")?);
    let mut docs = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let line = idx + 2; // header is line 1
        let record = record.map_err(|e| CorpusError::Parse {
            line,
            message: e.to_string(),
        })?;
        let field = |c: usize, name: &'static str| -> Result<String> {
            record
                .get(c)
                .map(str::to_string)
                .ok_or(CorpusError::Schema { field: name, line })
        };
        let label_raw = field(label_col, "label")?;
        let label = Label::parse(&label_raw).ok_or_else(|| CorpusError::Parse {
            line,
            message: format!("label '{label_raw}' is not 'truthful' or 'deceptive'"),
        })?;
        let mut meta = BTreeMap::new();
        for (c, header) in headers.iter().enumerate() {
            if c != id_col && c != text_col && c != label_col && c != domain_col {
                if let Some(v) = record.get(c) {
                    meta.insert(header.to_string(), v.to_string());
                }
            }
        }
        docs.push(Document {
            id: field(id_col, "id")?,
            text: field(text_col, "text")?,
            label,
            domain: field(domain_col, "domain")?,
            meta: if meta.is_empty() { None } else { Some(meta) },
            taxonomy: None,
        });
    }
    check_duplicates(&docs)?;
    Ok(docs)
}

/// Write a corpus as JSONL, one document per line.
pub fn write_jsonl<W: Write>(corpus: &Corpus, mut writer: W) -> Result<()> {
    for doc in &corpus.documents {
        serde_json::to_writer(&mut writer, doc).map_err(|e| CorpusError::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
