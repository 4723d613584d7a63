pub mod cc_table;
pub mod clean;
pub mod crossdomain;
pub mod features;
pub mod ngrams;
pub mod scores;
pub mod select;
pub mod sigtest;
pub mod taxonomy;
pub mod train;

use std::path::Path;

use crate::CmdError;

/// Open an input file, classifying a missing path as a usage error that
/// names it.
pub fn open_input(path: &Path) -> Result<std::io::BufReader<std::fs::File>, CmdError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CmdError::usage(format!("cannot open {}: {e}", path.display())))?;
    Ok(std::io::BufReader::new(file))
}

pub fn write_text(path: &Path, content: &str) -> Result<(), CmdError> {
    std::fs::write(path, content)
        .map_err(|e| CmdError::runtime(format!("cannot write {}: {e}", path.display())))
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CmdError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CmdError::runtime(format!("serialize {}: {e}", path.display())))?;
    text.push('\n');
    write_text(path, &text)
}

/// Corpus format inferred from the file extension.
pub fn corpus_format(path: &Path) -> decept_core::corpus::CorpusFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => decept_core::corpus::CorpusFormat::Csv,
        _ => decept_core::corpus::CorpusFormat::Jsonl,
    }
}

/// Load a corpus, naming the path in every error.
pub fn load_corpus_checked(path: &Path) -> Result<decept_core::corpus::Corpus, CmdError> {
    decept_core::corpus::load_corpus(path, corpus_format(path)).map_err(|e| {
        let mapped: CmdError = e.into();
        CmdError {
            message: format!("{}: {}", path.display(), mapped.message),
            usage: mapped.usage,
        }
    })
}
