use std::path::PathBuf;

use clap::Args;
use decept_core::corpus::{validate_taxonomy, TaxonomyLabel};
use serde_json::json;

use crate::CmdError;

#[derive(Args)]
pub struct TaxonomyArgs {
    /// Corpus (JSONL/CSV) whose documents' taxonomy labels to validate.
    #[arg(long = "in", conflicts_with = "label")]
    input: Option<PathBuf>,
    /// A single taxonomy label JSON file to validate.
    #[arg(long)]
    label: Option<PathBuf>,
    /// Validation report output (JSON); defaults to stdout only.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: TaxonomyArgs) -> Result<(), CmdError> {
    let mut reports = Vec::new();
    match (&args.input, &args.label) {
        (Some(path), None) => {
            let corpus = super::load_corpus_checked(path)?;
            for doc in &corpus.documents {
                if let Some(label) = &doc.taxonomy {
                    let report = validate_taxonomy(label);
                    if !report.is_valid() {
                        reports.push(json!({ "id": doc.id, "violations": report.violations }));
                    }
                }
            }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))?;
            let label: TaxonomyLabel = serde_json::from_str(&text)
                .map_err(|e| CmdError::usage(format!("bad taxonomy JSON {}: {e}", path.display())))?;
            let report = validate_taxonomy(&label);
            if !report.is_valid() {
                reports.push(json!({ "id": path.display().to_string(), "violations": report.violations }));
            }
        }
        _ => return Err(CmdError::usage("provide exactly one of --in or --label")),
    }

    let payload = json!({ "invalid": reports });
    if let Some(out) = &args.out {
        super::write_json(out, &payload)?;
    }
    if reports.is_empty() {
        println!("all taxonomy labels valid");
        Ok(())
    } else {
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        Err(CmdError::runtime(format!(
            "{} label(s) failed validation",
            reports.len()
        )))
    }
}
