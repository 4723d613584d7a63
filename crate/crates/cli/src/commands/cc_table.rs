use std::path::PathBuf;

use clap::Args;
use decept_core::selection::{cumulative_counts, shared_features, FeatureSet};
use serde_json::Value;

use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct CcTableArgs {
    /// Per-domain FeatureSet JSON files (two or more).
    #[arg(long, num_args = 2.., required = true)]
    sets: Vec<PathBuf>,
    /// Markdown table output; the table always prints to stdout too.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_feature_set(path: &PathBuf) -> Result<FeatureSet, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CmdError::usage(format!("bad JSON {}: {e}", path.display())))?;
    // Accept a bare FeatureSet or a `select` artifact with `feature_set`.
    let fs_value = value.get("feature_set").unwrap_or(&value);
    serde_json::from_value(fs_value.clone())
        .map_err(|e| CmdError::usage(format!("bad feature set {}: {e}", path.display())))
}

pub fn run(args: CcTableArgs, cfg: &RunConfig) -> Result<(), CmdError> {
    let mut sets = Vec::new();
    for path in &args.sets {
        sets.push(load_feature_set(path)?);
    }
    let table = shared_features(&sets).map_err(|e| CmdError::runtime(e.to_string()))?;
    // The CC cross-check runs on every render.
    cumulative_counts(&table).map_err(|e| CmdError::runtime(e.to_string()))?;

    let markdown = table.to_markdown();
    print!("{markdown}");
    if let Some(out) = &args.out {
        let mut text = markdown;
        text.push_str(&cfg.provenance_footer());
        super::write_text(out, &text)?;
    }
    Ok(())
}
