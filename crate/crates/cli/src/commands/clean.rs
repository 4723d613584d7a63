use std::path::PathBuf;

use clap::Args;
use decept_core::corpus::{clean_corpus, write_jsonl, CleanConfig};
use serde_json::json;

use crate::config::Provenance;
use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct CleanArgs {
    /// Input corpus (JSONL, or CSV by extension).
    #[arg(long = "in")]
    input: PathBuf,
    /// Cleaned corpus output (JSONL).
    #[arg(long)]
    out: PathBuf,
    /// Invert every label (for corpora shipped with flipped labels).
    #[arg(long)]
    flip_labels: bool,
    /// Maximum characters per document.
    #[arg(long)]
    max_chars: Option<usize>,
    /// Keep exact duplicates.
    #[arg(long)]
    no_dedup: bool,
    /// Keep documents failing the English heuristic.
    #[arg(long)]
    keep_non_english: bool,
    /// Report path (default: <out>.report.json).
    #[arg(long)]
    report: Option<PathBuf>,
}

pub fn run(args: CleanArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    if args.flip_labels {
        cfg.clean.flip_labels = true;
    }
    if let Some(m) = args.max_chars {
        cfg.clean.max_chars = m;
    }
    if args.no_dedup {
        cfg.clean.dedup = false;
    }
    if args.keep_non_english {
        cfg.clean.drop_non_english = false;
    }

    let corpus = super::load_corpus_checked(&args.input)?;
    let clean_cfg = CleanConfig {
        flip_labels: cfg.clean.flip_labels,
        max_chars: cfg.clean.max_chars,
        dedup: cfg.clean.dedup,
        drop_non_english: cfg.clean.drop_non_english,
        ..CleanConfig::default()
    };
    let (cleaned, report) = clean_corpus(&corpus, &clean_cfg);

    let out = std::fs::File::create(&args.out)
        .map_err(|e| CmdError::runtime(format!("cannot create {}: {e}", args.out.display())))?;
    write_jsonl(&cleaned, std::io::BufWriter::new(out))?;

    let report_path = args
        .report
        .unwrap_or_else(|| args.out.with_extension("report.json"));
    let payload = json!({
        "provenance": Provenance::of(cfg),
        "input_documents": corpus.len(),
        "output_documents": cleaned.len(),
        "report": report,
    });
    super::write_json(&report_path, &payload)?;
    println!(
        "cleaned {} -> {} documents ({} removed); report at {}",
        corpus.len(),
        cleaned.len(),
        report.total_removed(),
        report_path.display()
    );
    Ok(())
}
