use std::path::PathBuf;

use clap::Args;
use decept_core::corpus::Label;
use decept_core::ngrams::{ngram_significance, rank_ngrams, write_ngram_tests_csv, OccDenominator};
use decept_core::text::{TextPipeline, TokenizedDoc};

use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct NgramsArgs {
    /// Input corpus (JSONL or CSV).
    #[arg(long = "in")]
    input: PathBuf,
    /// Ranked and tested n-gram table (CSV).
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Candidates kept for significance testing.
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Divide by the function-word subsequence length instead of the
    /// sentence word count (sensitivity analysis).
    #[arg(long)]
    fw_denominator: bool,
}

pub fn run(args: NgramsArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    if let Some(v) = args.n_min {
        cfg.ngrams.n_min = v;
    }
    if let Some(v) = args.n_max {
        cfg.ngrams.n_max = v;
    }
    if let Some(v) = args.top_k {
        cfg.ngrams.top_k = v;
    }
    if let Some(v) = args.alpha {
        cfg.ngrams.alpha = v;
    }
    if args.fw_denominator {
        cfg.ngrams.fw_denominator = true;
    }
    let denom = if cfg.ngrams.fw_denominator {
        OccDenominator::FunctionWords
    } else {
        OccDenominator::SentenceWords
    };

    let corpus = super::load_corpus_checked(&args.input)?;
    let pipeline = TextPipeline::builtin();
    let tokenized: Vec<(Label, TokenizedDoc)> = corpus
        .documents
        .iter()
        .map(|d| (d.label, pipeline.process(&d.text)))
        .collect();
    let refs: Vec<(Label, &TokenizedDoc)> = tokenized.iter().map(|(l, d)| (*l, d)).collect();

    let ranked = rank_ngrams(&refs, cfg.ngrams.n_min..=cfg.ngrams.n_max, cfg.ngrams.top_k, denom)?;
    let tested = ngram_significance(ranked, &refs, cfg.ngrams.alpha, denom)?;

    let mut buf = Vec::new();
    buf.extend_from_slice(cfg.provenance_comment().as_bytes());
    write_ngram_tests_csv(&tested, &mut buf)?;
    std::fs::write(&args.out, buf)
        .map_err(|e| CmdError::runtime(format!("cannot write {}: {e}", args.out.display())))?;

    let significant = tested.iter().filter(|t| t.significant).count();
    println!(
        "ranked {} n-grams, {} significant at alpha {} after Holm; table at {}",
        tested.len(),
        significant,
        cfg.ngrams.alpha,
        args.out.display()
    );
    Ok(())
}
