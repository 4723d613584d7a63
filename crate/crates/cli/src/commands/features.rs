use std::path::{Path, PathBuf};

use clap::Args;
use decept_core::features::{CategoryDictionary, ExtractorSet, FeatureExtraction};
use decept_core::text::FunctionWordLexicon;

use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct FeaturesArgs {
    /// Input corpus (JSONL or CSV).
    #[arg(long = "in")]
    input: PathBuf,
    /// Feature matrix output (CSV).
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated extractor families: cues,stylistic,dictionary.
    #[arg(long)]
    extractors: Option<String>,
    /// Category dictionary file (default: the bundled demo dictionary).
    #[arg(long)]
    dictionary: Option<PathBuf>,
    /// Function-word lexicon file (default: bundled).
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

pub fn parse_extractors(spec: &str) -> Result<ExtractorSet, CmdError> {
    let mut set = ExtractorSet::default();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part {
            "cues" => set.cues = true,
            "stylistic" => set.stylistic = true,
            "dictionary" => set.dictionary = true,
            other => {
                return Err(CmdError::usage(format!(
                    "unknown extractor '{other}' (expected cues, stylistic, dictionary)"
                )))
            }
        }
    }
    if set == ExtractorSet::default() {
        return Err(CmdError::usage("no extractors requested"));
    }
    Ok(set)
}

/// Build the extraction config shared by the feature-based commands.
pub fn extraction_from_config(
    cfg: &RunConfig,
    extractors: ExtractorSet,
    dictionary_flag: Option<&Path>,
    lexicon_flag: Option<&Path>,
) -> Result<FeatureExtraction, CmdError> {
    let dict_path = dictionary_flag
        .map(Path::to_path_buf)
        .or_else(|| cfg.features.dictionary.as_ref().map(PathBuf::from));
    let dictionary = match dict_path {
        Some(p) => Some(CategoryDictionary::from_path(&p)?),
        None => Some(CategoryDictionary::demo()),
    };
    let mut extraction = FeatureExtraction::new(extractors, dictionary);
    let lex_path = lexicon_flag
        .map(Path::to_path_buf)
        .or_else(|| cfg.features.lexicon.as_ref().map(PathBuf::from));
    if let Some(p) = lex_path {
        extraction.pipeline.lexicon = FunctionWordLexicon::from_path(&p)?;
    }
    Ok(extraction)
}

pub fn run(args: FeaturesArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    if let Some(spec) = &args.extractors {
        cfg.features.extractors = spec.split(',').map(|s| s.trim().to_string()).collect();
    }
    let extractors = parse_extractors(&cfg.features.extractors.join(","))?;
    let extraction = extraction_from_config(
        cfg,
        extractors,
        args.dictionary.as_deref(),
        args.lexicon.as_deref(),
    )?;

    let corpus = super::load_corpus_checked(&args.input)?;
    let matrix = extraction.build_matrix(&corpus)?;

    let mut buf = Vec::new();
    buf.extend_from_slice(cfg.provenance_comment().as_bytes());
    matrix.write_csv(&mut buf)?;
    std::fs::write(&args.out, buf)
        .map_err(|e| CmdError::runtime(format!("cannot write {}: {e}", args.out.display())))?;
    println!(
        "wrote {} x {} feature matrix to {}",
        matrix.n_rows(),
        matrix.n_features(),
        args.out.display()
    );
    Ok(())
}
