use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use decept_core::crossdomain::{generalization_test, multidomain_correlation, ScoreTable};
use serde_json::json;

use crate::config::Provenance;
use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct ScoresAnalyzeArgs {
    /// Score table CSV: train_domain,eval_domain,run_id,f1,converged.
    #[arg(long)]
    scores: PathBuf,
    /// JSON map of eval domain -> deceptive proportion q.
    #[arg(long)]
    q_file: PathBuf,
    /// Analysis report output (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Markdown p-value matrix output.
    #[arg(long)]
    md: Option<PathBuf>,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// Also run the pairwise correlation analysis over models trained on
    /// this tag (e.g. "union").
    #[arg(long)]
    union_tag: Option<String>,
    /// IQR multiplier for outlier exclusion in the correlation analysis.
    #[arg(long, default_value_t = 1.5)]
    iqr_k: f64,
    /// Significance level for correlation slopes.
    #[arg(long, default_value_t = 0.05)]
    correlation_alpha: f64,
}

fn load_q(path: &PathBuf) -> Result<BTreeMap<String, f64>, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CmdError::usage(format!("bad q file {}: {e}", path.display())))?;
    // Accept either a bare map or an object with a "q" field.
    let map = value.get("q").unwrap_or(&value);
    serde_json::from_value(map.clone())
        .map_err(|e| CmdError::usage(format!("bad q file {}: {e}", path.display())))
}

pub fn run(args: ScoresAnalyzeArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    let table = ScoreTable::read_csv(super::open_input(&args.scores)?)?;
    let q = load_q(&args.q_file)?;
    let report = generalization_test(&table, &q, args.alpha)?;
    let correlation = match &args.union_tag {
        Some(tag) => Some(multidomain_correlation(
            &table,
            tag,
            args.iqr_k,
            args.correlation_alpha,
        )?),
        None => None,
    };

    super::write_json(
        &args.out,
        &json!({
            "provenance": Provenance::of(cfg),
            "generalization": report,
            "correlation": correlation,
        }),
    )?;
    if let Some(md) = &args.md {
        let mut text = report.to_markdown();
        text.push_str(&cfg.provenance_footer());
        super::write_text(md, &text)?;
    }

    let significant = report.cells.iter().filter(|c| c.significant).count();
    println!(
        "{} cells tested, {} significant at alpha {}; report at {}",
        report.cells.len(),
        significant,
        args.alpha,
        args.out.display()
    );
    Ok(())
}
