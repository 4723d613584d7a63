use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use decept_core::crossdomain::{cross_eval_rf, generalization_test, CrossEvalConfig};
use serde_json::json;

use crate::config::Provenance;
use crate::{CmdError, RunConfig};

use super::features::{extraction_from_config, parse_extractors};

#[derive(Args)]
pub struct CrossdomainArgs {
    /// Cleaned per-domain corpora (two or more).
    #[arg(long, num_args = 2.., required = true)]
    domains: Vec<PathBuf>,
    /// Score table output (CSV).
    #[arg(long)]
    out: PathBuf,
    /// Generalization report (JSON; default <out>.report.json).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Markdown p-value matrix output.
    #[arg(long)]
    md: Option<PathBuf>,
    /// Runs (forests) trained per domain.
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated extractor families.
    #[arg(long)]
    extractors: Option<String>,
    #[arg(long)]
    dictionary: Option<PathBuf>,
    #[arg(long)]
    trees: Option<usize>,
    /// Write the per-domain deceptive proportions (JSON).
    #[arg(long)]
    q_out: Option<PathBuf>,
    /// Write mean-F1 series for external plotting (CSV).
    #[arg(long)]
    emit_plot_data: Option<PathBuf>,
}

pub fn run(args: CrossdomainArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    if let Some(v) = args.runs {
        cfg.crossdomain.runs = v;
    }
    if let Some(v) = args.alpha {
        cfg.crossdomain.alpha = v;
    }
    if let Some(v) = args.trees {
        cfg.rf.trees = v;
    }
    if let Some(spec) = &args.extractors {
        cfg.features.extractors = spec.split(',').map(|s| s.trim().to_string()).collect();
    }

    let mut corpora = Vec::new();
    for path in &args.domains {
        corpora.push(super::load_corpus_checked(path)?);
    }

    let extractors = parse_extractors(&cfg.features.extractors.join(","))?;
    let extraction = extraction_from_config(cfg, extractors, args.dictionary.as_deref(), None)?;
    let eval_cfg = CrossEvalConfig {
        rf: cfg.rf.to_rf_config(cfg.seed),
        runs: cfg.crossdomain.runs,
        ratios: cfg.crossdomain.ratios,
        seed: cfg.seed,
    };
    let table = cross_eval_rf(&corpora, &extraction, &eval_cfg)?;

    // The deceptive proportion of each domain's full cleaned corpus.
    let q: BTreeMap<String, f64> = corpora
        .iter()
        .map(|c| (c.name.clone(), c.deceptive_proportion()))
        .collect();
    let report = generalization_test(&table, &q, cfg.crossdomain.alpha)?;

    let mut buf = Vec::new();
    buf.extend_from_slice(cfg.provenance_comment().as_bytes());
    table.write_csv(&mut buf)?;
    std::fs::write(&args.out, buf)
        .map_err(|e| CmdError::runtime(format!("cannot write {}: {e}", args.out.display())))?;

    let report_path = args
        .report
        .unwrap_or_else(|| args.out.with_extension("report.json"));
    super::write_json(
        &report_path,
        &json!({
            "provenance": Provenance::of(cfg),
            "q": q,
            "report": report,
        }),
    )?;

    if let Some(md) = &args.md {
        let mut text = report.to_markdown();
        text.push_str(&cfg.provenance_footer());
        super::write_text(md, &text)?;
    }
    if let Some(q_path) = &args.q_out {
        super::write_json(q_path, &json!({ "provenance": Provenance::of(cfg), "q": q }))?;
    }
    if let Some(plot) = &args.emit_plot_data {
        let mut out = cfg.provenance_comment();
        out.push_str("series,train_domain,eval_domain,value\n");
        for train in &report.train_domains {
            for eval in &report.eval_domains {
                let f1s = table.converged_f1s(train, eval);
                if !f1s.is_empty() {
                    let mean = f1s.iter().sum::<f64>() / f1s.len() as f64;
                    out.push_str(&format!("f1_mean,{train},{eval},{mean:?}\n"));
                }
            }
        }
        for (domain, cf) in &report.cf_f1 {
            out.push_str(&format!("cf_f1,,{domain},{cf:?}\n"));
        }
        super::write_text(plot, &out)?;
    }

    let significant = report.cells.iter().filter(|c| c.significant).count();
    println!(
        "{} (train, eval) pairs tested, {} beat the coin flip at alpha {}; scores at {}",
        report.cells.len(),
        significant,
        cfg.crossdomain.alpha,
        args.out.display()
    );
    Ok(())
}
