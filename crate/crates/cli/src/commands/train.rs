use std::path::PathBuf;

use clap::Args;
use decept_core::features::FeatureMatrix;
use decept_core::model::{cross_validate, train_random_forest};
use serde_json::json;

use crate::config::Provenance;
use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct TrainArgs {
    /// Feature matrix CSV.
    #[arg(long)]
    matrix: PathBuf,
    /// Serialized forest artifact (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Cross-validation report path (default: <out>.cv.json).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    min_leaf: Option<usize>,
    #[arg(long)]
    feature_fraction: Option<f64>,
    #[arg(long, default_value_t = 5)]
    folds: usize,
    /// Write accuracy/F1 series for external plotting (CSV).
    #[arg(long)]
    emit_plot_data: Option<PathBuf>,
}

pub fn run(args: TrainArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    if let Some(v) = args.trees {
        cfg.rf.trees = v;
    }
    if let Some(v) = args.min_leaf {
        cfg.rf.min_leaf = v;
    }
    if let Some(v) = args.feature_fraction {
        cfg.rf.feature_fraction = v;
    }

    let matrix = FeatureMatrix::read_csv(super::open_input(&args.matrix)?)?;
    let rf = cfg.rf.to_rf_config(cfg.seed);
    let cv = cross_validate(&matrix, &rf, args.folds, cfg.seed)?;
    let forest = train_random_forest(&matrix, &rf)?;
    let oob = forest.oob_accuracy().ok();

    let payload = json!({
        "provenance": Provenance::of(cfg),
        "forest": forest,
        "oob_accuracy": oob,
    });
    super::write_json(&args.out, &payload)?;

    let report_path = args
        .report
        .unwrap_or_else(|| args.out.with_extension("cv.json"));
    let report_payload = json!({
        "provenance": Provenance::of(cfg),
        "cv": cv,
    });
    super::write_json(&report_path, &report_payload)?;

    if let Some(plot) = &args.emit_plot_data {
        let mut out = cfg.provenance_comment();
        out.push_str("series,fold,value\n");
        for (i, fold) in cv.per_fold.iter().enumerate() {
            out.push_str(&format!("accuracy,{i},{:?}\n", fold.accuracy));
            out.push_str(&format!("f1,{i},{:?}\n", fold.f1));
        }
        out.push_str(&format!("accuracy_mean,,{:?}\n", cv.mean.accuracy));
        out.push_str(&format!("f1_mean,,{:?}\n", cv.mean.f1));
        super::write_text(plot, &out)?;
    }

    println!(
        "cv accuracy {:.4} +/- {:.4}, f1 {:.4} +/- {:.4}; model at {}",
        cv.mean.accuracy,
        cv.std.accuracy,
        cv.mean.f1,
        cv.std.f1,
        args.out.display()
    );
    Ok(())
}
