use std::path::PathBuf;

use clap::Args;
use decept_core::features::FeatureMatrix;
use decept_core::selection::{run_selection_pipeline, SelectionConfig};
use serde_json::json;

use crate::config::Provenance;
use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct SelectArgs {
    /// Feature matrix CSV.
    #[arg(long)]
    matrix: PathBuf,
    /// Selected FeatureSet with stage log (JSON).
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    min_leaf: Option<usize>,
    #[arg(long)]
    feature_fraction: Option<f64>,
    /// Cut on 1 - |spearman| for the colinearity stage.
    #[arg(long)]
    colinearity_cut: Option<f64>,
    #[arg(long)]
    folds: Option<usize>,
}

pub fn run(args: SelectArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    if let Some(v) = args.trees {
        cfg.rf.trees = v;
    }
    if let Some(v) = args.min_leaf {
        cfg.rf.min_leaf = v;
    }
    if let Some(v) = args.feature_fraction {
        cfg.rf.feature_fraction = v;
    }
    if let Some(v) = args.colinearity_cut {
        cfg.select.colinearity_cut = v;
    }
    if let Some(v) = args.folds {
        cfg.select.folds = v;
    }

    let matrix = FeatureMatrix::read_csv(super::open_input(&args.matrix)?)?;
    let selection_cfg = SelectionConfig {
        rf: cfg.rf.to_rf_config(cfg.seed),
        colinearity_cut: cfg.select.colinearity_cut,
        cv_folds: cfg.select.folds,
        seed: cfg.seed,
    };
    let selected = run_selection_pipeline(&matrix, &selection_cfg)?;

    let payload = json!({
        "provenance": Provenance::of(cfg),
        "feature_set": selected,
    });
    super::write_json(&args.out, &payload)?;
    println!(
        "selected {} of {} features; set at {}",
        selected.names.len(),
        matrix.n_features(),
        args.out.display()
    );
    Ok(())
}
