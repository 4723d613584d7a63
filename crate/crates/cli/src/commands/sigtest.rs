use std::path::PathBuf;

use clap::Args;
use decept_core::features::{significance_report, FeatureMatrix};

use crate::{CmdError, RunConfig};

#[derive(Args)]
pub struct SigtestArgs {
    /// Feature matrix CSV (from `features`).
    #[arg(long)]
    matrix: PathBuf,
    /// Results CSV: name,statistic,df,p_raw,p_holm,significant,direction.
    #[arg(long)]
    out: PathBuf,
    /// Family-wise significance threshold after Holm correction.
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
}

pub fn run(args: SigtestArgs, cfg: &mut RunConfig) -> Result<(), CmdError> {
    let matrix = FeatureMatrix::read_csv(super::open_input(&args.matrix)?)?;
    let report = significance_report(&matrix, args.alpha)?;

    let mut buf = Vec::new();
    buf.extend_from_slice(cfg.provenance_comment().as_bytes());
    report.write_csv(&mut buf)?;
    std::fs::write(&args.out, buf)
        .map_err(|e| CmdError::runtime(format!("cannot write {}: {e}", args.out.display())))?;

    let significant = report.rows.iter().filter(|r| r.significant).count();
    println!(
        "tested {} features ({} skipped), {} significant at alpha {}; results at {}",
        report.rows.len(),
        report.skipped.len(),
        significant,
        args.alpha,
        args.out.display()
    );
    Ok(())
}
