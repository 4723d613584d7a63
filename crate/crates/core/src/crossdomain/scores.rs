//! Score tables: one F1 per (train domain, eval domain, run), with a
//! convergence flag. CSV schema:
//! `train_domain,eval_domain,run_id,f1,converged`.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CrossdomainError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScoreEntry {
    pub train_domain: String,
    pub eval_domain: String,
    pub run_id: String,
    pub f1: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ScoreTable {
    pub entries: Vec<ScoreEntry>,
}

impl ScoreTable {
    /// Converged F1 values for a (train, eval) pair, in table order.
    pub fn converged_f1s(&self, train: &str, eval: &str) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|e| e.converged && e.train_domain == train && e.eval_domain == eval)
            .map(|e| e.f1)
            .collect()
    }

    pub fn train_domains(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.entries.iter().map(|e| e.train_domain.as_str()).collect();
        set.into_iter().map(str::to_string).collect()
    }

    pub fn eval_domains(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self.entries.iter().map(|e| e.eval_domain.as_str()).collect();
        set.into_iter().map(str::to_string).collect()
    }

    pub fn read_csv<R: BufRead>(reader: R) -> Result<ScoreTable> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(reader);
        let headers = rdr.headers().map_err(|e| CrossdomainError::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let expected = ["train_domain", "eval_domain", "run_id", "f1", "converged"];
        let got: Vec<&str> = headers.iter().collect();
        if got != expected {
            return Err(CrossdomainError::Parse {
                line: 1,
                message: format!("header {got:?}, expected {expected:?}"),
            });
        }
        let mut entries = Vec::new();
        for (idx, record) in rdr.records().enumerate() {
            let line = idx + 2;
            let record = record.map_err(|e| CrossdomainError::Parse {
                line,
                message: e.to_string(),
            })?;
            let f1: f64 = record[3].parse().map_err(|e| CrossdomainError::Parse {
                line,
                message: format!("bad f1 '{}': {e}", &record[3]),
            })?;
            if !(0.0..=1.0).contains(&f1) || f1.is_nan() {
                return Err(CrossdomainError::Range { line, value: f1 });
            }
            let converged = match &record[4] {
                "true" | "1" => true,
                "false" | "0" => false,
                other => {
                    return Err(CrossdomainError::Parse {
                        line,
                        message: format!("bad converged flag '{other}'"),
                    })
                }
            };
            entries.push(ScoreEntry {
                train_domain: record[0].to_string(),
                eval_domain: record[1].to_string(),
                run_id: record[2].to_string(),
                f1,
                converged,
            });
        }
        Ok(ScoreTable { entries })
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["train_domain", "eval_domain", "run_id", "f1", "converged"])
            .map_err(|e| CrossdomainError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        for e in &self.entries {
            w.write_record([
                e.train_domain.clone(),
                e.eval_domain.clone(),
                e.run_id.clone(),
                format!("{:?}", e.f1),
                e.converged.to_string(),
            ])
            .map_err(|e| CrossdomainError::Parse {
                line: 0,
                message: e.to_string(),
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn load_scores(path: &Path) -> Result<ScoreTable> {
    let file = std::fs::File::open(path)?;
    ScoreTable::read_csv(std::io::BufReader::new(file))
}
