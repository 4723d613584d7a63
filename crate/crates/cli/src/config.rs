//! Run configuration: TOML file defaults with full flag override, and the
//! canonical config hash embedded in every artifact.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CmdError;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub threads: Option<usize>,
    pub clean: CleanSection,
    pub features: FeaturesSection,
    pub rf: RfSection,
    pub select: SelectSection,
    pub ngrams: NgramsSection,
    pub crossdomain: CrossdomainSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CleanSection {
    pub flip_labels: bool,
    pub max_chars: usize,
    pub dedup: bool,
    pub drop_non_english: bool,
}

impl Default for CleanSection {
    fn default() -> Self {
        let d = decept_core::corpus::CleanConfig::default();
        Self {
            flip_labels: d.flip_labels,
            max_chars: d.max_chars,
            dedup: d.dedup,
            drop_non_english: d.drop_non_english,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FeaturesSection {
    pub extractors: Vec<String>,
    pub dictionary: Option<String>,
    pub lexicon: Option<String>,
}

impl Default for FeaturesSection {
    fn default() -> Self {
        Self {
            extractors: vec!["cues".into(), "stylistic".into(), "dictionary".into()],
            dictionary: None,
            lexicon: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RfSection {
    pub trees: usize,
    pub min_leaf: usize,
    pub feature_fraction: f64,
}

impl Default for RfSection {
    fn default() -> Self {
        Self {
            trees: 50,
            min_leaf: 5,
            feature_fraction: 0.5,
        }
    }
}

impl RfSection {
    pub fn to_rf_config(&self, seed: u64) -> decept_core::model::RFConfig {
        decept_core::model::RFConfig {
            n_trees: self.trees,
            min_leaf: self.min_leaf,
            feature_fraction: self.feature_fraction,
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelectSection {
    pub colinearity_cut: f64,
    pub folds: usize,
}

impl Default for SelectSection {
    fn default() -> Self {
        Self {
            colinearity_cut: 0.05,
            folds: 5,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NgramsSection {
    pub n_min: usize,
    pub n_max: usize,
    pub top_k: usize,
    pub alpha: f64,
    pub fw_denominator: bool,
}

impl Default for NgramsSection {
    fn default() -> Self {
        Self {
            n_min: 1,
            n_max: 8,
            top_k: 100,
            alpha: 0.01,
            fw_denominator: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CrossdomainSection {
    pub runs: usize,
    pub ratios: [f64; 3],
    pub alpha: f64,
}

impl Default for CrossdomainSection {
    fn default() -> Self {
        Self {
            runs: 100,
            ratios: [0.8, 0.1, 0.1],
            alpha: 0.01,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CmdError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CmdError::usage(format!("cannot read config {}: {e}", p.display()))
                })?;
                toml::from_str(&text)
                    .map_err(|e| CmdError::usage(format!("bad config {}: {e}", p.display())))
            }
        }
    }

    /// SHA-256 of the canonical JSON form of the effective config.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        hex[..16].to_string()
    }

    /// Provenance comment line for CSV artifacts.
    pub fn provenance_comment(&self) -> String {
        format!("# config_hash={} seed={}\n", self.hash(), self.seed)
    }

    /// Provenance footer for Markdown artifacts.
    pub fn provenance_footer(&self) -> String {
        format!("\n<!-- config_hash={} seed={} -->\n", self.hash(), self.seed)
    }
}

/// Provenance fields embedded in JSON artifacts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub seed: u64,
}

impl Provenance {
    pub fn of(cfg: &RunConfig) -> Self {
        Self {
            config_hash: cfg.hash(),
            seed: cfg.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trip_and_stable_hash() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.hash(), cfg.hash());
        let toml_text = toml::to_string(&cfg).unwrap();
        let back: RunConfig = toml::from_str(&toml_text).unwrap();
        assert_eq!(cfg.hash(), back.hash());
    }

    #[test]
    fn hash_changes_with_content() {
        let a = RunConfig::default();
        let b = RunConfig {
            seed: 99,
            ..Default::default()
        };
        assert_ne!(a.hash(), b.hash());
    }
}
