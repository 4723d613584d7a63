//! Corpus analytics for cross-domain deception research.
//!
//! The crate covers the full pipeline: ingesting and cleaning labeled
//! multi-domain corpora, extracting linguistic / stylistic / dictionary /
//! function-word n-gram features, significance testing with Holm
//! correction, three-stage feature selection, from-scratch random forests
//! with out-of-bag accounting, and cross-domain generalization analysis
//! over model score tables.

pub mod corpus;
pub mod crossdomain;
pub mod features;
pub mod model;
pub mod ngrams;
pub mod selection;
pub mod stats;
pub mod text;
