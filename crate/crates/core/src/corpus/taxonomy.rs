//! Deception taxonomy metadata and its closed vocabularies.
//!
//! Validation is report-based: every field violating its vocabulary or
//! invariant is listed; an empty report means the label is valid.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// The 26 stratagem subcategories (the action sub-taxonomy: space, time,
/// causality, quality, essence, and speech-act cases).
pub const STRATAGEM_CASES: &[&str] = &[
    // Space.
    "direction",
    "location-at",
    "location-from",
    "location-to",
    "location-through",
    "orientation",
    // Time.
    "frequency",
    "time-at",
    "time-from",
    "time-to",
    "time-through",
    // Causality.
    "cause",
    "contradiction",
    "effect",
    "purpose",
    // Quality.
    "accompaniment",
    "content",
    "manner",
    "material",
    "measure",
    "order",
    "value",
    // Essence.
    "supertype",
    "whole",
    // Speech-act theory.
    "external-precondition",
    "internal-precondition",
];

/// The persuasion techniques, grouped by category.
pub const PERSUASION_TECHNIQUES: &[&str] = &[
    // Justification.
    "Appeal to popularity",
    "Appeal to authority/expert",
    "Appeal to values",
    "Appeal to fear/prejudice",
    "Reciprocity",
    "Scarcity",
    "Reward",
    "Appeal to relevant empirical evidence",
    "Relevant statistics",
    "Relevant examples",
    // Simplification.
    "Causal oversimplification",
    "False dilemma or no choice",
    "Consequential oversimplification",
    // Distraction.
    "Straw man",
    "Red herring",
    "Whataboutism",
    "Flag waving",
    "Liking",
    // Call.
    "Slogans",
    "Social proof",
    "Appeal to time",
    "Conversation killer",
    // Manipulative wording/images.
    "Loaded language/images",
    "Repetition",
    "Exaggeration or minimization",
    "Obfuscation",
    // Attack on reputation.
    "Name calling or labeling",
    "Doubt",
    "Guilt by association",
    "Appeal to hypocrisy",
    "Questioning the reputation",
];

pub const SOURCES: &[&str] = &["human", "bot", "mixed"];
pub const TARGETS: &[&str] = &["human", "detector"];
pub const GOAL_KINDS: &[&str] = &["harmless", "harmful"];
pub const FACTICITY: &[&str] = &["establishable", "not_establishable", "unknown"];
pub const VERIFIABILITY: &[&str] = &["easy", "hard", "unknown"];
pub const BREADTH: &[&str] = &["narrow", "broad"];
pub const MODALITY: &[&str] = &["gestural", "audio", "textual", "visual"];
pub const MANNER: &[&str] = &["interactive", "non_interactive"];

/// Goal of the deception plus an optional free-text subgoal.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Goal {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgoal: Option<String>,
}

/// Taxonomy metadata for a document; every field is optional so partially
/// annotated corpora stay loadable, with violations surfaced by
/// [`validate_taxonomy`].
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct TaxonomyLabel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sources: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<BTreeSet<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<Goal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facticity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verifiability: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breadth: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub media: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modality: Option<BTreeSet<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manner: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratagem_cases: Option<BTreeSet<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub persuasion: Option<BTreeSet<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, field: &str, message: String) {
        self.violations.push(Violation {
            field: field.to_string(),
            message,
        });
    }
}

fn check_enum(report: &mut ValidationReport, field: &str, value: &Option<String>, vocab: &[&str]) {
    if let Some(v) = value {
        if !vocab.iter().any(|x| x.eq_ignore_ascii_case(v)) {
            report.push(field, format!("unknown value '{v}'"));
        }
    }
}

fn check_set(
    report: &mut ValidationReport,
    field: &str,
    value: &Option<BTreeSet<String>>,
    vocab: &[&str],
) {
    if let Some(set) = value {
        for v in set {
            if !vocab.iter().any(|x| x.eq_ignore_ascii_case(v)) {
                report.push(field, format!("unknown value '{v}'"));
            }
        }
    }
}

/// Check every field of a taxonomy label against its closed vocabulary and
/// the set invariants.
pub fn validate_taxonomy(label: &TaxonomyLabel) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_enum(&mut report, "sources", &label.sources, SOURCES);
    check_set(&mut report, "targets", &label.targets, TARGETS);
    if let Some(goal) = &label.goal {
        if !GOAL_KINDS.iter().any(|x| x.eq_ignore_ascii_case(&goal.kind)) {
            report.push("goal", format!("unknown goal kind '{}'", goal.kind));
        }
    }
    check_enum(&mut report, "facticity", &label.facticity, FACTICITY);
    check_enum(&mut report, "verifiability", &label.verifiability, VERIFIABILITY);
    check_enum(&mut report, "breadth", &label.breadth, BREADTH);
    if let Some(modality) = &label.modality {
        if modality.is_empty() {
            report.push("modality", "provided but empty".into());
        }
    }
    check_set(&mut report, "modality", &label.modality, MODALITY);
    check_enum(&mut report, "manner", &label.manner, MANNER);
    check_set(
        &mut report,
        "stratagem_cases",
        &label.stratagem_cases,
        STRATAGEM_CASES,
    );
    check_set(&mut report, "persuasion", &label.persuasion, PERSUASION_TECHNIQUES);
    report
}
