//! The closed POS tagset: Penn Treebank tags, the punctuation tags, and the
//! seven OntoNotes additions (ADD, AFX, HYPH, NFP, UH, SP, XX).

pub const TAGSET: &[&str] = &[
    // Penn Treebank word classes.
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP",
    "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB",
    "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB",
    // Punctuation.
    ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "$", "#",
    // OntoNotes additions.
    "ADD", "AFX", "HYPH", "NFP", "SP", "XX",
];

pub fn is_valid_tag(tag: &str) -> bool {
    TAGSET.contains(&tag)
}

/// Tags counted as verbs for the cue features.
pub fn is_verb_tag(tag: &str) -> bool {
    matches!(tag, "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ")
}

/// Tags counted as nouns for the cue features.
pub fn is_noun_tag(tag: &str) -> bool {
    matches!(tag, "NN" | "NNS" | "NNP" | "NNPS")
}

pub fn is_adjective_tag(tag: &str) -> bool {
    matches!(tag, "JJ" | "JJR" | "JJS")
}

pub fn is_adverb_tag(tag: &str) -> bool {
    matches!(tag, "RB" | "RBR" | "RBS")
}
