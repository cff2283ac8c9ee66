//! Dependency label helpers.
//!
//! Extraction rules are written against Universal Dependencies v2 labels.
//! Parses in the older Stanford scheme are mapped on load with [`normalize`].

use alloc::string::{String, ToString};

/// Stanford basic dependency labels and their UD v2 equivalents.
pub const STANFORD_ALIASES: &[(&str, &str)] = &[
    ("nsubjpass", "nsubj:pass"),
    ("csubjpass", "csubj:pass"),
    ("auxpass", "aux:pass"),
    ("dobj", "obj"),
    ("prt", "compound:prt"),
    ("neg", "advmod"),
    ("poss", "nmod:poss"),
    ("possessive", "case"),
    ("tmod", "obl:tmod"),
    ("npadvmod", "obl:npmod"),
    ("nn", "compound"),
    ("num", "nummod"),
    ("number", "compound"),
    ("rcmod", "acl:relcl"),
    ("partmod", "acl"),
    ("vmod", "acl"),
    ("infmod", "acl"),
    ("quantmod", "advmod"),
    ("predet", "det:predet"),
    ("preconj", "cc:preconj"),
    ("pcomp", "advcl"),
];

/// Maps a label to its UD v2 form; unknown labels pass through unchanged.
pub fn normalize(label: &str) -> String {
    STANFORD_ALIASES
        .iter()
        .find(|(from, _)| *from == label)
        .map(|(_, to)| to.to_string())
        .unwrap_or_else(|| label.to_string())
}

/// The universal part of a label: `nsubj:pass` → `nsubj`.
pub fn base(label: &str) -> &str {
    label.split(':').next().unwrap_or(label)
}

pub fn is_subject(label: &str) -> bool {
    matches!(base(label), "nsubj" | "csubj")
}
