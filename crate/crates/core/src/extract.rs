//! Per-sentence orchestration of the extractors and annotators.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::clause::{extract_clauses, VerbLists};
use crate::context::{
    annotate_attribution, annotate_clausal_modifier, noun_mediated_rules, ContextLexicons,
};
use crate::model::{ExtractionRecord, SentenceGraph};
use crate::verb_phrase::{extract_verb_phrase, PatternLexicon};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractorSet {
    pub verb: bool,
    pub clause: bool,
    pub noun: bool,
}

impl ExtractorSet {
    pub const ALL: ExtractorSet = ExtractorSet {
        verb: true,
        clause: true,
        noun: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.verb || self.clause || self.noun)
    }
}

impl Default for ExtractorSet {
    fn default() -> Self {
        ExtractorSet::ALL
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub extractors: ExtractorSet,
    pub lexicon: PatternLexicon,
    pub verb_lists: VerbLists,
    pub context: ContextLexicons,
}

/// Runs the selected extractors over one sentence and annotates the result.
///
/// Byte-identical tuples from the same extractor are dropped. Records are
/// ordered by extractor, then by the first token of the relation; records
/// that tie keep generation order.
pub fn extract_sentence(graph: &SentenceGraph, options: &Options) -> Vec<ExtractionRecord> {
    let mut records = Vec::new();
    if options.extractors.verb {
        records.extend(extract_verb_phrase(graph, &options.lexicon));
    }
    if options.extractors.clause {
        records.extend(extract_clauses(graph, &options.verb_lists));
    }
    if options.extractors.noun {
        records.extend(noun_mediated_rules(
            graph,
            &options.context.relational_nouns,
        ));
    }

    let records = annotate_attribution(graph, records, &options.context.attribution_verbs);
    let records = annotate_clausal_modifier(graph, records, &options.context.markers);

    let mut seen = BTreeSet::new();
    let mut records: Vec<ExtractionRecord> = records
        .into_iter()
        .filter(|r| seen.insert(r.dedup_key()))
        .collect();
    records.sort_by_key(|r| (r.extractor, r.rel.span.start()));
    records
}
