//! Rule-based open information extraction over dependency-parsed sentences.
//!
//! Two extraction paradigms run over the same [`SentenceGraph`]:
//!
//! * [`verb_phrase`] matches relation phrases against a POS pattern grammar
//!   (`V | VP | VW*P`) and attaches the nearest noun phrases on either side.
//! * [`clause`] builds clauses from subject dependencies, classifies each into
//!   one of seven clause types and derives n-ary propositions from the type's
//!   patterns.
//!
//! [`context`] adds attribution and conditional annotations and a small
//! noun-mediated rule pack, [`eval`] scores extractions against gold tuples and
//! answers wildcard queries.
//!
//! The crate is `no_std` and only needs `alloc`. Reading CoNLL-U, writing
//! JSONL/TSV and the command line live in the companion `oie` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod clause;
pub mod context;
pub mod deprel;
pub mod eval;
pub mod extract;
pub mod model;
pub mod tree;
pub mod verb_phrase;

#[cfg(test)]
pub(crate) mod testutil;

pub use clause::{Clause, ClauseType, Proposition, VerbLists};
pub use context::ContextLexicons;
pub use extract::{extract_sentence, ExtractorSet, Options};
pub use model::{
    ArgSlot, Attribution, ClausalModifier, ExtractionRecord, ExtractorId, GraphError, PhraseSpan,
    Relation, SentenceGraph, Token, Upos,
};
pub use verb_phrase::{PatternLexicon, RelationPhraseSpan};
