//! Fixture loading for unit tests. Reads the checked-in CoNLL-U gold parses
//! with a deliberately small parser so core tests do not depend on the
//! ingest crate.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::{SentenceGraph, Token};

pub const CLAUSE_TYPES: &str = include_str!("../../../fixtures/clause_types.conllu");
pub const VERB_PHRASE: &str = include_str!("../../../fixtures/verb_phrase.conllu");
pub const CONTEXT: &str = include_str!("../../../fixtures/context.conllu");
pub const GUARDS: &str = include_str!("../../../fixtures/guards.conllu");

pub fn parse(src: &str) -> Vec<SentenceGraph> {
    let mut out = Vec::new();
    for block in src.split("\n\n") {
        let mut id = String::new();
        let mut text = String::new();
        let mut tokens = Vec::new();
        for line in block.lines() {
            if let Some(v) = line.strip_prefix("# sent_id = ") {
                id = v.to_string();
            } else if let Some(v) = line.strip_prefix("# text = ") {
                text = v.to_string();
            } else if !line.trim().is_empty() {
                let f: Vec<&str> = line.split('\t').collect();
                tokens.push(Token::new(
                    f[0].parse().unwrap(),
                    f[1],
                    f[2],
                    f[3].parse().unwrap(),
                    f[6].parse().unwrap(),
                    f[7],
                ));
            }
        }
        if !tokens.is_empty() {
            out.push(SentenceGraph::new(id, text, tokens).unwrap());
        }
    }
    out
}

pub fn sentence(id: &str) -> SentenceGraph {
    [CLAUSE_TYPES, VERB_PHRASE, CONTEXT, GUARDS]
        .iter()
        .flat_map(|src| parse(src))
        .find(|g| g.sentence_id() == id)
        .unwrap_or_else(|| panic!("no fixture {id}"))
}

/// Token index of the first token with this surface form.
pub fn idx(g: &SentenceGraph, surface: &str) -> usize {
    g.tokens()
        .iter()
        .find(|t| t.surface == surface)
        .map(|t| t.index)
        .unwrap_or_else(|| panic!("no token {surface}"))
}
