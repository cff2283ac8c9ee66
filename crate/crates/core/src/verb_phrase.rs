//! Verb-mediated relation phrases.
//!
//! A relation phrase starts at a verb and is the longest token sequence
//! matching one of
//!
//! ```text
//! V | VP | VW*P
//! V = verb particle? adv?
//! W = noun | adj | adv | pron | det
//! P = prep | particle | inf. marker
//! ```
//!
//! Adjacent matches are merged, so "is" + "headquartered in" becomes the
//! single relation "is headquartered in". Arguments are the nearest noun
//! phrase chunks on each side of the relation.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::model::{
    ExtractionRecord, ExtractorId, PhraseSpan, Relation, SentenceGraph, Token, Upos,
};
use crate::tree::noun_phrase_chunks;

/// Which alternative of the pattern a matched segment used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alternative {
    V,
    VP,
    VWP,
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alternative::V => "V",
            Alternative::VP => "VP",
            Alternative::VWP => "VW*P",
        })
    }
}

/// Role a token plays inside a matched segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Verb,
    Particle,
    Adverb,
    W,
    P,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPhraseSpan {
    pub span: PhraseSpan,
    /// One entry per merged segment, left to right.
    pub alternatives: Vec<Alternative>,
    /// Role of each token in `span`, aligned with `span.tokens()`.
    pub roles: Vec<Role>,
    pub anchor_verb: usize,
}

pub fn is_verb(t: &Token) -> bool {
    t.upos.is_verbal()
}

/// Verb particle: `compound:prt` dependents and PART tokens. Verbs always
/// start a new segment, so they are never particles.
pub fn is_particle(t: &Token) -> bool {
    !is_verb(t) && (t.deprel == "compound:prt" || t.upos == Upos::Part)
}

pub fn is_w(t: &Token) -> bool {
    matches!(
        t.upos,
        Upos::Noun | Upos::Adj | Upos::Adv | Upos::Pron | Upos::Det
    )
}

/// Prepositions, particles and the infinitive marker "to".
pub fn is_p(t: &Token) -> bool {
    matches!(t.upos, Upos::Adp | Upos::Part) || is_particle(t)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Verb,
    Particle,
    Adverb,
    Ws,
    PDirect,
    PAfterW,
}

impl State {
    fn accepting(self) -> Option<Alternative> {
        match self {
            State::Verb | State::Particle | State::Adverb => Some(Alternative::V),
            State::PDirect => Some(Alternative::VP),
            State::PAfterW => Some(Alternative::VWP),
            State::Ws => None,
        }
    }

    // Successor states in preference order: the V-internal readings of a
    // particle or adverb come before the W/P readings.
    fn step(self, t: &Token) -> Vec<(State, Role)> {
        let mut next = Vec::new();
        let v_like = matches!(self, State::Verb | State::Particle | State::Adverb);
        if self == State::Verb && is_particle(t) {
            next.push((State::Particle, Role::Particle));
        }
        if matches!(self, State::Verb | State::Particle) && t.upos == Upos::Adv {
            next.push((State::Adverb, Role::Adverb));
        }
        if v_like && is_p(t) {
            next.push((State::PDirect, Role::P));
        }
        if (v_like || self == State::Ws) && is_w(t) {
            next.push((State::Ws, Role::W));
        }
        if self == State::Ws && is_p(t) {
            next.push((State::PAfterW, Role::P));
        }
        next
    }
}

// Longest single segment starting at the verb `start`: (end, alternative,
// roles). Simulates the pattern automaton over all readings at once.
fn longest_segment(graph: &SentenceGraph, start: usize) -> (usize, Alternative, Vec<Role>) {
    let mut frontier: Vec<(State, Vec<Role>)> = alloc::vec![(State::Verb, alloc::vec![Role::Verb])];
    let mut best = (start, Alternative::V, alloc::vec![Role::Verb]);
    let mut pos = start;
    while !frontier.is_empty() && pos < graph.len() {
        pos += 1;
        let tok = graph.token(pos);
        let mut next: Vec<(State, Vec<Role>)> = Vec::new();
        for (state, roles) in &frontier {
            for (s, role) in state.step(tok) {
                if next.iter().any(|(seen, _)| *seen == s) {
                    continue;
                }
                let mut r = roles.clone();
                r.push(role);
                next.push((s, r));
            }
        }
        // First accepting reading in preference order wins at this length.
        if let Some((s, roles)) = next.iter().find(|(s, _)| s.accepting().is_some()) {
            best = (pos, s.accepting().unwrap_or(Alternative::V), roles.clone());
        }
        frontier = next;
    }
    best
}

/// Relation phrases of a sentence, sorted by start.
pub fn match_relation_phrases(graph: &SentenceGraph) -> Vec<RelationPhraseSpan> {
    // (start, end, alternatives, roles)
    let mut merged: Vec<(usize, usize, Vec<Alternative>, Vec<Role>)> = Vec::new();
    let mut next_free = 1;
    for tok in graph.tokens() {
        if tok.index < next_free || !is_verb(tok) {
            continue;
        }
        let (end, alt, roles) = longest_segment(graph, tok.index);
        next_free = end + 1;
        match merged.last_mut() {
            Some(last) if last.1 + 1 == tok.index => {
                last.1 = end;
                last.2.push(alt);
                last.3.extend(roles);
            }
            _ => merged.push((tok.index, end, alloc::vec![alt], roles)),
        }
    }
    merged
        .into_iter()
        .filter_map(|(start, end, alternatives, roles)| {
            let span = graph.span(start..=end)?;
            Some(RelationPhraseSpan {
                span,
                alternatives,
                roles,
                anchor_verb: start,
            })
        })
        .collect()
}

/// Set of accepted normalized relation strings. Empty accepts everything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternLexicon {
    entries: BTreeSet<String>,
}

impl PatternLexicon {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        PatternLexicon {
            entries: entries
                .into_iter()
                .map(|e| normalize_entry(e.as_ref()))
                .filter(|e| !e.is_empty())
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, normalized: &str) -> bool {
        self.entries.contains(normalized)
    }
}

fn normalize_entry(s: &str) -> String {
    s.split_whitespace()
        .map(|w| w.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Lemmas of the verb-group tokens plus surface forms of P tokens,
/// lower-cased; W tokens are dropped. "was awarded" → "be award".
pub fn normalized_relation(graph: &SentenceGraph, phrase: &RelationPhraseSpan) -> String {
    phrase
        .span
        .tokens()
        .iter()
        .zip(&phrase.roles)
        .filter_map(|(&i, role)| {
            let t = graph.token(i);
            match role {
                Role::W => None,
                Role::P => Some(t.surface.to_lowercase()),
                _ => Some(t.lemma.to_lowercase()),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn apply_lexical_constraint(
    graph: &SentenceGraph,
    phrases: Vec<RelationPhraseSpan>,
    lexicon: &PatternLexicon,
) -> Vec<RelationPhraseSpan> {
    if lexicon.is_empty() {
        return phrases;
    }
    phrases
        .into_iter()
        .filter(|p| lexicon.contains(&normalized_relation(graph, p)))
        .collect()
}

const WH_WORDS: &[&str] = &[
    "who", "whom", "whose", "which", "what", "where", "when", "why", "how",
];

/// Heads that never stand as arguments: existential "there", wh-words and
/// relative pronouns.
pub fn is_ineligible_head(graph: &SentenceGraph, head: usize) -> bool {
    let t = graph.token(head);
    let lower = t.surface.to_lowercase();
    if t.deprel == "expl" || lower == "there" {
        return true;
    }
    if WH_WORDS.contains(&lower.as_str()) {
        return true;
    }
    // "that" introducing a relative clause
    lower == "that"
        && t.upos == Upos::Pron
        && graph.get(t.head).is_some_and(|h| h.deprel == "acl:relcl")
}

// Object of a preposition ("in today's meeting"): a case marker before the head.
fn is_prepositional(graph: &SentenceGraph, head: usize) -> bool {
    graph.children_with_base(head, "case").any(|c| c < head)
}

/// Nearest eligible chunk ending before the relation and nearest starting
/// after it.
pub fn find_arguments(
    graph: &SentenceGraph,
    rel: &RelationPhraseSpan,
) -> Option<(PhraseSpan, PhraseSpan)> {
    let chunks = noun_phrase_chunks(graph);
    let start = rel.span.start();
    let end = rel.span.end();
    let arg1 = chunks
        .iter()
        .filter(|c| c.end() < start)
        .filter(|c| !is_ineligible_head(graph, c.head()) && !is_prepositional(graph, c.head()))
        .max_by_key(|c| c.end())?;
    let arg2 = chunks
        .iter()
        .filter(|c| c.start() > end)
        .filter(|c| !is_ineligible_head(graph, c.head()))
        .min_by_key(|c| c.start())?;
    Some((arg1.clone(), arg2.clone()))
}

pub fn extract_verb_phrase(
    graph: &SentenceGraph,
    lexicon: &PatternLexicon,
) -> Vec<ExtractionRecord> {
    let phrases = apply_lexical_constraint(graph, match_relation_phrases(graph), lexicon);
    phrases
        .into_iter()
        .filter_map(|phrase| {
            let (arg1, arg2) = find_arguments(graph, &phrase)?;
            Some(ExtractionRecord::new(
                graph.sentence_id().to_string(),
                ExtractorId::VerbPhrase,
                arg1,
                Relation::plain(phrase.span),
                Some(arg2),
            ))
        })
        .collect()
}
