//! Clause-based extraction.
//!
//! One clause is built per subject dependency. Each clause is classified into
//! one of seven types (SV, SVA, SVC, SVO, SVOO, SVOA, SVOC) by a fixed
//! decision tree that needs a little verb knowledge ([`VerbLists`]). The type
//! decides which constituents are obligatory; every optional adverbial then
//! spawns an extra proposition.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::deprel;
use crate::model::{
    ArgSlot, ExtractionRecord, ExtractorId, PhraseSpan, Relation, SentenceGraph, Token,
};
use crate::tree::yield_where;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseType {
    SV,
    SVA,
    SVC,
    SVO,
    SVOO,
    SVOA,
    SVOC,
}

impl ClauseType {
    pub const ALL: [ClauseType; 7] = [
        ClauseType::SV,
        ClauseType::SVA,
        ClauseType::SVC,
        ClauseType::SVO,
        ClauseType::SVOO,
        ClauseType::SVOA,
        ClauseType::SVOC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClauseType::SV => "SV",
            ClauseType::SVA => "SVA",
            ClauseType::SVC => "SVC",
            ClauseType::SVO => "SVO",
            ClauseType::SVOO => "SVOO",
            ClauseType::SVOA => "SVOA",
            ClauseType::SVOC => "SVOC",
        }
    }
}

impl fmt::Display for ClauseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClauseType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClauseType::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adverbial {
    pub span: PhraseSpan,
    /// Case marker(s) introducing the adverbial, lower-cased.
    pub prep: Option<String>,
    pub obligatory: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub subject: PhraseSpan,
    /// Main verb with auxiliaries, or the copula of a nominal predicate.
    pub verb_group: PhraseSpan,
    /// Governor of the subject dependency.
    pub governor: usize,
    /// Lemma used by the decision tree: the copula's for nominal predicates.
    pub verb_lemma: String,
    pub copular: bool,
    pub passive: bool,
    pub indirect_object: Option<PhraseSpan>,
    pub direct_object: Option<PhraseSpan>,
    pub complement: Option<PhraseSpan>,
    pub adverbials: Vec<Adverbial>,
    pub clause_type: Option<ClauseType>,
}

/// Verb knowledge for the decision tree. Sets may overlap; the tree fixes
/// which one is consulted first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerbLists {
    pub copular: BTreeSet<String>,
    pub adverbial_requiring: BTreeSet<String>,
    pub object_complement: BTreeSet<String>,
}

pub const DEFAULT_COPULAR: &[&str] = &[
    "be", "seem", "appear", "become", "remain", "stay", "look", "sound", "feel", "taste", "smell",
];
pub const DEFAULT_ADVERBIAL_REQUIRING: &[&str] = &[
    "be", "remain", "stay", "live", "reside", "put", "place", "show", "lead", "go", "come",
];
pub const DEFAULT_OBJECT_COMPLEMENT: &[&str] = &[
    "declare", "make", "name", "call", "consider", "elect", "appoint", "find",
];

fn lemma_set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

impl Default for VerbLists {
    fn default() -> Self {
        VerbLists {
            copular: lemma_set(DEFAULT_COPULAR),
            adverbial_requiring: lemma_set(DEFAULT_ADVERBIAL_REQUIRING),
            object_complement: lemma_set(DEFAULT_OBJECT_COMPLEMENT),
        }
    }
}

// Constituents drop punctuation and relative clauses; a relative clause gets
// its own clause from its own subject.
fn constituent_skip(t: &Token) -> bool {
    matches!(t.base_deprel(), "punct" | "parataxis") || t.deprel == "acl:relcl"
}

// Clause-level dependents of a nominal or adjectival predicate that are not
// part of its complement.
const PREDICATE_SKIP: &[&str] = &[
    "nsubj",
    "csubj",
    "cop",
    "aux",
    "mark",
    "punct",
    "obl",
    "advmod",
    "advcl",
    "ccomp",
    "parataxis",
    "expl",
    "discourse",
    "dislocated",
    "vocative",
    "case",
];

fn is_negation(t: &Token) -> bool {
    t.base_deprel() == "advmod"
        && matches!(t.lemma.to_lowercase().as_str(), "not" | "n't" | "never")
}

fn is_existential(t: &Token) -> bool {
    t.deprel == "expl" || t.surface.eq_ignore_ascii_case("there")
}

fn has_subject(graph: &SentenceGraph, index: usize) -> bool {
    graph
        .children(index)
        .iter()
        .any(|&c| deprel::is_subject(&graph.token(c).deprel))
}

fn constituent(graph: &SentenceGraph, head: usize) -> PhraseSpan {
    yield_where(graph, head, constituent_skip, constituent_skip)
}

fn prep_of(graph: &SentenceGraph, head: usize) -> Option<String> {
    let words: Vec<String> = graph
        .children_with_base(head, "case")
        .filter(|&c| c < head)
        .map(|c| graph.token(c).surface.to_lowercase())
        .collect();
    if words.is_empty() {
        None
    } else {
        Some(words.join(" "))
    }
}

fn adverbial_at(graph: &SentenceGraph, head: usize) -> Adverbial {
    let span = yield_where(
        graph,
        head,
        |t| t.base_deprel() == "case" || constituent_skip(t),
        constituent_skip,
    );
    Adverbial {
        span,
        prep: prep_of(graph, head),
        obligatory: false,
    }
}

fn build_clause(graph: &SentenceGraph, subject: usize, gov: usize) -> Clause {
    let g = graph.token(gov);
    let subject_span = constituent(graph, subject);
    let cop = graph.children_with_base(gov, "cop").next();
    let passive = graph.token(subject).deprel.ends_with(":pass")
        || graph.children_with(gov, "aux:pass").next().is_some();

    let mut verb_tokens: Vec<usize> = graph
        .children(gov)
        .iter()
        .copied()
        .filter(|&c| {
            let t = graph.token(c);
            t.base_deprel() == "aux"
                || is_negation(t)
                || (cop.is_none() && t.deprel == "compound:prt")
        })
        .collect();

    let mut direct_object = None;
    let mut indirect_object = None;
    let mut complement = None;
    let mut adverbials = Vec::new();
    let verb_lemma;

    if let Some(cop) = cop {
        verb_tokens.push(cop);
        verb_lemma = graph.token(cop).lemma.to_lowercase();
        if prep_of(graph, gov).is_some() {
            // "is in Princeton": a prepositional predicate is an adverbial.
            let span = yield_where(
                graph,
                gov,
                |t| PREDICATE_SKIP.contains(&t.base_deprel()) || clausal_conj(graph, t),
                constituent_skip,
            );
            adverbials.push(Adverbial {
                span,
                prep: prep_of(graph, gov),
                obligatory: false,
            });
        } else {
            complement = Some(yield_where(
                graph,
                gov,
                |t| PREDICATE_SKIP.contains(&t.base_deprel()) || clausal_conj(graph, t),
                constituent_skip,
            ));
        }
    } else {
        verb_tokens.push(gov);
        verb_lemma = g.lemma.to_lowercase();
        direct_object = graph
            .children_with(gov, "obj")
            .next()
            .map(|c| constituent(graph, c));
        indirect_object = graph
            .children_with(gov, "iobj")
            .next()
            .map(|c| constituent(graph, c));
        // a lone object is the direct one, whatever its label
        if direct_object.is_none() {
            direct_object = indirect_object.take();
        }
        complement = graph
            .children_with(gov, "xcomp")
            .next()
            .map(|c| constituent(graph, c));
    }

    for &c in graph.children(gov) {
        let t = graph.token(c);
        let is_adverbial =
            t.base_deprel() == "obl" || (t.base_deprel() == "advmod" && !is_negation(t));
        if is_adverbial {
            adverbials.push(adverbial_at(graph, c));
        }
    }
    adverbials.sort_by_key(|a| a.span.start());

    let verb_group = graph
        .span(verb_tokens)
        .unwrap_or_else(|| graph.span_with_head(alloc::vec![gov], gov));

    Clause {
        subject: subject_span,
        verb_group,
        governor: gov,
        verb_lemma,
        copular: cop.is_some(),
        passive,
        indirect_object,
        direct_object,
        complement,
        adverbials,
        clause_type: None,
    }
}

// A conjunct carrying its own subject is a separate clause, not part of a
// predicate's yield.
fn clausal_conj(graph: &SentenceGraph, t: &Token) -> bool {
    t.base_deprel() == "conj" && has_subject(graph, t.index)
}

/// One clause per subject dependency, in subject order. Existential "there"
/// never forms a clause, and a governor with two subjects keeps the first.
pub fn detect_clauses(graph: &SentenceGraph) -> Vec<Clause> {
    let mut governors = BTreeSet::new();
    let mut clauses = Vec::new();
    for t in graph.tokens() {
        if !deprel::is_subject(&t.deprel) || is_existential(t) || t.head == 0 {
            continue;
        }
        if !governors.insert(t.head) {
            continue;
        }
        clauses.push(build_clause(graph, t.index, t.head));
    }
    clauses
}

// Obligatory adverbial: the first one after the verb, else the first.
fn mark_obligatory(clause: &mut Clause) {
    let verb_start = clause.verb_group.start();
    let pick = clause
        .adverbials
        .iter()
        .position(|a| a.span.start() > verb_start)
        .unwrap_or(0);
    if let Some(a) = clause.adverbials.get_mut(pick) {
        a.obligatory = true;
    }
}

/// Assigns the clause type and marks obligatory adverbials; all others are
/// left optional.
pub fn classify_clause(clause: &mut Clause, lists: &VerbLists) -> ClauseType {
    for a in &mut clause.adverbials {
        a.obligatory = false;
    }
    let lemma = clause.verb_lemma.as_str();
    let has_adverbial = !clause.adverbials.is_empty();
    let ty = if clause.complement.is_some()
        && clause.direct_object.is_none()
        && (clause.copular
            || lists.copular.contains(lemma)
            || (clause.passive && lists.object_complement.contains(lemma)))
    {
        ClauseType::SVC
    } else if clause.indirect_object.is_some() {
        ClauseType::SVOO
    } else if clause.direct_object.is_some() {
        if clause.complement.is_some() && lists.object_complement.contains(lemma) {
            ClauseType::SVOC
        } else if lists.adverbial_requiring.contains(lemma) && has_adverbial {
            mark_obligatory(clause);
            ClauseType::SVOA
        } else {
            ClauseType::SVO
        }
    } else if lists.adverbial_requiring.contains(lemma) && has_adverbial {
        mark_obligatory(clause);
        ClauseType::SVA
    } else {
        ClauseType::SV
    };
    clause.clause_type = Some(ty);
    ty
}

/// An n-ary fact derived from one clause pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub subject: PhraseSpan,
    pub relation: Relation,
    pub args: Vec<ArgSlot>,
    /// Pattern label such as `SVA` or `SVAA`; its length minus two is the
    /// number of arguments.
    pub pattern: String,
    pub clause_type: ClauseType,
}

#[derive(Clone)]
struct Slot {
    span: PhraseSpan,
    prep: Option<String>,
}

fn base_slots(clause: &Clause, ty: ClauseType) -> Vec<Slot> {
    let bare = |s: &Option<PhraseSpan>| s.clone().map(|span| Slot { span, prep: None });
    let obligatory = || {
        clause
            .adverbials
            .iter()
            .find(|a| a.obligatory)
            .map(|a| Slot {
                span: a.span.clone(),
                prep: a.prep.clone(),
            })
    };
    let mut slots: Vec<Slot> = match ty {
        ClauseType::SV => Vec::new(),
        ClauseType::SVA => obligatory().into_iter().collect(),
        ClauseType::SVC => bare(&clause.complement).into_iter().collect(),
        ClauseType::SVO => bare(&clause.direct_object).into_iter().collect(),
        ClauseType::SVOO => bare(&clause.indirect_object)
            .into_iter()
            .chain(bare(&clause.direct_object))
            .collect(),
        ClauseType::SVOA => bare(&clause.direct_object)
            .into_iter()
            .chain(obligatory())
            .collect(),
        ClauseType::SVOC => bare(&clause.direct_object)
            .into_iter()
            .chain(bare(&clause.complement))
            .collect(),
    };
    slots.sort_by_key(|s| s.span.start());
    slots
}

fn proposition(
    clause: &Clause,
    ty: ClauseType,
    slots: Vec<Slot>,
    extra_letters: usize,
) -> Proposition {
    let absorbed = slots.first().and_then(|s| s.prep.clone());
    let args = slots
        .into_iter()
        .enumerate()
        .map(|(n, slot)| {
            if n == 0 {
                ArgSlot::bare(slot.span)
            } else {
                let bracketed = slot.prep.is_some() && slot.prep == absorbed;
                ArgSlot {
                    span: slot.span,
                    prep: slot.prep,
                    bracketed,
                }
            }
        })
        .collect();
    let mut pattern = String::from(ty.as_str());
    for _ in 0..extra_letters {
        pattern.push('A');
    }
    Proposition {
        subject: clause.subject.clone(),
        relation: Relation {
            span: clause.verb_group.clone(),
            lead: None,
            absorbed,
        },
        args,
        pattern,
        clause_type: ty,
    }
}

/// Propositions of a classified clause: the base pattern, one per optional
/// adverbial and, with two or more optional adverbials, one carrying all of
/// them.
///
/// The preposition of the first argument moves into the relation ("died in").
/// A later argument introduced by the same preposition renders it bracketed
/// ("[in] Princeton"). When the base pattern has no arguments, the
/// all-adverbials form puts the last adverbial first.
pub fn generate_propositions(clause: &Clause) -> Vec<Proposition> {
    let Some(ty) = clause.clause_type else {
        return Vec::new();
    };
    let base = base_slots(clause, ty);
    let optional: Vec<Slot> = clause
        .adverbials
        .iter()
        .filter(|a| !a.obligatory)
        .map(|a| Slot {
            span: a.span.clone(),
            prep: a.prep.clone(),
        })
        .collect();

    let mut out = alloc::vec![proposition(clause, ty, base.clone(), 0)];
    for o in &optional {
        let mut slots = base.clone();
        slots.push(o.clone());
        out.push(proposition(clause, ty, slots, 1));
    }
    if optional.len() >= 2 {
        let mut slots = base.clone();
        if base.is_empty() {
            let (last, rest) = optional.split_last().expect("two or more");
            slots.push(last.clone());
            slots.extend(rest.iter().cloned());
        } else {
            slots.extend(optional.iter().cloned());
        }
        out.push(proposition(clause, ty, slots, optional.len()));
    }
    out
}

/// Projects propositions to records: the first argument becomes arg2 and the
/// rest are carried as extra arguments.
pub fn link_triples(sentence_id: &str, propositions: &[Proposition]) -> Vec<ExtractionRecord> {
    propositions
        .iter()
        .map(|p| {
            let mut args = p.args.iter();
            let arg2 = args.next().map(|a| a.span.clone());
            let mut rec = ExtractionRecord::new(
                sentence_id.to_string(),
                ExtractorId::Clause,
                p.subject.clone(),
                p.relation.clone(),
                arg2,
            );
            rec.extra_args = args.cloned().collect();
            rec.clause_type = Some(p.clause_type);
            rec
        })
        .collect()
}

pub fn extract_clauses(graph: &SentenceGraph, lists: &VerbLists) -> Vec<ExtractionRecord> {
    let mut out = Vec::new();
    for mut clause in detect_clauses(graph) {
        classify_clause(&mut clause, lists);
        out.extend(link_triples(
            graph.sentence_id(),
            &generate_propositions(&clause),
        ));
    }
    out
}
