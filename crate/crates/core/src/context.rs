//! Context annotations and noun-mediated relations.
//!
//! Annotators only fill `attributed_to` and `clausal_modifier`; they never
//! add, drop, reorder or rewrite the arguments and relation of a record.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::{
    Attribution, ClausalModifier, ExtractionRecord, ExtractorId, PhraseSpan, Relation,
    SentenceGraph, Token,
};
use crate::tree::{chunk_at, subtree_indices, yield_where};
use crate::verb_phrase::is_ineligible_head;

pub const DEFAULT_ATTRIBUTION_VERBS: &[&str] = &[
    "believe", "say", "claim", "think", "state", "argue", "report", "suggest",
];
pub const DEFAULT_MARKERS: &[&str] = &["if", "unless", "when", "although", "while", "because"];
pub const DEFAULT_RELATIONAL_NOUNS: &[&str] = &[
    "founder",
    "co-founder",
    "president",
    "ceo",
    "author",
    "director",
    "capital",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextLexicons {
    pub attribution_verbs: BTreeSet<String>,
    pub markers: BTreeSet<String>,
    pub relational_nouns: BTreeSet<String>,
}

fn words(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|w| w.to_string()).collect()
}

impl Default for ContextLexicons {
    fn default() -> Self {
        ContextLexicons {
            attribution_verbs: words(DEFAULT_ATTRIBUTION_VERBS),
            markers: words(DEFAULT_MARKERS),
            relational_nouns: words(DEFAULT_RELATIONAL_NOUNS),
        }
    }
}

fn within(tokens: &[usize], region: &[usize]) -> bool {
    !tokens.is_empty() && tokens.iter().all(|t| region.binary_search(t).is_ok())
}

fn clause_text(graph: &SentenceGraph, head: usize, drop: impl Fn(&Token) -> bool) -> String {
    let punct = |t: &Token| t.base_deprel() == "punct";
    yield_where(graph, head, |t| punct(t) || drop(t), punct)
        .text()
        .to_string()
}

/// Marks records whose relation lies inside a clausal complement of an
/// attribution verb ("believed that ...") with the matrix subject and verb
/// lemma. The innermost complement wins.
pub fn annotate_attribution(
    graph: &SentenceGraph,
    mut records: Vec<ExtractionRecord>,
    verbs: &BTreeSet<String>,
) -> Vec<ExtractionRecord> {
    let mut complements: Vec<usize> = graph
        .tokens()
        .iter()
        .filter(|t| t.base_deprel() == "ccomp" && t.head != 0)
        .map(|t| t.index)
        .collect();
    complements.sort_by_key(|&c| core::cmp::Reverse(graph.depth(c)));

    for comp in complements {
        let matrix = graph.token(comp).head;
        let verb = graph.token(matrix).lemma.to_lowercase();
        if !verbs.contains(&verb) {
            continue;
        }
        let Some(subject) = graph
            .children(matrix)
            .iter()
            .copied()
            .find(|&c| crate::deprel::is_subject(&graph.token(c).deprel))
        else {
            continue;
        };
        let subject = clause_text(graph, subject, |t| t.deprel == "acl:relcl");
        let region = subtree_indices(graph, comp);
        for rec in records.iter_mut() {
            if rec.attributed_to.is_none() && within(rec.rel.span.tokens(), &region) {
                rec.attributed_to = Some(Attribution {
                    subject: subject.clone(),
                    verb: verb.clone(),
                });
            }
        }
    }
    records
}

/// Attaches a conditional adverbial clause ("If he wins ...") to the records
/// of the clause it modifies. Records from inside the adverbial clause are
/// left alone.
pub fn annotate_clausal_modifier(
    graph: &SentenceGraph,
    mut records: Vec<ExtractionRecord>,
    markers: &BTreeSet<String>,
) -> Vec<ExtractionRecord> {
    for t in graph.tokens() {
        if t.base_deprel() != "advcl" || t.head == 0 {
            continue;
        }
        let Some(mark) = graph
            .children_with_base(t.index, "mark")
            .map(|m| graph.token(m).surface.to_lowercase())
            .find(|m| markers.contains(m))
        else {
            continue;
        };
        let text = clause_text(graph, t.index, |c| c.base_deprel() == "mark");
        let inner = subtree_indices(graph, t.index);
        let outer = subtree_indices(graph, t.head);
        for rec in records.iter_mut() {
            let rel = rec.rel.span.tokens();
            let in_matrix =
                within(rel, &outer) && rel.iter().all(|i| inner.binary_search(i).is_err());
            if rec.clausal_modifier.is_none() && in_matrix {
                rec.clausal_modifier = Some(ClausalModifier {
                    marker: mark.clone(),
                    clause: text.clone(),
                });
            }
        }
    }
    records
}

fn without_subtree(graph: &SentenceGraph, span: &PhraseSpan, cut: usize) -> Option<PhraseSpan> {
    let removed = subtree_indices(graph, cut);
    graph.span(
        span.tokens()
            .iter()
            .copied()
            .filter(|i| removed.binary_search(i).is_err()),
    )
}

fn noun_record(
    graph: &SentenceGraph,
    holder: PhraseSpan,
    title: usize,
    of: PhraseSpan,
) -> ExtractionRecord {
    let rel = Relation {
        span: graph.span_with_head(alloc::vec![title], title),
        lead: Some("be".to_string()),
        absorbed: Some("of".to_string()),
    };
    ExtractionRecord::new(
        graph.sentence_id().to_string(),
        ExtractorId::NounRule,
        holder,
        rel,
        Some(of),
    )
}

/// Relations mediated by a relational noun:
///
/// * title compound: "Microsoft co-founder Bill Gates" gives
///   (Bill Gates, be co-founder of, Microsoft);
/// * apposition: "X, director of Y," gives (X, be director of, Y).
pub fn noun_mediated_rules(
    graph: &SentenceGraph,
    relational_nouns: &BTreeSet<String>,
) -> Vec<ExtractionRecord> {
    let mut out = Vec::new();
    for r in graph.tokens() {
        if !relational_nouns.contains(&r.lemma.to_lowercase()) || r.head == 0 {
            continue;
        }
        let holder = graph.token(r.head);
        if !holder.upos.is_nominal() || is_ineligible_head(graph, holder.index) {
            continue;
        }
        match r.base_deprel() {
            "compound" if r.index < holder.index => {
                let Some(org) = graph.children(r.index).iter().copied().find(|&c| {
                    let t = graph.token(c);
                    t.upos.is_nominal()
                        && (t.base_deprel() == "compound" || t.deprel == "nmod:poss")
                }) else {
                    continue;
                };
                if let Some(h) = without_subtree(graph, &chunk_at(graph, holder.index), r.index) {
                    out.push(noun_record(graph, h, r.index, chunk_at(graph, org)));
                }
            }
            "appos" => {
                let Some(org) = graph.children_with_base(r.index, "nmod").find(|&c| {
                    graph
                        .children_with_base(c, "case")
                        .any(|k| graph.token(k).surface.eq_ignore_ascii_case("of"))
                }) else {
                    continue;
                };
                if let Some(h) = without_subtree(graph, &chunk_at(graph, holder.index), r.index) {
                    out.push(noun_record(graph, h, r.index, chunk_at(graph, org)));
                }
            }
            _ => {}
        }
    }
    out
}
