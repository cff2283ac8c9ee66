//! Subtree yields and noun phrase chunks over the dependency tree.

use alloc::vec::Vec;

use crate::deprel;
use crate::model::{PhraseSpan, SentenceGraph, Token, Upos};

/// All tokens reachable from `root` by child links, skipping any child whose
/// label (full, or its universal part) is listed in `exclusions`. Exclusions
/// apply at every level.
pub fn subtree_yield(graph: &SentenceGraph, root: usize, exclusions: &[&str]) -> PhraseSpan {
    let skip = |t: &Token| {
        exclusions
            .iter()
            .any(|e| *e == t.deprel || *e == t.base_deprel())
    };
    yield_where(graph, root, skip, skip)
}

/// Yield of `root` with one filter for its direct children and another for
/// everything below them.
pub(crate) fn yield_where<R, N>(
    graph: &SentenceGraph,
    root: usize,
    root_skip: R,
    nested_skip: N,
) -> PhraseSpan
where
    R: Fn(&Token) -> bool,
    N: Fn(&Token) -> bool,
{
    let mut tokens = Vec::new();
    tokens.push(root);
    let mut stack: Vec<usize> = graph
        .children(root)
        .iter()
        .copied()
        .filter(|&c| !root_skip(graph.token(c)))
        .collect();
    while let Some(i) = stack.pop() {
        tokens.push(i);
        stack.extend(
            graph
                .children(i)
                .iter()
                .copied()
                .filter(|&c| !nested_skip(graph.token(c))),
        );
    }
    tokens.sort_unstable();
    graph.span_with_head(tokens, root)
}

/// Indices of every token in the subtree rooted at `root`, unfiltered.
pub fn subtree_indices(graph: &SentenceGraph, root: usize) -> Vec<usize> {
    subtree_yield(graph, root, &[]).tokens().to_vec()
}

// Children a noun phrase never absorbs from its head: clauses, the head's own
// clause-level dependents when it is a predicate nominal, and adpositional
// modifiers.
const CHUNK_ROOT_SKIP: &[&str] = &[
    "acl",
    "ccomp",
    "xcomp",
    "advcl",
    "csubj",
    "nsubj",
    "cop",
    "case",
    "punct",
    "obl",
    "mark",
    "advmod",
    "aux",
    "parataxis",
    "expl",
    "obj",
    "iobj",
    "dep",
    "discourse",
    "vocative",
    "orphan",
    "reparandum",
    "list",
    "dislocated",
];

const CHUNK_NESTED_SKIP: &[&str] = &[
    "acl",
    "ccomp",
    "advcl",
    "parataxis",
    "csubj",
    "nsubj",
    "punct",
    "cop",
    "aux",
    "mark",
    "expl",
];

fn chunk_root_skip(head: &Token, child: &Token) -> bool {
    let base = child.base_deprel();
    if base == "nmod" {
        // Possessors stay; so do name-internal modifiers ("University of Toronto").
        let name_internal = head.upos == Upos::Propn && child.upos == Upos::Propn;
        return !(child.deprel == "nmod:poss" || name_internal);
    }
    CHUNK_ROOT_SKIP.contains(&base)
}

/// Noun phrase chunk headed by `head`, with the same boundaries
/// [`noun_phrase_chunks`] uses.
pub fn chunk_at(graph: &SentenceGraph, head: usize) -> PhraseSpan {
    let head_tok = graph.token(head);
    yield_where(
        graph,
        head,
        |c| chunk_root_skip(head_tok, c),
        |c| CHUNK_NESTED_SKIP.contains(&deprel::base(&c.deprel)),
    )
}

/// Non-overlapping noun phrases, one per outermost nominal head, sorted by
/// first token.
///
/// Heads are visited shallowest first so a nominal nested inside an already
/// emitted phrase ("Albert" under "Einstein") is suppressed.
pub fn noun_phrase_chunks(graph: &SentenceGraph) -> Vec<PhraseSpan> {
    let mut heads: Vec<usize> = graph
        .tokens()
        .iter()
        .filter(|t| t.upos.is_nominal())
        .map(|t| t.index)
        .collect();
    heads.sort_by_key(|&i| (graph.depth(i), i));

    let mut covered = alloc::vec![false; graph.len() + 1];
    let mut chunks = Vec::new();
    for head in heads {
        if covered[head] {
            continue;
        }
        let span = chunk_at(graph, head);
        if span.tokens().iter().any(|&i| covered[i]) {
            continue;
        }
        for &i in span.tokens() {
            covered[i] = true;
        }
        chunks.push(span);
    }
    chunks.sort_by_key(PhraseSpan::start);
    chunks
}
