//! Synthetic sentences and independent oracles for the acceptance suite.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;

use oie_core::{ClauseType, SentenceGraph, Token, Upos};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

// Weighted so that verbs, nominals and adpositions dominate.
const UPOS: &[(Upos, u32)] = &[
    (Upos::Verb, 6),
    (Upos::Aux, 3),
    (Upos::Noun, 6),
    (Upos::Propn, 4),
    (Upos::Pron, 2),
    (Upos::Adp, 4),
    (Upos::Part, 2),
    (Upos::Adv, 2),
    (Upos::Adj, 2),
    (Upos::Det, 3),
    (Upos::Num, 1),
    (Upos::Punct, 1),
    (Upos::Sconj, 1),
    (Upos::Cconj, 1),
    (Upos::Intj, 1),
    (Upos::Sym, 1),
    (Upos::X, 1),
];

const LABELS: &[&str] = &[
    "nsubj",
    "nsubj",
    "nsubj:pass",
    "csubj",
    "obj",
    "obj",
    "iobj",
    "xcomp",
    "ccomp",
    "advcl",
    "advmod",
    "obl",
    "obl",
    "obl:tmod",
    "cop",
    "mark",
    "case",
    "case",
    "compound",
    "compound:prt",
    "appos",
    "amod",
    "det",
    "nmod",
    "nmod:poss",
    "aux",
    "aux:pass",
    "expl",
    "conj",
    "cc",
    "punct",
    "acl",
    "acl:relcl",
    "nummod",
    "flat",
];

const WORDS: &[&str] = &[
    "there",
    "that",
    "who",
    "which",
    "to",
    "not",
    "in",
    "of",
    "until",
    "be",
    "remain",
    "show",
    "declare",
    "believe",
    "give",
    "win",
    "if",
    "when",
    "Einstein",
    "prize",
    "meeting",
    "co-founder",
    "Microsoft",
    "the",
    "a",
    "quickly",
    "up",
    "open",
];

/// A random valid tree of 1..=max_len tokens: node k attaches to an earlier
/// node, then nodes are shuffled into surface order.
pub fn random_sentence<R: Rng>(rng: &mut R, id: &str, max_len: usize) -> SentenceGraph {
    let n = rng.gen_range(1..=max_len);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut tokens: Vec<Token> = Vec::with_capacity(n);
    for k in 0..n {
        let upos = UPOS.choose_weighted(rng, |u| u.1).unwrap().0;
        let word = *WORDS.choose(rng).unwrap();
        let (head, label) = if k == 0 {
            (0, "root")
        } else {
            (order[rng.gen_range(0..k)], *LABELS.choose(rng).unwrap())
        };
        tokens.push(Token::new(
            order[k],
            word,
            word.to_lowercase(),
            upos,
            head,
            label,
        ));
    }
    tokens.sort_by_key(|t| t.index);
    let text = tokens
        .iter()
        .map(|t| t.surface.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    SentenceGraph::new(id, text, tokens).expect("generator builds trees")
}

fn verbal(t: &Token) -> bool {
    matches!(t.upos, Upos::Verb | Upos::Aux)
}

fn particle(t: &Token) -> bool {
    !verbal(t) && (t.upos == Upos::Part || t.deprel == "compound:prt")
}

fn w(t: &Token) -> bool {
    matches!(
        t.upos,
        Upos::Noun | Upos::Adj | Upos::Adv | Upos::Pron | Upos::Det
    )
}

fn p(t: &Token) -> bool {
    matches!(t.upos, Upos::Adp | Upos::Part) || particle(t)
}

/// Deterministic automaton over token classes, run as a set of live states
/// so no backtracking is needed. Accepts one or more `V (W* P)?` segments
/// where `V = verb particle? adv?`.
pub fn accepts(seq: &[&Token]) -> bool {
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum S {
        Start,
        Verb,
        Prt,
        Adv,
        W,
        P,
    }
    let finals = |s: S| matches!(s, S::Verb | S::Prt | S::Adv | S::P);
    let mut live = BTreeSet::from([S::Start]);
    for t in seq {
        let mut next = BTreeSet::new();
        for &s in &live {
            // a new segment may begin wherever the previous one could end
            if (s == S::Start || finals(s)) && verbal(t) {
                next.insert(S::Verb);
            }
            if s == S::Verb && particle(t) {
                next.insert(S::Prt);
            }
            if matches!(s, S::Verb | S::Prt) && t.upos == Upos::Adv {
                next.insert(S::Adv);
            }
            if matches!(s, S::Verb | S::Prt | S::Adv | S::W) {
                if w(t) {
                    next.insert(S::W);
                }
                if p(t) {
                    next.insert(S::P);
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        live = next;
    }
    live.into_iter().any(finals)
}

pub fn reachable(g: &SentenceGraph, root: usize, skip: &[&str]) -> Vec<usize> {
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(c) = queue.pop_front() {
        for t in g.tokens() {
            let skipped = skip.iter().any(|s| *s == t.deprel || *s == t.base_deprel());
            if t.head == c && !skipped && seen.insert(t.index) {
                queue.push_back(t.index);
            }
        }
    }
    seen.into_iter().collect()
}

/// Non-subject slots of each clause type's base pattern.
pub fn base_arity(ty: ClauseType) -> usize {
    match ty {
        ClauseType::SV => 0,
        ClauseType::SVA | ClauseType::SVC | ClauseType::SVO => 1,
        ClauseType::SVOO | ClauseType::SVOA | ClauseType::SVOC => 2,
    }
}

/// Argument counts of every proposition a clause should yield, from brute
/// force over subsets of its optional adverbials: none, each single one, and
/// all of them when there are at least two.
pub fn expected_arities(ty: ClauseType, optional: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << optional) {
        let k = mask.count_ones() as usize;
        if k <= 1 || (k == optional && k >= 2) {
            out.push(base_arity(ty) + k);
        }
    }
    out.sort_unstable();
    out
}
