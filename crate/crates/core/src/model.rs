//! Parsed sentences and the records extracted from them.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::clause::ClauseType;
use crate::deprel;

/// Universal POS categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Upos {
    Noun,
    Propn,
    Pron,
    Verb,
    Aux,
    Adj,
    Adv,
    Adp,
    Det,
    Part,
    Num,
    Cconj,
    Sconj,
    Punct,
    Sym,
    Intj,
    X,
}

impl Upos {
    pub const ALL: [Upos; 17] = [
        Upos::Noun,
        Upos::Propn,
        Upos::Pron,
        Upos::Verb,
        Upos::Aux,
        Upos::Adj,
        Upos::Adv,
        Upos::Adp,
        Upos::Det,
        Upos::Part,
        Upos::Num,
        Upos::Cconj,
        Upos::Sconj,
        Upos::Punct,
        Upos::Sym,
        Upos::Intj,
        Upos::X,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::Noun => "NOUN",
            Upos::Propn => "PROPN",
            Upos::Pron => "PRON",
            Upos::Verb => "VERB",
            Upos::Aux => "AUX",
            Upos::Adj => "ADJ",
            Upos::Adv => "ADV",
            Upos::Adp => "ADP",
            Upos::Det => "DET",
            Upos::Part => "PART",
            Upos::Num => "NUM",
            Upos::Cconj => "CCONJ",
            Upos::Sconj => "SCONJ",
            Upos::Punct => "PUNCT",
            Upos::Sym => "SYM",
            Upos::Intj => "INTJ",
            Upos::X => "X",
        }
    }

    /// Nouns, proper nouns and pronouns: the heads of noun phrase chunks.
    pub fn is_nominal(self) -> bool {
        matches!(self, Upos::Noun | Upos::Propn | Upos::Pron)
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, Upos::Verb | Upos::Aux)
    }
}

impl FromStr for Upos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Upos::ALL
            .iter()
            .copied()
            .find(|u| u.as_str() == s)
            .ok_or_else(|| s.to_string())
    }
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    /// 1-based position in the sentence.
    pub index: usize,
    pub surface: String,
    pub lemma: String,
    pub upos: Upos,
    /// Index of the governing token, 0 for the root.
    pub head: usize,
    pub deprel: String,
}

impl Token {
    pub fn new(
        index: usize,
        surface: impl Into<String>,
        lemma: impl Into<String>,
        upos: Upos,
        head: usize,
        deprel: impl Into<String>,
    ) -> Self {
        Token {
            index,
            surface: surface.into(),
            lemma: lemma.into(),
            upos,
            head,
            deprel: deprel.into(),
        }
    }

    /// Label before any `:` subtype, e.g. `nsubj` for `nsubj:pass`.
    pub fn base_deprel(&self) -> &str {
        deprel::base(&self.deprel)
    }
}

/// Reasons a token list does not form a dependency tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    IndexOutOfSequence { expected: usize, found: usize },
    SelfLoop { index: usize },
    HeadOutOfRange { index: usize, head: usize },
    NoRoot,
    MultipleRoots { roots: Vec<usize> },
    Cycle { index: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::IndexOutOfSequence { expected, found } => {
                write!(
                    f,
                    "token index {found} out of sequence, expected {expected}"
                )
            }
            GraphError::SelfLoop { index } => write!(f, "token {index} is its own head"),
            GraphError::HeadOutOfRange { index, head } => {
                write!(f, "token {index} has head {head} outside the sentence")
            }
            GraphError::NoRoot => f.write_str("no token attaches to the root"),
            GraphError::MultipleRoots { roots } => write!(f, "multiple roots: {roots:?}"),
            GraphError::Cycle { index } => {
                write!(f, "head links through token {index} form a cycle")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// One dependency-parsed sentence.
///
/// Construction validates the tree: indices run 1..=n, exactly one token
/// attaches to 0 and following heads from any token reaches it. A sentence
/// with no tokens is accepted and yields no extractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceGraph {
    sentence_id: String,
    text: String,
    tokens: Vec<Token>,
    // children[i] lists dependents of token i (0 = virtual root), ascending.
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

impl SentenceGraph {
    pub fn new(
        sentence_id: impl Into<String>,
        text: impl Into<String>,
        tokens: Vec<Token>,
    ) -> Result<Self, GraphError> {
        let n = tokens.len();
        for (pos, tok) in tokens.iter().enumerate() {
            if tok.index != pos + 1 {
                return Err(GraphError::IndexOutOfSequence {
                    expected: pos + 1,
                    found: tok.index,
                });
            }
            if tok.head == tok.index {
                return Err(GraphError::SelfLoop { index: tok.index });
            }
            if tok.head > n {
                return Err(GraphError::HeadOutOfRange {
                    index: tok.index,
                    head: tok.head,
                });
            }
        }
        if n > 0 {
            let roots: Vec<usize> = tokens
                .iter()
                .filter(|t| t.head == 0)
                .map(|t| t.index)
                .collect();
            match roots.len() {
                0 => return Err(GraphError::NoRoot),
                1 => {}
                _ => return Err(GraphError::MultipleRoots { roots }),
            }
        }

        let mut children = alloc::vec![Vec::new(); n + 1];
        for tok in &tokens {
            children[tok.head].push(tok.index);
        }

        // With a single root, a token that never reaches 0 within n steps
        // sits on a cycle.
        let mut depth = alloc::vec![0usize; n + 1];
        for tok in &tokens {
            let mut cur = tok.index;
            let mut steps = 0;
            while cur != 0 {
                cur = tokens[cur - 1].head;
                steps += 1;
                if steps > n {
                    return Err(GraphError::Cycle { index: tok.index });
                }
            }
            depth[tok.index] = steps;
        }

        Ok(SentenceGraph {
            sentence_id: sentence_id.into(),
            text: text.into(),
            tokens,
            children,
            depth,
        })
    }

    pub fn sentence_id(&self) -> &str {
        &self.sentence_id
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token at a 1-based index. Panics on 0 or out of range.
    pub fn token(&self, index: usize) -> &Token {
        &self.tokens[index - 1]
    }

    pub fn get(&self, index: usize) -> Option<&Token> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    /// Dependents of `index` in surface order; `children(0)` is the root.
    pub fn children(&self, index: usize) -> &[usize] {
        &self.children[index]
    }

    pub fn children_with<'a>(
        &'a self,
        index: usize,
        label: &'a str,
    ) -> impl Iterator<Item = usize> + 'a {
        self.children[index]
            .iter()
            .copied()
            .filter(move |&c| self.token(c).deprel == label)
    }

    pub fn children_with_base<'a>(
        &'a self,
        index: usize,
        base: &'a str,
    ) -> impl Iterator<Item = usize> + 'a {
        self.children[index]
            .iter()
            .copied()
            .filter(move |&c| self.token(c).base_deprel() == base)
    }

    pub fn root(&self) -> Option<usize> {
        self.children[0].first().copied()
    }

    /// Number of head links from `index` to the virtual root.
    pub fn depth(&self, index: usize) -> usize {
        self.depth[index]
    }

    /// True when `ancestor` lies on the head path of `index` (inclusive).
    pub fn dominates(&self, ancestor: usize, index: usize) -> bool {
        let mut cur = index;
        loop {
            if cur == ancestor {
                return true;
            }
            if cur == 0 {
                return false;
            }
            cur = self.token(cur).head;
        }
    }

    /// Builds a span over the given token indices. The head is the shallowest
    /// token, earliest on ties.
    pub fn span<I: IntoIterator<Item = usize>>(&self, indices: I) -> Option<PhraseSpan> {
        let mut tokens: Vec<usize> = indices
            .into_iter()
            .filter(|&i| i >= 1 && i <= self.len())
            .collect();
        tokens.sort_unstable();
        tokens.dedup();
        let head = *tokens.iter().min_by_key(|&&i| (self.depth(i), i))?;
        Some(self.span_with_head(tokens, head))
    }

    pub(crate) fn span_with_head(&self, tokens: Vec<usize>, head: usize) -> PhraseSpan {
        let mut text = String::new();
        for (n, &i) in tokens.iter().enumerate() {
            if n > 0 {
                text.push(' ');
            }
            text.push_str(&self.token(i).surface);
        }
        PhraseSpan { tokens, head, text }
    }
}

/// A set of tokens rendered in surface order.
///
/// Spans need not be contiguous; non-projective subtrees render with their
/// tokens joined by single spaces in index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhraseSpan {
    tokens: Vec<usize>,
    head: usize,
    text: String,
}

impl PhraseSpan {
    pub fn tokens(&self) -> &[usize] {
        &self.tokens
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn start(&self) -> usize {
        self.tokens[0]
    }

    pub fn end(&self) -> usize {
        self.tokens[self.tokens.len() - 1]
    }

    pub fn contains(&self, index: usize) -> bool {
        self.tokens.binary_search(&index).is_ok()
    }

    pub fn overlaps(&self, other: &PhraseSpan) -> bool {
        self.tokens.iter().any(|&i| other.contains(i))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtractorId {
    VerbPhrase,
    Clause,
    NounRule,
}

impl ExtractorId {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtractorId::VerbPhrase => "verb-phrase",
            ExtractorId::Clause => "clause",
            ExtractorId::NounRule => "noun-rule",
        }
    }
}

impl FromStr for ExtractorId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verb-phrase" => Ok(ExtractorId::VerbPhrase),
            "clause" => Ok(ExtractorId::Clause),
            "noun-rule" => Ok(ExtractorId::NounRule),
            other => Err(other.to_string()),
        }
    }
}

impl fmt::Display for ExtractorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relation phrase: a token span, optionally preceded by a normalized lead
/// word (`be` in noun-mediated relations) and followed by a preposition
/// absorbed from the first argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub span: PhraseSpan,
    pub lead: Option<String>,
    pub absorbed: Option<String>,
}

impl Relation {
    pub fn plain(span: PhraseSpan) -> Self {
        Relation {
            span,
            lead: None,
            absorbed: None,
        }
    }

    pub fn text(&self) -> String {
        join_words([
            self.lead.as_deref(),
            Some(self.span.text()),
            self.absorbed.as_deref(),
        ])
    }
}

/// An argument after the relation, with the preposition that introduced it.
///
/// A bracketed preposition (`[in] Princeton`) repeats the one already absorbed
/// into the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgSlot {
    pub span: PhraseSpan,
    pub prep: Option<String>,
    pub bracketed: bool,
}

impl ArgSlot {
    pub fn bare(span: PhraseSpan) -> Self {
        ArgSlot {
            span,
            prep: None,
            bracketed: false,
        }
    }

    pub fn text(&self) -> String {
        match (&self.prep, self.bracketed) {
            (Some(p), true) => alloc::format!("[{p}] {}", self.span.text()),
            (Some(p), false) => alloc::format!("{p} {}", self.span.text()),
            (None, _) => self.span.text().to_string(),
        }
    }
}

/// Who asserts an embedded claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attribution {
    pub subject: String,
    pub verb: String,
}

/// A condition under which the extracted fact holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClausalModifier {
    pub marker: String,
    pub clause: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionRecord {
    pub sentence_id: String,
    pub extractor: ExtractorId,
    pub arg1: PhraseSpan,
    pub rel: Relation,
    pub arg2: Option<PhraseSpan>,
    pub extra_args: Vec<ArgSlot>,
    pub clause_type: Option<ClauseType>,
    pub attributed_to: Option<Attribution>,
    pub clausal_modifier: Option<ClausalModifier>,
    /// Always 1.0; rule-based extraction carries no score.
    pub confidence: f64,
}

impl ExtractionRecord {
    pub fn new(
        sentence_id: impl Into<String>,
        extractor: ExtractorId,
        arg1: PhraseSpan,
        rel: Relation,
        arg2: Option<PhraseSpan>,
    ) -> Self {
        ExtractionRecord {
            sentence_id: sentence_id.into(),
            extractor,
            arg1,
            rel,
            arg2,
            extra_args: Vec::new(),
            clause_type: None,
            attributed_to: None,
            clausal_modifier: None,
            confidence: 1.0,
        }
    }

    pub fn arg2_text(&self) -> Option<&str> {
        self.arg2.as_ref().map(|s| s.text())
    }

    pub fn extra_arg_texts(&self) -> Vec<String> {
        self.extra_args.iter().map(ArgSlot::text).collect()
    }

    /// Key used to drop byte-identical duplicates within one extractor.
    pub fn dedup_key(&self) -> (ExtractorId, String, String, Option<String>, Vec<String>) {
        (
            self.extractor,
            self.arg1.text().to_string(),
            self.rel.text(),
            self.arg2_text().map(ToString::to_string),
            self.extra_arg_texts(),
        )
    }
}

pub(crate) fn join_words<'a, I: IntoIterator<Item = Option<&'a str>>>(parts: I) -> String {
    let mut out = String::new();
    for p in parts.into_iter().flatten() {
        if p.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(p);
    }
    out
}
