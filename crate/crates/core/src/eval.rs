//! Scoring against gold tuples, wildcard queries and error guards.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::deprel;
use crate::model::{Attribution, ClausalModifier, ExtractionRecord, SentenceGraph};

/// Plain-string view of an extraction, the unit of scoring and querying.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tuple {
    pub sentence_id: String,
    pub extractor: Option<String>,
    pub arg1: String,
    pub rel: String,
    pub arg2: Option<String>,
    pub extra_args: Vec<String>,
}

pub trait AsTuple {
    fn tuple(&self) -> Tuple;
}

impl AsTuple for Tuple {
    fn tuple(&self) -> Tuple {
        self.clone()
    }
}

impl AsTuple for ExtractionRecord {
    fn tuple(&self) -> Tuple {
        Tuple {
            sentence_id: self.sentence_id.clone(),
            extractor: Some(self.extractor.as_str().to_string()),
            arg1: self.arg1.text().to_string(),
            rel: self.rel.text(),
            arg2: self.arg2_text().map(ToString::to_string),
            extra_args: self.extra_arg_texts(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldRecord {
    pub sentence_id: String,
    pub arg1: String,
    pub rel: String,
    pub arg2: Option<String>,
    pub extra_args: Vec<String>,
    pub clause_type: Option<String>,
    pub attributed_to: Option<Attribution>,
    pub clausal_modifier: Option<ClausalModifier>,
}

impl AsTuple for GoldRecord {
    fn tuple(&self) -> Tuple {
        Tuple {
            sentence_id: self.sentence_id.clone(),
            extractor: None,
            arg1: self.arg1.clone(),
            rel: self.rel.clone(),
            arg2: self.arg2.clone(),
            extra_args: self.extra_args.clone(),
        }
    }
}

/// Case-folds and collapses whitespace.
pub fn normalize_text(s: &str) -> String {
    s.split_whitespace()
        .map(|w| w.to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

/// [`normalize_text`] plus removal of one leading article.
pub fn normalize_arg(s: &str) -> String {
    let n = normalize_text(s);
    for article in ["a ", "an ", "the "] {
        if let Some(rest) = n.strip_prefix(article) {
            return rest.to_string();
        }
    }
    n
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ExactKey {
    sentence_id: String,
    arg1: String,
    rel: String,
    arg2: Option<String>,
    extra_args: Vec<String>,
}

fn exact_key(t: &Tuple) -> ExactKey {
    let mut extra_args: Vec<String> = t.extra_args.iter().map(|a| normalize_arg(a)).collect();
    extra_args.sort();
    ExactKey {
        sentence_id: t.sentence_id.clone(),
        arg1: normalize_arg(&t.arg1),
        rel: normalize_text(&t.rel),
        arg2: t.arg2.as_deref().map(normalize_arg),
        extra_args,
    }
}

fn word_set(parts: &[&str]) -> Vec<String> {
    let mut words: Vec<String> = parts
        .iter()
        .flat_map(|p| {
            normalize_arg(p)
                .split(' ')
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        })
        .filter(|w| !w.is_empty())
        .collect();
    words.sort();
    words.dedup();
    words
}

/// Jaccard similarity of two word sets; 1.0 when both are empty.
pub fn jaccard(a: &[String], b: &[String]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.iter().filter(|w| b.binary_search(w).is_ok()).count();
    let union = a.len() + b.len() - inter;
    inter as f64 / union as f64
}

// Overlap score of a gold/predicted pair, or None when they cannot match.
fn overlap(gold: &Tuple, pred: &Tuple, threshold: f64) -> Option<f64> {
    if gold.sentence_id != pred.sentence_id
        || normalize_text(&gold.rel) != normalize_text(&pred.rel)
    {
        return None;
    }
    let a1 = jaccard(&word_set(&[&gold.arg1]), &word_set(&[&pred.arg1]));
    let tail = |t: &Tuple| {
        let mut parts: Vec<&str> = t.arg2.as_deref().into_iter().collect();
        parts.extend(t.extra_args.iter().map(String::as_str));
        word_set(&parts)
    };
    let a2 = jaccard(&tail(gold), &tail(pred));
    if a1 >= threshold && a2 >= threshold {
        Some((a1 + a2) / 2.0)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub matched: usize,
    pub gold: usize,
    pub predicted: usize,
}

impl Metrics {
    pub fn from_counts(matched: usize, gold: usize, predicted: usize) -> Self {
        let ratio = |n: usize, d: usize| if d == 0 { 0.0 } else { n as f64 / d as f64 };
        let precision = ratio(matched, predicted);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Metrics {
            precision,
            recall,
            f1,
            matched,
            gold,
            predicted,
        }
    }
}

impl fmt::Display for Metrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P={:.4} R={:.4} F1={:.4} ({}/{} gold, {} predicted)",
            self.precision, self.recall, self.f1, self.matched, self.gold, self.predicted
        )
    }
}

/// Counts of the error patterns the extractors are built to avoid.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GuardCounts {
    /// Matrix subject paired with a relation from an embedded clause.
    pub incoherent: usize,
    /// Light verb split from its noun ("claimed" + "responsibility").
    pub uninformative: usize,
    /// Existential "there" as first argument.
    pub existential: usize,
}

impl GuardCounts {
    pub fn total(&self) -> usize {
        self.incoherent + self.uninformative + self.existential
    }
}

impl core::ops::AddAssign for GuardCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.incoherent += rhs.incoherent;
        self.uninformative += rhs.uninformative;
        self.existential += rhs.existential;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub exact: Metrics,
    pub overlap: Metrics,
    pub overlap_threshold: f64,
    /// (exact, overlap) per extractor id.
    pub per_extractor: BTreeMap<String, (Metrics, Metrics)>,
    pub guards: GuardCounts,
}

// Greedy one-to-one assignment by descending pair score; ties go to the
// earliest gold, then earliest prediction.
fn greedy_matches(gold: usize, pred: usize, score: impl Fn(usize, usize) -> Option<f64>) -> usize {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for gi in 0..gold {
        for pi in 0..pred {
            if let Some(s) = score(gi, pi) {
                pairs.push((s, gi, pi));
            }
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut gold_used = alloc::vec![false; gold];
    let mut pred_used = alloc::vec![false; pred];
    let mut matched = 0;
    for (_, gi, pi) in pairs {
        if !gold_used[gi] && !pred_used[pi] {
            gold_used[gi] = true;
            pred_used[pi] = true;
            matched += 1;
        }
    }
    matched
}

fn metrics_pair(gold: &[Tuple], pred: &[Tuple], threshold: f64) -> (Metrics, Metrics) {
    let gold_keys: Vec<ExactKey> = gold.iter().map(exact_key).collect();
    let pred_keys: Vec<ExactKey> = pred.iter().map(exact_key).collect();
    let exact = greedy_matches(gold.len(), pred.len(), |g, p| {
        (gold_keys[g] == pred_keys[p]).then_some(1.0)
    });
    let over = greedy_matches(gold.len(), pred.len(), |g, p| {
        overlap(&gold[g], &pred[p], threshold)
    });
    (
        Metrics::from_counts(exact, gold.len(), pred.len()),
        Metrics::from_counts(over, gold.len(), pred.len()),
    )
}

/// Scores predictions against gold tuples at exact and token-overlap
/// granularity. `overlap_threshold` must lie in (0, 1].
pub fn score_tuples(gold: &[Tuple], predicted: &[Tuple], overlap_threshold: f64) -> EvalReport {
    let (exact, overlap) = metrics_pair(gold, predicted, overlap_threshold);
    let mut per_extractor = BTreeMap::new();
    let mut ids: Vec<&str> = predicted
        .iter()
        .filter_map(|p| p.extractor.as_deref())
        .collect();
    ids.sort_unstable();
    ids.dedup();
    for id in ids {
        let subset: Vec<Tuple> = predicted
            .iter()
            .filter(|p| p.extractor.as_deref() == Some(id))
            .cloned()
            .collect();
        per_extractor.insert(
            id.to_string(),
            metrics_pair(gold, &subset, overlap_threshold),
        );
    }
    EvalReport {
        exact,
        overlap,
        overlap_threshold,
        per_extractor,
        guards: GuardCounts::default(),
    }
}

pub fn score<G: AsTuple, P: AsTuple>(
    gold: &[G],
    predicted: &[P],
    overlap_threshold: f64,
) -> EvalReport {
    let gold: Vec<Tuple> = gold.iter().map(AsTuple::tuple).collect();
    let pred: Vec<Tuple> = predicted.iter().map(AsTuple::tuple).collect();
    score_tuples(&gold, &pred, overlap_threshold)
}

/// A query triple; `None` is the `?` wildcard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub arg1: Option<String>,
    pub rel: Option<String>,
    pub arg2: Option<String>,
}

impl Template {
    /// Builds a template from slot strings, `?` standing for a wildcard.
    pub fn parse(arg1: &str, rel: &str, arg2: &str) -> Self {
        let slot = |s: &str| {
            let s = s.trim();
            (s != "?").then(|| s.to_string())
        };
        Template {
            arg1: slot(arg1),
            rel: slot(rel),
            arg2: slot(arg2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryError {
    AllWildcards,
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryError::AllWildcards => {
                f.write_str("query template needs at least one concrete slot")
            }
        }
    }
}

/// Records whose concrete slots equal the template's after normalization.
pub fn query<'a, T: AsTuple>(
    records: &'a [T],
    template: &Template,
) -> Result<Vec<&'a T>, QueryError> {
    if template.arg1.is_none() && template.rel.is_none() && template.arg2.is_none() {
        return Err(QueryError::AllWildcards);
    }
    let want_arg1 = template.arg1.as_deref().map(normalize_arg);
    let want_rel = template.rel.as_deref().map(normalize_text);
    let want_arg2 = template.arg2.as_deref().map(normalize_arg);
    Ok(records
        .iter()
        .filter(|r| {
            let t = r.tuple();
            want_arg1
                .as_ref()
                .is_none_or(|w| *w == normalize_arg(&t.arg1))
                && want_rel
                    .as_ref()
                    .is_none_or(|w| *w == normalize_text(&t.rel))
                && want_arg2
                    .as_ref()
                    .is_none_or(|w| t.arg2.as_deref().map(normalize_arg).as_ref() == Some(w))
        })
        .collect())
}

fn shallowest(graph: &SentenceGraph, tokens: &[usize]) -> Option<usize> {
    tokens
        .iter()
        .copied()
        .filter(|&i| i >= 1 && i <= graph.len())
        .min_by_key(|&i| (graph.depth(i), i))
}

/// Checks one extraction, given by token indices, for the guarded error
/// patterns.
pub fn guard_violations(
    graph: &SentenceGraph,
    arg1: &[usize],
    rel: &[usize],
    arg2: &[usize],
) -> GuardCounts {
    let mut counts = GuardCounts::default();
    let Some(subject) = shallowest(graph, arg1) else {
        return counts;
    };
    let s = graph.token(subject);
    if s.deprel == "expl" || s.surface.eq_ignore_ascii_case("there") {
        counts.existential += 1;
    }

    if let Some(r) = shallowest(graph, rel) {
        let matrix = s.head;
        if deprel::is_subject(&s.deprel) && matrix != 0 && r != matrix && graph.dominates(matrix, r)
        {
            let mut cur = r;
            while cur != matrix {
                let own_subject = graph
                    .children(cur)
                    .iter()
                    .any(|&c| c != subject && deprel::is_subject(&graph.token(c).deprel));
                if own_subject {
                    counts.incoherent += 1;
                    break;
                }
                cur = graph.token(cur).head;
            }
        }
    }

    if let Some(obj) = shallowest(graph, arg2) {
        let o = graph.token(obj);
        if o.deprel == "obj" && rel.contains(&o.head) {
            let truncated = graph.children_with_base(obj, "nmod").any(|n| {
                !arg2.contains(&n)
                    && graph
                        .children_with_base(n, "case")
                        .any(|c| !rel.contains(&c))
            });
            if truncated {
                counts.uninformative += 1;
            }
        }
    }
    counts
}

pub fn record_guards(graph: &SentenceGraph, record: &ExtractionRecord) -> GuardCounts {
    let arg2: &[usize] = record.arg2.as_ref().map_or(&[], |a| a.tokens());
    guard_violations(graph, record.arg1.tokens(), record.rel.span.tokens(), arg2)
}
