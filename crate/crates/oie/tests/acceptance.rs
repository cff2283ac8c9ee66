//! Acceptance gate. One line per criterion; exits nonzero if any fails.
//!
//! Run with `cargo test -p oie --test acceptance`.

mod support;

use std::fs::File;
use std::io::BufReader;
use std::time::{Duration, Instant};

use oie::conllu::parse_conllu;
use oie::format::{read_gold, write_records, Format, WireRecord};
use oie_core::clause::{classify_clause, detect_clauses, generate_propositions};
use oie_core::eval::{
    normalize_arg, normalize_text, query, record_guards, score, GoldRecord, Template,
};
use oie_core::tree::{noun_phrase_chunks, subtree_yield};
use oie_core::verb_phrase::match_relation_phrases;
use oie_core::{
    extract_sentence, ClauseType, ExtractionRecord, ExtractorId, ExtractorSet, Options,
    SentenceGraph, VerbLists,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{accepts, expected_arities, fixture, random_sentence, reachable};

const SYNTHETIC: usize = 2000;
const SEED: u64 = 0x0E1E_2024;

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(&mut self, name: &str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed += 1;
        }
    }
}

fn corpus(name: &str) -> Vec<SentenceGraph> {
    let file = File::open(fixture(name)).expect("fixture present");
    let c = parse_conllu(BufReader::new(file), name).expect("fixture parses");
    assert!(c.errors.is_empty(), "{name}: {:?}", c.errors);
    c.sentences
}

fn gold(name: &str) -> Vec<GoldRecord> {
    read_gold(BufReader::new(File::open(fixture(name)).unwrap())).expect("gold parses")
}

fn run(sentences: &[SentenceGraph], options: &Options) -> Vec<ExtractionRecord> {
    sentences
        .iter()
        .flat_map(|g| extract_sentence(g, options))
        .collect()
}

fn only(verb: bool, clause: bool, noun: bool) -> Options {
    Options {
        extractors: ExtractorSet { verb, clause, noun },
        ..Options::default()
    }
}

fn tuple_key(sid: &str, a1: &str, rel: &str, a2: Option<&str>, extras: &[String]) -> String {
    let mut extras: Vec<String> = extras.iter().map(|e| normalize_arg(e)).collect();
    extras.sort();
    format!(
        "{sid}|{}|{}|{}|{}",
        normalize_arg(a1),
        normalize_text(rel),
        a2.map(normalize_arg).unwrap_or_default(),
        extras.join(";")
    )
}

fn clause_types(gate: &mut Gate) {
    let start = Instant::now();
    let sentences = corpus("clause_types.conllu");
    let expected_types = [
        ("ct-sv", ClauseType::SV),
        ("ct-sva", ClauseType::SVA),
        ("ct-svc", ClauseType::SVC),
        ("ct-svo", ClauseType::SVO),
        ("ct-svoo", ClauseType::SVOO),
        ("ct-svoa", ClauseType::SVOA),
        ("ct-svoc", ClauseType::SVOC),
    ];
    let lists = VerbLists::default();
    let mut typed = 0;
    for (id, want) in expected_types {
        let g = sentences
            .iter()
            .find(|g| g.sentence_id() == id)
            .expect("sentence present");
        let types: Vec<ClauseType> = detect_clauses(g)
            .into_iter()
            .map(|mut c| classify_clause(&mut c, &lists))
            .collect();
        if types == [want] {
            typed += 1;
        } else {
            println!("  {id}: expected {want}, got {types:?}");
        }
    }

    let predicted = run(&sentences, &only(false, true, false));
    let gold = gold("clause_types.gold.jsonl");
    let report = score(&gold, &predicted, 0.75);
    let mut gold_keys: Vec<String> = gold
        .iter()
        .map(|g| {
            tuple_key(
                &g.sentence_id,
                &g.arg1,
                &g.rel,
                g.arg2.as_deref(),
                &g.extra_args,
            )
        })
        .collect();
    let mut pred_keys: Vec<String> = predicted
        .iter()
        .map(|r| {
            tuple_key(
                &r.sentence_id,
                r.arg1.text(),
                &r.rel.text(),
                r.arg2_text(),
                &r.extra_arg_texts(),
            )
        })
        .collect();
    gold_keys.sort();
    pred_keys.sort();
    for missing in gold_keys.iter().filter(|k| !pred_keys.contains(k)) {
        println!("  missing {missing}");
    }
    let elapsed = start.elapsed();

    gate.check(
        "clause_types.clause_types",
        typed == 7,
        format!("{typed}/7 clause types"),
    );
    gate.check(
        "clause_types.derived_clauses",
        report.exact.matched == 13
            && gold.len() == 13
            && gold_keys.iter().all(|k| pred_keys.contains(k)),
        format!(
            "{}/13 derived clauses, {}",
            report.exact.matched, report.exact
        ),
    );
    gate.check(
        "clause_types.runtime",
        elapsed < Duration::from_secs(1),
        format!("{:.1} ms (< 1000 ms)", elapsed.as_secs_f64() * 1e3),
    );
}

fn verb_phrase(gate: &mut Gate) {
    let start = Instant::now();
    let sentences = corpus("verb_phrase.conllu");
    let verb = run(&sentences, &only(true, false, false));
    let all = run(&sentences, &Options::default());
    let elapsed = start.elapsed();
    let expected = [
        (
            "vp-awarded",
            "Albert Einstein",
            "was awarded",
            "the Nobel Prize",
        ),
        (
            "vp-apple",
            "Apple Inc.",
            "is headquartered in",
            "California",
        ),
        (
            "vp-alqaeda",
            "Al-Qaeda",
            "claimed responsibility for",
            "the 9/11 attacks",
        ),
    ];
    for (sid, a1, rel, a2) in expected {
        let hit = verb.iter().any(|r| {
            r.sentence_id == sid
                && r.arg1.text() == a1
                && r.rel.text() == rel
                && r.arg2_text() == Some(a2)
        });
        gate.check(
            &format!("verb_phrase.{sid}"),
            hit,
            format!(
                "({a1}, {rel}, {a2}) {}",
                if hit { "emitted" } else { "missing" }
            ),
        );
    }
    let uninformative = all
        .iter()
        .filter(|r| r.rel.text() == "claimed" && r.arg2_text() == Some("responsibility"))
        .count();
    gate.check(
        "verb_phrase.no_uninformative",
        uninformative == 0,
        format!("{uninformative} records (claimed, responsibility) across all extractors"),
    );
    gate.check(
        "verb_phrase.runtime",
        elapsed < Duration::from_secs(1),
        format!("{:.1} ms (< 1000 ms)", elapsed.as_secs_f64() * 1e3),
    );
}

fn context(gate: &mut Gate) {
    let sentences = corpus("context.conllu");
    let recs = run(&sentences, &Options::default());

    let gates = recs.iter().any(|r| {
        r.sentence_id == "cx-cofounder"
            && r.extractor == ExtractorId::NounRule
            && r.arg1.text() == "Bill Gates"
            && r.rel.text() == "be co-founder of"
            && r.arg2_text() == Some("Microsoft")
    });
    gate.check(
        "context.noun_rule",
        gates,
        "(Bill Gates, be co-founder of, Microsoft)".into(),
    );

    let attributed: Vec<_> = recs
        .iter()
        .filter(|r| r.sentence_id == "cx-astronomers" && r.arg1.text() == "the earth")
        .collect();
    let ok = !attributed.is_empty()
        && attributed.iter().all(|r| {
            r.attributed_to
                .as_ref()
                .is_some_and(|a| a.verb == "believe" && a.subject == "Early astronomers")
        });
    gate.check(
        "context.attributed_to",
        ok,
        format!(
            "{} records about \"the earth\" carry (believe; Early astronomers)",
            attributed.len()
        ),
    );

    let romney = recs.iter().find(|r| {
        r.sentence_id == "cx-romney"
            && r.arg1.text() == "Romney"
            && r.rel.text() == "will be elected"
            && r.arg2_text() == Some("President")
    });
    let m = romney.and_then(|r| r.clausal_modifier.as_ref());
    gate.check(
        "context.clausal_modifier",
        m.is_some_and(|m| m.marker == "if" && m.clause == "he wins five key states"),
        format!("{:?}", m.map(|m| (&m.marker, &m.clause))),
    );
}

fn guards(gate: &mut Gate) {
    let sentences = corpus("guards.conllu");
    let recs = run(&sentences, &Options::default());
    let incoherent = recs
        .iter()
        .filter(|r| r.arg1.text() == "Peter" && r.rel.text().contains("began"))
        .count();
    gate.check(
        "guards.incoherent",
        incoherent == 0,
        format!("{incoherent} records with arg1 Peter and rel containing \"began\""),
    );
    let there = recs
        .iter()
        .filter(|r| r.arg1.text().eq_ignore_ascii_case("there"))
        .count();
    gate.check(
        "guards.existential",
        there == 0,
        format!("{there} records with arg1 \"there\""),
    );

    let mut violations = 0;
    for name in [
        "clause_types.conllu",
        "verb_phrase.conllu",
        "context.conllu",
        "guards.conllu",
    ] {
        for g in corpus(name) {
            for r in extract_sentence(&g, &Options::default()) {
                violations += record_guards(&g, &r).total();
            }
        }
    }
    gate.check(
        "guards.counters",
        violations == 0,
        format!("{violations} guard violations over all fixture output"),
    );
}

fn properties(gate: &mut Gate) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sentences: Vec<SentenceGraph> = (0..SYNTHETIC)
        .map(|i| random_sentence(&mut rng, &format!("syn{i}"), 16))
        .collect();
    let lists = VerbLists::default();
    let options = Options::default();

    let (mut spans, mut sound, mut longest) = (0, 0, 0);
    let (mut clauses, mut total, mut arity) = (0, 0, 0);
    let (mut chunk_ok, mut yield_ok, mut anchored, mut existential) = (0, 0, true, 0);
    for g in &sentences {
        for phrase in match_relation_phrases(g) {
            spans += 1;
            let toks: Vec<_> = phrase.span.tokens().iter().map(|&i| g.token(i)).collect();
            if accepts(&toks) {
                sound += 1;
            }
            let next = phrase.span.end() + 1;
            let blocked = next > g.len() || g.token(next).upos == oie_core::Upos::Punct || {
                let mut longer = toks.clone();
                longer.push(g.token(next));
                !accepts(&longer)
            };
            if blocked {
                longest += 1;
            }
        }

        for mut clause in detect_clauses(g) {
            clauses += 1;
            let ty = classify_clause(&mut clause, &lists);
            if ClauseType::ALL.contains(&ty) && clause.clause_type == Some(ty) {
                total += 1;
            }
            let optional = clause.adverbials.iter().filter(|a| !a.obligatory).count();
            let props = generate_propositions(&clause);
            let mut got: Vec<usize> = props.iter().map(|p| p.args.len()).collect();
            got.sort_unstable();
            let lengths_agree = props.iter().all(|p| p.args.len() + 2 == p.pattern.len());
            if got == expected_arities(ty, optional) && lengths_agree {
                arity += 1;
            }
        }

        let chunks = noun_phrase_chunks(g);
        let mut used = std::collections::BTreeSet::new();
        if chunks
            .iter()
            .all(|c| c.tokens().iter().all(|&i| used.insert(i)))
        {
            chunk_ok += 1;
        }
        if g.tokens().iter().all(|t| {
            subtree_yield(g, t.index, &["ccomp"]).tokens() == reachable(g, t.index, &["ccomp"])
        }) {
            yield_ok += 1;
        }

        for r in extract_sentence(g, &options) {
            let head = g.token(r.arg1.head());
            if head.deprel == "expl" || head.surface.eq_ignore_ascii_case("there") {
                existential += 1;
            }
            if r.extractor == ExtractorId::VerbPhrase {
                let a2 = r.arg2.as_ref().expect("verb records are binary");
                anchored &= r.arg1.end() < r.rel.span.start() && r.rel.span.end() < a2.start();
            }
        }
    }

    // Byte-level determinism through the JSONL writer, in process and through
    // the multi-threaded pipeline.
    let render = |recs: &[ExtractionRecord]| {
        let mut out = Vec::new();
        write_records(&mut out, recs, Format::Jsonl).unwrap();
        out
    };
    let first: Vec<u8> = sentences
        .iter()
        .flat_map(|g| render(&extract_sentence(g, &options)))
        .collect();
    let second: Vec<u8> = sentences
        .iter()
        .flat_map(|g| render(&extract_sentence(g, &options)))
        .collect();
    let conllu: String = sentences.iter().map(oie::conllu::write_sentence).collect();
    let mut piped = Vec::new();
    oie::pipeline::run(conllu.as_bytes(), &options, 4, |recs| {
        write_records(&mut piped, recs, Format::Jsonl)
    })
    .unwrap();
    let elapsed = start.elapsed();

    let n = SYNTHETIC;
    gate.check(
        "properties.pattern_soundness",
        spans > 0 && sound == spans,
        format!("{sound}/{spans} spans accepted over {n} sentences"),
    );
    gate.check(
        "properties.longest_match",
        spans > 0 && longest == spans,
        format!("{longest}/{spans} spans not extendable"),
    );
    gate.check(
        "properties.clause_type_totality",
        clauses > 0 && total == clauses,
        format!("{total}/{clauses} clauses typed"),
    );
    gate.check(
        "properties.arity_law",
        clauses > 0 && arity == clauses,
        format!("{arity}/{clauses} clauses match the subset enumerator"),
    );
    gate.check(
        "properties.chunks_and_yields",
        chunk_ok == n && yield_ok == n,
        format!("{chunk_ok}/{n} disjoint chunkings, {yield_ok}/{n} yields equal BFS"),
    );
    gate.check(
        "properties.anchoring_and_existential",
        anchored && existential == 0,
        format!("anchored={anchored}, {existential} existential arg1"),
    );
    gate.check(
        "properties.determinism",
        !first.is_empty() && first == second && first == piped,
        format!(
            "{} bytes, repeat and 4-worker pipeline identical",
            first.len()
        ),
    );
    gate.check(
        "properties.runtime",
        elapsed < Duration::from_secs(30),
        format!("{:.2} s (< 30 s)", elapsed.as_secs_f64()),
    );
}

fn eval_consistency(gate: &mut Gate) {
    for name in [
        "clause_types.gold.jsonl",
        "verb_phrase.gold.jsonl",
        "context.gold.jsonl",
    ] {
        let g = gold(name);
        let r = score(&g, &g, 0.75);
        let perfect = [r.exact, r.overlap]
            .iter()
            .all(|m| m.precision == 1.0 && m.recall == 1.0 && m.f1 == 1.0);
        gate.check(
            &format!("eval.self_score.{name}"),
            perfect,
            format!("exact {}", r.exact),
        );
    }

    let records: Vec<WireRecord> = run(&corpus("clause_types.conllu"), &Options::default())
        .iter()
        .map(WireRecord::from)
        .collect();
    let died = query(&records, &Template::parse("?", "died in", "Princeton")).unwrap();
    gate.check(
        "eval.query.died_in_princeton",
        !died.is_empty() && died.iter().all(|r| r.arg1 == "Albert Einstein"),
        format!(
            "{} hits, arg1 {:?}",
            died.len(),
            died.first().map(|r| &r.arg1)
        ),
    );
    let einstein = query(&records, &Template::parse("Albert Einstein", "?", "?")).unwrap();
    let expected = records
        .iter()
        .filter(|r| r.arg1 == "Albert Einstein")
        .count();
    gate.check(
        "eval.query.arg1_wildcards",
        expected > 0 && einstein.len() == expected,
        format!(
            "{}/{expected} records with arg1 Albert Einstein",
            einstein.len()
        ),
    );
    let all = query(&records, &Template::parse("?", "?", "?"));
    gate.check(
        "eval.query.all_wildcards_rejected",
        all.is_err(),
        format!("{:?}", all.err()),
    );
}

fn main() {
    let mut gate = Gate { failed: 0 };
    clause_types(&mut gate);
    verb_phrase(&mut gate);
    context(&mut gate);
    guards(&mut gate);
    properties(&mut gate);
    eval_consistency(&mut gate);
    if gate.failed > 0 {
        println!("{} acceptance criteria failed", gate.failed);
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
