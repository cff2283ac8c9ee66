//! CoNLL-U reading and writing.
//!
//! Range lines ("3-4") and empty nodes ("5.1") are dropped. Column-level
//! damage stops the stream; a sentence that fails tree validation is
//! reported and skipped.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::BufRead;

use oie_core::{deprel, GraphError, SentenceGraph, Token, Upos};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: {column} is not an integer: {value:?}")]
    NotInteger {
        line: usize,
        column: &'static str,
        value: String,
    },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
    #[error("sentence {sentence_id} (line {line}): {reason}")]
    Invalid {
        sentence_id: String,
        line: usize,
        reason: Invalid,
    },
}

impl IngestError {
    /// Sentence-level errors leave the rest of the stream readable.
    pub fn is_fatal(&self) -> bool {
        !matches!(self, IngestError::Invalid { .. })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Invalid {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown UPOS {0:?} on token {1}")]
    Upos(String, usize),
    #[error("duplicate sent_id")]
    DuplicateId,
}

#[derive(Debug)]
pub struct Corpus {
    pub source: String,
    pub sentences: Vec<SentenceGraph>,
    pub errors: Vec<IngestError>,
}

#[derive(Default)]
struct Pending {
    first_line: usize,
    id: Option<String>,
    text: Option<String>,
    rows: Vec<(usize, Token)>,
    bad_upos: Option<(String, usize)>,
}

/// Streams sentences from a CoNLL-U source one at a time.
pub struct SentenceReader<R> {
    input: R,
    line_no: usize,
    ordinal: usize,
    seen: HashSet<String>,
    buf: String,
    done: bool,
}

impl<R: BufRead> SentenceReader<R> {
    pub fn new(input: R) -> Self {
        SentenceReader {
            input,
            line_no: 0,
            ordinal: 0,
            seen: HashSet::new(),
            buf: String::new(),
            done: false,
        }
    }

    fn finish(&mut self, p: Pending) -> Result<SentenceGraph, IngestError> {
        self.ordinal += 1;
        let sentence_id = p.id.unwrap_or_else(|| format!("s{}", self.ordinal));
        let invalid = |reason| IngestError::Invalid {
            sentence_id: sentence_id.clone(),
            line: p.first_line,
            reason,
        };
        if !self.seen.insert(sentence_id.clone()) {
            return Err(invalid(Invalid::DuplicateId));
        }
        if let Some((upos, idx)) = p.bad_upos {
            return Err(invalid(Invalid::Upos(upos, idx)));
        }
        let tokens: Vec<Token> = p.rows.into_iter().map(|(_, t)| t).collect();
        let text = p.text.unwrap_or_else(|| {
            tokens
                .iter()
                .map(|t| t.surface.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        });
        SentenceGraph::new(sentence_id.clone(), text, tokens).map_err(|e| invalid(e.into()))
    }

    fn token_line(&self, line: &str, p: &mut Pending) -> Result<(), IngestError> {
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(IngestError::ColumnCount {
                line: self.line_no,
                found: cols.len(),
            });
        }
        if cols[0].contains('-') || cols[0].contains('.') {
            return Ok(());
        }
        let int = |column, value: &str| {
            value.parse::<usize>().map_err(|_| IngestError::NotInteger {
                line: self.line_no,
                column,
                value: value.to_string(),
            })
        };
        let index = int("ID", cols[0])?;
        let head = int("HEAD", cols[6])?;
        let upos = cols[3].parse::<Upos>().unwrap_or_else(|_| {
            p.bad_upos.get_or_insert((cols[3].to_string(), index));
            Upos::X
        });
        let label = deprel::normalize(cols[7]);
        p.rows.push((
            self.line_no,
            Token::new(index, cols[1], cols[2], upos, head, label),
        ));
        Ok(())
    }
}

impl<R: BufRead> Iterator for SentenceReader<R> {
    type Item = Result<SentenceGraph, IngestError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut p = Pending::default();
        let mut started = false;
        loop {
            self.buf.clear();
            let read = match self.input.read_line(&mut self.buf) {
                Ok(n) => n,
                Err(source) => {
                    self.done = true;
                    return Some(Err(IngestError::Io {
                        line: self.line_no + 1,
                        source,
                    }));
                }
            };
            if read == 0 {
                self.done = true;
                return started.then(|| self.finish(p));
            }
            self.line_no += 1;
            let line = self.buf.trim_end_matches(['\n', '\r']).to_string();
            if line.trim().is_empty() {
                if started {
                    return Some(self.finish(p));
                }
                continue;
            }
            if !started {
                started = true;
                p.first_line = self.line_no;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.split_once('=') {
                    match key.trim() {
                        "sent_id" => p.id = Some(value.trim().to_string()),
                        "text" => p.text = Some(value.trim().to_string()),
                        _ => {}
                    }
                }
                continue;
            }
            if let Err(e) = self.token_line(&line, &mut p) {
                self.done = true;
                return Some(Err(e));
            }
        }
    }
}

/// Reads a whole corpus. Fatal errors abort; sentence-level ones are
/// collected in `errors`.
pub fn parse_conllu<R: BufRead>(
    input: R,
    source: impl Into<String>,
) -> Result<Corpus, IngestError> {
    let mut corpus = Corpus {
        source: source.into(),
        sentences: Vec::new(),
        errors: Vec::new(),
    };
    for item in SentenceReader::new(input) {
        match item {
            Ok(g) => corpus.sentences.push(g),
            Err(e) if e.is_fatal() => return Err(e),
            Err(e) => corpus.errors.push(e),
        }
    }
    Ok(corpus)
}

/// Renders a sentence back to CoNLL-U (unused columns as `_`).
pub fn write_sentence(graph: &SentenceGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# sent_id = {}", graph.sentence_id());
    let _ = writeln!(out, "# text = {}", graph.text());
    for t in graph.tokens() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_",
            t.index, t.surface, t.lemma, t.upos, t.head, t.deprel
        );
    }
    out.push('\n');
    out
}
