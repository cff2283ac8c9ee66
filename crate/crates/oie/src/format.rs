//! Record output (JSON Lines, TSV) and the JSONL readers used by `eval` and
//! `query`.

use std::io::{self, BufRead, Write};
use std::str::FromStr;

use oie_core::eval::{AsTuple, GoldRecord, Tuple};
use oie_core::{Attribution, ClausalModifier, ExtractionRecord};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Tsv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "tsv" => Ok(Format::Tsv),
            other => Err(format!("unknown format {other:?} (expected jsonl or tsv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireAttribution {
    pub subject: String,
    pub verb: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireModifier {
    pub marker: String,
    pub clause: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireSpans {
    pub arg1: Vec<usize>,
    pub rel: Vec<usize>,
    pub arg2: Option<Vec<usize>>,
    pub extra_args: Vec<Vec<usize>>,
}

/// One JSONL output line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WireRecord {
    pub sentence_id: String,
    pub extractor: String,
    pub arg1: String,
    pub rel: String,
    pub arg2: Option<String>,
    pub extra_args: Vec<String>,
    pub clause_type: Option<String>,
    pub attributed_to: Option<WireAttribution>,
    pub clausal_modifier: Option<WireModifier>,
    pub confidence: f64,
    #[serde(default)]
    pub spans: WireSpans,
}

impl From<&ExtractionRecord> for WireRecord {
    fn from(r: &ExtractionRecord) -> Self {
        WireRecord {
            sentence_id: r.sentence_id.clone(),
            extractor: r.extractor.as_str().to_string(),
            arg1: r.arg1.text().to_string(),
            rel: r.rel.text(),
            arg2: r.arg2_text().map(str::to_string),
            extra_args: r.extra_arg_texts(),
            clause_type: r.clause_type.map(|c| c.as_str().to_string()),
            attributed_to: r.attributed_to.as_ref().map(|a| WireAttribution {
                subject: a.subject.clone(),
                verb: a.verb.clone(),
            }),
            clausal_modifier: r.clausal_modifier.as_ref().map(|m| WireModifier {
                marker: m.marker.clone(),
                clause: m.clause.clone(),
            }),
            confidence: r.confidence,
            spans: WireSpans {
                arg1: r.arg1.tokens().to_vec(),
                rel: r.rel.span.tokens().to_vec(),
                arg2: r.arg2.as_ref().map(|s| s.tokens().to_vec()),
                extra_args: r
                    .extra_args
                    .iter()
                    .map(|a| a.span.tokens().to_vec())
                    .collect(),
            },
        }
    }
}

impl AsTuple for WireRecord {
    fn tuple(&self) -> Tuple {
        Tuple {
            sentence_id: self.sentence_id.clone(),
            extractor: Some(self.extractor.clone()),
            arg1: self.arg1.clone(),
            rel: self.rel.clone(),
            arg2: self.arg2.clone(),
            extra_args: self.extra_args.clone(),
        }
    }
}

/// Gold file line. Only sentence_id, arg1 and rel are required.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireGold {
    pub sentence_id: String,
    pub arg1: String,
    pub rel: String,
    #[serde(default)]
    pub arg2: Option<String>,
    #[serde(default)]
    pub extra_args: Vec<String>,
    #[serde(default)]
    pub clause_type: Option<String>,
    #[serde(default)]
    pub attributed_to: Option<WireAttribution>,
    #[serde(default)]
    pub clausal_modifier: Option<WireModifier>,
}

impl From<WireGold> for GoldRecord {
    fn from(g: WireGold) -> Self {
        GoldRecord {
            sentence_id: g.sentence_id,
            arg1: g.arg1,
            rel: g.rel,
            arg2: g.arg2,
            extra_args: g.extra_args,
            clause_type: g.clause_type,
            attributed_to: g.attributed_to.map(|a| Attribution {
                subject: a.subject,
                verb: a.verb,
            }),
            clausal_modifier: g.clausal_modifier.map(|m| ClausalModifier {
                marker: m.marker,
                clause: m.clause,
            }),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: arg1 and rel must be non-empty")]
    Empty { line: usize },
}

fn read_jsonl<T: for<'de> Deserialize<'de>, R: BufRead>(input: R) -> Result<Vec<T>, ReadError> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|source| ReadError::Json {
                line: n + 1,
                source,
            })?,
        );
    }
    Ok(out)
}

pub fn read_gold<R: BufRead>(input: R) -> Result<Vec<GoldRecord>, ReadError> {
    let raw: Vec<WireGold> = read_jsonl(input)?;
    raw.into_iter()
        .enumerate()
        .map(|(n, g)| {
            if g.arg1.trim().is_empty() || g.rel.trim().is_empty() {
                Err(ReadError::Empty { line: n + 1 })
            } else {
                Ok(g.into())
            }
        })
        .collect()
}

pub fn read_records<R: BufRead>(input: R) -> Result<Vec<WireRecord>, ReadError> {
    read_jsonl(input)
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// One TSV line, without the trailing newline.
pub fn tsv_line(r: &WireRecord) -> String {
    let fields = [
        r.sentence_id.clone(),
        r.extractor.clone(),
        r.arg1.clone(),
        r.rel.clone(),
        r.arg2.clone().unwrap_or_default(),
        r.extra_args.join(";"),
        r.clause_type.clone().unwrap_or_default(),
        r.attributed_to
            .as_ref()
            .map(|a| format!("{}; {}", a.verb, a.subject))
            .unwrap_or_default(),
        r.clausal_modifier
            .as_ref()
            .map(|m| format!("{}; {}", m.marker, m.clause))
            .unwrap_or_default(),
        format!("{:?}", r.confidence),
    ];
    fields
        .iter()
        .map(|f| tsv_field(f))
        .collect::<Vec<_>>()
        .join("\t")
}

pub fn write_wire<W: Write>(out: &mut W, record: &WireRecord, format: Format) -> io::Result<()> {
    match format {
        Format::Jsonl => {
            serde_json::to_writer(&mut *out, record)?;
            out.write_all(b"\n")
        }
        Format::Tsv => writeln!(out, "{}", tsv_line(record)),
    }
}

pub fn write_records<W: Write>(
    out: &mut W,
    records: &[ExtractionRecord],
    format: Format,
) -> io::Result<()> {
    for r in records {
        write_wire(out, &WireRecord::from(r), format)?;
    }
    Ok(())
}
