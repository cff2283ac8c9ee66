//! The `oie` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or input format error, 3
//! every input sentence failed validation.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oie_core::eval::{guard_violations, query, score, GuardCounts, Template};
use oie_core::{ExtractorSet, Options, SentenceGraph};

use crate::config::{self, ConfigError};
use crate::conllu::{parse_conllu, IngestError};
use crate::format::{self, Format, ReadError, WireRecord};
use crate::pipeline::{self, PipelineError};

#[derive(Debug, Parser)]
#[command(
    name = "oie",
    version,
    about = "Rule-based open information extraction over CoNLL-U parses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract relation records from a CoNLL-U corpus.
    Extract(ExtractArgs),
    /// Score predicted records against a gold file.
    Eval(EvalArgs),
    /// Select records matching an (arg1, rel, arg2) template; `?` is a wildcard.
    Query(QueryArgs),
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// CoNLL-U file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Comma-separated subset of verb, clause, noun.
    #[arg(long, default_value = "verb,clause,noun", value_parser = parse_extractors)]
    pub extractor: ExtractorSet,
    #[arg(long, default_value = "jsonl")]
    pub format: Format,
    /// Accepted normalized relation strings, one per line.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Verb lists with [copular], [adverbial_requiring], [object_complement] sections.
    #[arg(long)]
    pub verb_lists: Option<PathBuf>,
    #[arg(long)]
    pub attribution_verbs: Option<PathBuf>,
    #[arg(long)]
    pub markers: Option<PathBuf>,
    #[arg(long)]
    pub relational_nouns: Option<PathBuf>,
    /// Worker threads; defaults to the number of processors.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub gold: PathBuf,
    /// Records as written by `extract --format jsonl`.
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long, default_value_t = 0.75, value_parser = parse_threshold)]
    pub overlap: f64,
    /// Parses the predictions came from; enables guard counts.
    #[arg(long)]
    pub conllu: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub records: PathBuf,
    #[arg(long, default_value = "?")]
    pub arg1: String,
    #[arg(long, default_value = "?")]
    pub rel: String,
    #[arg(long, default_value = "?")]
    pub arg2: String,
    #[arg(long, default_value = "jsonl")]
    pub format: Format,
}

pub fn parse_extractors(s: &str) -> Result<ExtractorSet, String> {
    let mut set = ExtractorSet {
        verb: false,
        clause: false,
        noun: false,
    };
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "verb" | "verb-phrase" => set.verb = true,
            "clause" => set.clause = true,
            "noun" | "noun-rule" => set.noun = true,
            other => return Err(format!("unknown extractor {other:?}")),
        }
    }
    if set.is_empty() {
        return Err("no extractor selected".into());
    }
    Ok(set)
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if t > 0.0 && t <= 1.0 {
        Ok(t)
    } else {
        Err("threshold must lie in (0, 1]".into())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Ingest {
        path: String,
        #[source]
        source: IngestError,
    },
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: ReadError,
    },
    #[error("write failed: {0}")]
    Output(#[source] io::Error),
    #[error("all {0} sentences failed validation")]
    AllInvalid(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(ConfigError::Syntax { .. }) => 1,
            CliError::AllInvalid(_) => 3,
            _ => 2,
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
}

fn options(args: &ExtractArgs) -> Result<Options, CliError> {
    let mut opts = Options {
        extractors: args.extractor,
        ..Options::default()
    };
    if let Some(p) = &args.lexicon {
        opts.lexicon = config::load_lexicon(p)?;
    }
    if let Some(p) = &args.verb_lists {
        opts.verb_lists = config::load_verb_lists(p)?;
    }
    if let Some(p) = &args.attribution_verbs {
        opts.context.attribution_verbs = config::load_word_list(p)?;
    }
    if let Some(p) = &args.markers {
        opts.context.markers = config::load_word_list(p)?;
    }
    if let Some(p) = &args.relational_nouns {
        opts.context.relational_nouns = config::load_word_list(p)?;
    }
    Ok(opts)
}

pub fn extract<W: Write>(args: &ExtractArgs, out: &mut W) -> Result<pipeline::Summary, CliError> {
    let opts = options(args)?;
    let workers = args
        .workers
        .map_or_else(pipeline::default_workers, |w| w as usize);
    let input: Box<dyn BufRead + Send> = if args.input == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(open(Path::new(&args.input))?)
    };
    let summary = pipeline::run(input, &opts, workers, |recs| {
        format::write_records(out, recs, args.format)
    })
    .map_err(|e| match e {
        PipelineError::Ingest(source) => CliError::Ingest {
            path: args.input.clone(),
            source,
        },
        PipelineError::Output(e) => CliError::Output(e),
    })?;
    out.flush().map_err(CliError::Output)?;
    log::info!(
        "{} sentences, {} records, {} rejected",
        summary.sentences,
        summary.records,
        summary.invalid
    );
    if summary.all_invalid() {
        return Err(CliError::AllInvalid(summary.invalid));
    }
    Ok(summary)
}

fn read_records(path: &Path) -> Result<Vec<WireRecord>, CliError> {
    format::read_records(open(path)?).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn guards(path: &Path, records: &[WireRecord]) -> Result<GuardCounts, CliError> {
    let corpus = parse_conllu(open(path)?, path.display().to_string()).map_err(|source| {
        CliError::Ingest {
            path: path.display().to_string(),
            source,
        }
    })?;
    let by_id: HashMap<&str, &SentenceGraph> = corpus
        .sentences
        .iter()
        .map(|g| (g.sentence_id(), g))
        .collect();
    let mut total = GuardCounts::default();
    for r in records {
        match by_id.get(r.sentence_id.as_str()) {
            Some(g) => {
                let arg2 = r.spans.arg2.as_deref().unwrap_or(&[]);
                total += guard_violations(g, &r.spans.arg1, &r.spans.rel, arg2);
            }
            None => log::warn!("no parse for sentence {}", r.sentence_id),
        }
    }
    Ok(total)
}

pub fn eval<W: Write>(args: &EvalArgs, out: &mut W) -> Result<(), CliError> {
    let gold = format::read_gold(open(&args.gold)?).map_err(|source| CliError::Read {
        path: args.gold.display().to_string(),
        source,
    })?;
    let pred = read_records(&args.pred)?;
    let mut report = score(&gold, &pred, args.overlap);
    if let Some(p) = &args.conllu {
        report.guards = guards(p, &pred)?;
    }
    let mut text = format!(
        "exact        {}\noverlap@{:.2} {}\n",
        report.exact, report.overlap_threshold, report.overlap
    );
    for (id, (exact, overlap)) in &report.per_extractor {
        text.push_str(&format!(
            "{id:<12} exact {exact}\n{id:<12} overlap {overlap}\n"
        ));
    }
    if args.conllu.is_some() {
        let g = report.guards;
        text.push_str(&format!(
            "guards       incoherent={} uninformative={} existential={}\n",
            g.incoherent, g.uninformative, g.existential
        ));
    }
    out.write_all(text.as_bytes()).map_err(CliError::Output)
}

pub fn run_query<W: Write>(args: &QueryArgs, out: &mut W) -> Result<usize, CliError> {
    let template = Template::parse(&args.arg1, &args.rel, &args.arg2);
    // checked before reading so a bad template never touches the file
    if template.arg1.is_none() && template.rel.is_none() && template.arg2.is_none() {
        return Err(CliError::Usage(
            oie_core::eval::QueryError::AllWildcards.to_string(),
        ));
    }
    let records = read_records(&args.records)?;
    let hits = query(&records, &template).map_err(|e| CliError::Usage(e.to_string()))?;
    for r in &hits {
        format::write_wire(out, r, args.format).map_err(CliError::Output)?;
    }
    out.flush().map_err(CliError::Output)?;
    Ok(hits.len())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Extract(a) => extract(&a, &mut out).map(|_| ()),
        Command::Eval(a) => eval(&a, &mut out),
        Command::Query(a) => run_query(&a, &mut out).map(|_| ()),
    }
}

/// Entry point shared by the binary.
pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("OIE_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oie: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
