//! Sentence-parallel extraction with ordered output.
//!
//! A reader thread parses sentences and hands them to a worker pool; results
//! are put back in input order before reaching the sink. At most `window`
//! sentences are in flight, so memory does not grow with corpus size.

use std::collections::BTreeMap;
use std::io::{self, BufRead};

use crossbeam_channel::bounded;
use oie_core::{extract_sentence, ExtractionRecord, Options};

use crate::conllu::{IngestError, SentenceReader};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub sentences: usize,
    pub invalid: usize,
    pub records: usize,
}

impl Summary {
    /// Every sentence in a non-empty input was rejected.
    pub fn all_invalid(&self) -> bool {
        self.invalid > 0 && self.sentences == 0
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("write failed: {0}")]
    Output(#[source] io::Error),
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn sequential<R, F>(input: R, options: &Options, mut sink: F) -> Result<Summary, PipelineError>
where
    R: BufRead,
    F: FnMut(&[ExtractionRecord]) -> io::Result<()>,
{
    let mut summary = Summary::default();
    for item in SentenceReader::new(input) {
        match item {
            Ok(g) => {
                let recs = extract_sentence(&g, options);
                summary.sentences += 1;
                summary.records += recs.len();
                sink(&recs).map_err(PipelineError::Output)?;
            }
            Err(e) if e.is_fatal() => return Err(e.into()),
            Err(e) => {
                log::warn!("{e}");
                summary.invalid += 1;
            }
        }
    }
    Ok(summary)
}

/// Extracts every sentence of a CoNLL-U stream, calling `sink` once per
/// valid sentence in input order.
pub fn run<R, F>(
    input: R,
    options: &Options,
    workers: usize,
    mut sink: F,
) -> Result<Summary, PipelineError>
where
    R: BufRead + Send,
    F: FnMut(&[ExtractionRecord]) -> io::Result<()>,
{
    if workers <= 1 {
        return sequential(input, options, sink);
    }
    let window = workers * 4;
    std::thread::scope(|s| {
        let (job_tx, job_rx) = bounded(window);
        let (res_tx, res_rx) = bounded::<(usize, Vec<ExtractionRecord>)>(window);
        let (credit_tx, credit_rx) = bounded::<()>(window);
        for _ in 0..window {
            credit_tx.send(()).expect("credit channel open");
        }

        let producer = s.spawn(move || -> Result<usize, IngestError> {
            let mut invalid = 0;
            let mut seq = 0;
            for item in SentenceReader::new(input) {
                match item {
                    Ok(g) => {
                        if credit_rx.recv().is_err() || job_tx.send((seq, g)).is_err() {
                            break;
                        }
                        seq += 1;
                    }
                    Err(e) if e.is_fatal() => return Err(e),
                    Err(e) => {
                        log::warn!("{e}");
                        invalid += 1;
                    }
                }
            }
            Ok(invalid)
        });

        for _ in 0..workers {
            let job_rx = job_rx.clone();
            let res_tx = res_tx.clone();
            s.spawn(move || {
                for (seq, g) in job_rx {
                    if res_tx.send((seq, extract_sentence(&g, options))).is_err() {
                        break;
                    }
                }
            });
        }
        drop(job_rx);
        drop(res_tx);

        let mut summary = Summary::default();
        let mut pending = BTreeMap::new();
        let mut failure = None;
        'recv: for (seq, recs) in res_rx.iter() {
            pending.insert(seq, recs);
            while let Some(recs) = pending.remove(&summary.sentences) {
                if let Err(e) = sink(&recs) {
                    failure = Some(e);
                    break 'recv;
                }
                summary.sentences += 1;
                summary.records += recs.len();
                let _ = credit_tx.send(());
            }
        }
        drop(res_rx);
        drop(credit_tx);

        let ingest = producer.join().expect("reader thread panicked");
        if let Some(e) = failure {
            return Err(PipelineError::Output(e));
        }
        summary.invalid = ingest?;
        Ok(summary)
    })
}
