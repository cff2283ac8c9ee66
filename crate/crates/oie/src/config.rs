//! Lexicon and verb-list files.
//!
//! All are plain text, one entry per line; `#` starts a comment. The verb-list
//! file is split into `[copular]`, `[adverbial_requiring]` and
//! `[object_complement]` sections. A section present in the file replaces
//! the compiled-in list; absent ones keep their defaults.

use std::collections::BTreeSet;
use std::io::BufRead;
use std::path::{Path, PathBuf};

use oie_core::{PatternLexicon, VerbLists};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

fn entries<R: BufRead>(input: R) -> std::io::Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let entry = line.split('#').next().unwrap_or("").trim();
        if !entry.is_empty() {
            out.push((n + 1, entry.to_string()));
        }
    }
    Ok(out)
}

fn open(path: &Path) -> Result<std::io::BufReader<std::fs::File>, ConfigError> {
    std::fs::File::open(path)
        .map(std::io::BufReader::new)
        .map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ConfigError + '_ {
    move |source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Lower-cased word set.
pub fn parse_word_list<R: BufRead>(input: R) -> std::io::Result<BTreeSet<String>> {
    Ok(entries(input)?
        .into_iter()
        .map(|(_, e)| e.to_lowercase())
        .collect())
}

pub fn load_word_list(path: &Path) -> Result<BTreeSet<String>, ConfigError> {
    parse_word_list(open(path)?).map_err(io_err(path))
}

pub fn load_lexicon(path: &Path) -> Result<PatternLexicon, ConfigError> {
    let lines = entries(open(path)?).map_err(io_err(path))?;
    Ok(PatternLexicon::new(lines.into_iter().map(|(_, e)| e)))
}

pub fn parse_verb_lists<R: BufRead>(input: R, path: &Path) -> Result<VerbLists, ConfigError> {
    let mut lists = VerbLists::default();
    let mut current: Option<&mut BTreeSet<String>> = None;
    let mut replaced = BTreeSet::new();
    for (line, entry) in entries(input).map_err(io_err(path))? {
        if let Some(name) = entry.strip_prefix('[').and_then(|e| e.strip_suffix(']')) {
            let name = name.trim();
            let set = match name {
                "copular" => &mut lists.copular,
                "adverbial_requiring" => &mut lists.adverbial_requiring,
                "object_complement" => &mut lists.object_complement,
                other => {
                    return Err(ConfigError::Syntax {
                        path: path.to_path_buf(),
                        line,
                        message: format!("unknown section {other:?}"),
                    })
                }
            };
            if replaced.insert(name.to_string()) {
                set.clear();
            }
            current = Some(set);
            continue;
        }
        match current.as_deref_mut() {
            Some(set) => {
                set.insert(entry.to_lowercase());
            }
            None => {
                return Err(ConfigError::Syntax {
                    path: path.to_path_buf(),
                    line,
                    message: "entry before any section header".into(),
                })
            }
        }
    }
    Ok(lists)
}

pub fn load_verb_lists(path: &Path) -> Result<VerbLists, ConfigError> {
    parse_verb_lists(open(path)?, path)
}
