//! File formats, pipeline and command line around `oie-core`.

pub mod cli;
pub mod config;
pub mod conllu;
pub mod format;
pub mod pipeline;

pub use oie_core;
