//! File formats, reports and the command-line driver over `finrefl-core`.

pub mod cli;
pub mod format;
pub mod report;

pub use finrefl_core as core;
