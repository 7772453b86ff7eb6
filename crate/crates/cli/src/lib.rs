//! Command-line front end for `markoff-core`: argument parsing, report
//! rendering and the prime sweep.

pub mod args;
pub mod commands;
pub mod sweep;
