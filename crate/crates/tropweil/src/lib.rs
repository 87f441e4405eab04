//! File formats, JSON reports and the `tropweil` command line on top of
//! `tropweil-core`.

pub mod cli;
pub mod commands;
pub mod formats;
pub mod matrix_text;
pub mod report;
pub mod tables;
