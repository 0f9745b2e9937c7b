//! File formats, report rendering and the command-line driver for
//! `fpfgroups-core`.

pub mod cli;
pub mod commands;
pub mod formats;
pub mod output;

pub use fpfgroups_core as core;
