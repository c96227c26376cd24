//! Command-line front end: report format, constants cache and subcommands.

pub mod cache;
pub mod claims;
pub mod commands;
pub mod report;
