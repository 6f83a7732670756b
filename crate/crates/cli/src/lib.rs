//! Command-line front end for the `alexpoly` library: input grammars,
//! subcommands and report rendering.

pub mod commands;
pub mod parse;
pub mod report;
