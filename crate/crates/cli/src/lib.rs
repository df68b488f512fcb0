//! Command-line front end: knot parsing, the subcommand registry and the
//! output emitters.

pub mod app;
pub mod commands;
pub mod document;
pub mod emit;
pub mod parse;
