//! Library half of the command-line tool: table rendering and the
//! per-subcommand builders. The binary in `main.rs` is a thin clap layer on
//! top of these.

pub mod commands;
pub mod table;
