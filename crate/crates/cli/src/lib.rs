//! Library surface of the `lamshift` command-line tool: the expression
//! parser, run configuration, and the subcommand implementations. The binary
//! in `main.rs` is a thin clap dispatcher over these.

pub mod commands;
pub mod config;
pub mod error;
pub mod parser;

pub use commands::{cmd_normalize, cmd_table, cmd_verify, Suite, SuiteOutcome, VerifyParams};
pub use config::{OutputFormat, RuleChoice, RunConfig};
pub use error::CliError;
pub use parser::{evaluate, parse_expression, render_ast, Ast, ParseError};
