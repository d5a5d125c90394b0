//! CLI-level errors. Everything here maps to exit code 2 (usage); a verify
//! suite whose cells fail exits 1 without going through an error.

use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid rule: {0}")]
    Rule(String),
    #[error("{name}={value} exceeds the size guard {guard} (override with {env})", env = crate::config::SIZE_GUARD_ENV)]
    SizeGuard {
        name: String,
        value: u32,
        guard: u32,
    },
    #[error("invalid {env} override: {0}", env = crate::config::SIZE_GUARD_ENV)]
    GuardOverride(String),
    #[error("usage error: {0}")]
    Usage(String),
}
