//! Human-facing batch interface: parse systems from text, run decisions and
//! constructions, and emit deterministic reports.

mod commands;
mod input;
mod report;

pub use commands::{run_command, Command};
pub use input::{parse_document, parse_matrix, InputDocument};
pub use report::{BoundsEcho, Report};

use crate::ratsol::{DecisionError, RatSolError, DEFAULT_SEED};

/// Execution options echoed in reports.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            threads: 1,
        }
    }
}

/// Command-level errors, mapped to distinct nonzero exit codes.
#[derive(Clone, Debug, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{0}")]
    Input(String),
    #[error("degree bounds required: {0}")]
    NeedsUserBound(String),
    #[error("{0}")]
    Inconclusive(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    /// 2 = input/syntax, 3 = bounds required, 4 = inconclusive search,
    /// 5 = domain error. Exit code 0 means a witness or result was produced;
    /// 1 is the honest negative of a decision command.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } | CliError::Input(_) => 2,
            CliError::NeedsUserBound(_) => 3,
            CliError::Inconclusive(_) => 4,
            CliError::Domain(_) => 5,
        }
    }
}

impl From<RatSolError> for CliError {
    fn from(e: RatSolError) -> Self {
        if e.needs_user_bound() {
            CliError::NeedsUserBound(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<DecisionError> for CliError {
    fn from(e: DecisionError) -> Self {
        match e {
            DecisionError::RatSol(inner) => inner.into(),
            DecisionError::Inconclusive { .. } => CliError::Inconclusive(e.to_string()),
        }
    }
}
