use std::io;

use thiserror::Error;

use crate::formats::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Core(#[from] subsetfpt_core::Error),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code: 1 for infeasible instances, 3 for exhausted
    /// budgets, 2 for everything caused by bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(subsetfpt_core::Error::Infeasible) => 1,
            CliError::Core(subsetfpt_core::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}
