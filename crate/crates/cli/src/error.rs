use crate::strategy_file::FormatError;
use po_arena::ArenaError;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },

    #[error(transparent)]
    Arena(#[from] ArenaError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Format { .. } => 3,
            CliError::Arena(ArenaError::BudgetTooSmall(_)) => 4,
            CliError::Arena(ArenaError::GameMismatch { .. }) => 5,
            CliError::Arena(_) => 2,
        }
    }
}
