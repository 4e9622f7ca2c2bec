use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArenaError {
    #[error("invalid parameters for {game}: {reason}")]
    InvalidParams { game: String, reason: String },

    #[error("strategy is for game `{found}` but `{expected}` was requested")]
    GameMismatch { expected: String, found: String },

    #[error("unknown game `{0}`")]
    UnknownGame(String),

    #[error("budget too small: {0}")]
    BudgetTooSmall(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, ArenaError>;
