use thiserror::Error;

pub type Result<T, E = DslError> = std::result::Result<T, E>;

/// 1-based line and column of a character in the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("unknown identifier `{name}` at {at}")]
    UnknownIdentifier { name: String, at: Location },
    #[error(transparent)]
    Eval(#[from] qrr_core::Error),
}

impl DslError {
    pub fn location(&self) -> Option<Location> {
        match self {
            DslError::Syntax { at, .. } | DslError::UnknownIdentifier { at, .. } => Some(*at),
            DslError::Eval(_) => None,
        }
    }
}
