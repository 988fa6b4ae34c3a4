use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// A text format violation. `line` is 1-based; 0 means end of input.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid clique expression: {0}")]
    InvalidExpression(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

impl ModelError {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        ModelError::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
