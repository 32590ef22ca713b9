use bfglm_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("invalid instance request: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ToolError {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        ToolError::Format { line, msg: msg.into() }
    }
}

pub type ToolResult<T> = std::result::Result<T, ToolError>;
