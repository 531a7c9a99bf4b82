use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undefined name `{name}`")]
    Undefined { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {msg}")]
    Arity { line: usize, col: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Core(#[from] gscheme_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 1 for usage and parse errors, 2 for computation and I/O errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. }
            | CliError::Undefined { .. }
            | CliError::Arity { .. }
            | CliError::Usage(_)
            | CliError::UnknownSuite(_) => 1,
            CliError::Core(_) | CliError::Io(_) | CliError::Json(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
