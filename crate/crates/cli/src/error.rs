use std::path::PathBuf;

use minnaert::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid config value `{key}`: {reason}")]
    Validation { key: String, reason: String },

    #[error("{context}: {source}")]
    Solver { context: String, source: CoreError },

    #[error("I/O error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("table `{0}` has no rows")]
    EmptyTable(String),
}

impl CliError {
    pub fn from_validation(e: CoreError) -> Self {
        match e {
            CoreError::Argument { name, reason } => CliError::Validation { key: name.to_string(), reason },
            other => CliError::Validation { key: "config".into(), reason: other.to_string() },
        }
    }

    pub fn solver(context: impl Into<String>, source: CoreError) -> Self {
        CliError::Solver { context: context.into(), source }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 config error, 3 solver failure, 4 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::UnknownColumn(_) => 2,
            CliError::Solver { source, .. } => match source {
                CoreError::Argument { .. } | CoreError::Overlap { .. } | CoreError::GuessDomain { .. } => 2,
                _ => 3,
            },
            CliError::Io { .. } | CliError::EmptyTable(_) => 4,
        }
    }
}
