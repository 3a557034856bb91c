use std::path::PathBuf;

use bitrace_core::Error as CoreError;

pub type Result<T, E = AppError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("[{stage}] {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: CoreError,
    },

    #[error("internal: {0}")]
    Internal(String),
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        AppError::Format {
            path: path.into(),
            message: message.to_string(),
        }
    }

    /// Process exit status: 1 config, 2 input, 3 internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 1,
            AppError::Stage {
                source: CoreError::LsiRank { .. },
                ..
            } => 1,
            AppError::Io { .. } | AppError::Format { .. } | AppError::Stage { .. } => 2,
            AppError::Internal(_) => 3,
        }
    }
}

/// Tags a core error with the pipeline stage that raised it.
pub trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for bitrace_core::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|source| AppError::Stage { stage, source })
    }
}
