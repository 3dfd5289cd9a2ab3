use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Schema or value violation; `field` is the dotted path.
    #[error("{field}: {message}")]
    Config { field: String, message: String },
    #[error(transparent)]
    Core(#[from] qmfs_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config { field: field.into(), message: message.into() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "ConfigError",
            CliError::Core(e) => e.name(),
            CliError::Io(_) => "IoError",
            CliError::Csv(_) => "CsvError",
            CliError::Verification { .. } => "VerificationError",
        }
    }
}
