use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}: {message}")]
    Config { origin: String, message: String },

    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("malformed csv row {row}: {message}")]
    CsvRow { row: usize, message: String },

    #[error(transparent)]
    Model(#[from] fredkin_zeno::Error),
}

impl CliError {
    pub fn invalid(key: &str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            key: key.to_string(),
            message: message.into(),
        }
    }
}
