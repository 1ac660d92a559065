use pretropism::{GeometryError, SystemError};
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PARSE: u8 = 3;
    pub const DIMENSION: u8 = 4;
    pub const IO: u8 = 5;
    pub const MISMATCH: u8 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("pruned and definitional ray sets differ")]
    Mismatch,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::System(e) => match e {
                SystemError::Parse(_) | SystemError::Format(_) => exit::PARSE,
                SystemError::PointDimension { .. } => exit::DIMENSION,
                SystemError::Io { .. } => exit::IO,
                SystemError::UnknownFamily(_) | SystemError::InvalidParameter(_) => exit::USAGE,
                SystemError::NoSupports | SystemError::EmptySupport { .. } => exit::PARSE,
            },
            CliError::Geometry(e) => match e {
                GeometryError::DimensionMismatch { .. } => exit::DIMENSION,
                GeometryError::TooFewPolytopes { .. } => exit::USAGE,
                _ => exit::FAILURE,
            },
            CliError::Io { .. } => exit::IO,
            CliError::Mismatch => exit::MISMATCH,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
