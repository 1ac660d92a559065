use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("matrix rows have inconsistent length: expected {expected}, found {found}")]
    RaggedRows { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polytope needs at least one point")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ray must be nonzero")]
    ZeroRay,
    #[error("cone is the zero cone")]
    TrivialCone,
    #[error("need at least {needed} polytopes, got {got}")]
    TooFewPolytopes { needed: usize, got: usize },
}

/// A syntax error in polynomial text; positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum SystemError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("system has no supports")]
    NoSupports,
    #[error("support {index} is empty")]
    EmptySupport { index: usize },
    #[error("support {support}: point of dimension {found}, expected {expected}")]
    PointDimension {
        support: usize,
        expected: usize,
        found: usize,
    },
    #[error("support file: {0}")]
    Format(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
