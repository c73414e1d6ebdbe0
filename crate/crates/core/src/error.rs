use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("configuration: {0}")]
    Config(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("algebra is infinite-dimensional: paths of length {0} survive the relations")]
    InfiniteDimensional(usize),
    #[error("dimension bound exceeded: {got} > {bound}")]
    DimensionBound { got: usize, bound: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("isomorphism test inconclusive: {0}")]
    Inconclusive(String),
    #[error("catalog incomplete: {0}")]
    CatalogIncomplete(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("not hereditary: {0}")]
    NotHereditary(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
