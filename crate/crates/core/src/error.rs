use thiserror::Error;

/// Failure to parse a scalar in the `a/b+c/d*i` syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar {0:?}")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("inadmissible Cartan type {0}")]
    InadmissibleType(String),
    #[error("cannot parse {what} {input:?}")]
    Parse { what: &'static str, input: String },
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error("Weyl group too large: more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
