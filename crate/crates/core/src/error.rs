use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSizeOutOfRange { k: usize, rows: usize, cols: usize },
    #[error("relation does not involve variable {0}")]
    RelationMissingVariable(String),
    #[error("relation is not monic in {0}: leading coefficient depends on other variables")]
    NotMonic(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty input")]
    EmptyInput,
    #[error("polynomials are not univariate in a common variable")]
    NotUnivariate,
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("coordinate {index} is not positive ({value})")]
    NonPositiveCoordinate { index: usize, value: String },
    #[error("monoid homomorphism is not integral")]
    NotIntegral,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid datum: {invariant}: {detail}")]
    InvalidDatum { invariant: &'static str, detail: String },
    #[error("orbit probe failed: {0}")]
    ProbeFailed(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}
