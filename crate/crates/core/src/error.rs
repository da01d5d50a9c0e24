use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not an eigenvalue")]
    NotEigenvalue(String),
    #[error("hensel factorization precondition failed: {0}")]
    Hensel(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureOverflow { cap: usize },
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("element is not a unit: {0}")]
    NotUnit(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("no invertible solution over the given field; extend the field")]
    NoInvertibleSolution,
    #[error("polynomial does not split over the field")]
    NotSplit,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("integer coefficient overflow in symmetric reduction")]
    Overflow,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
