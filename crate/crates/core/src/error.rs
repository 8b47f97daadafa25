use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by non-monomial scalar {0}")]
    NonMonomialDivisor(String),
    #[error("element is not in the augmentation ideal (counit {0})")]
    NotInKernel(String),
    #[error("not reducible at degree {0}")]
    NotReducible(usize),
    #[error("degree bound {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
