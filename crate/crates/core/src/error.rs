use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointIsRoot(String),

    #[error("Jensen quadrature did not stabilize: {0}")]
    QuadratureUnstable(String),

    #[error("search space of {size} candidates exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate quadratic form: {0}")]
    Degenerate(String),

    #[error("characteristic polynomial has non-integer coefficient {0}")]
    NonIntegerCharPoly(String),

    #[error("matrix is not an isometry of the form")]
    NotAnIsometry,

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures caused by caller-supplied input rather than resource limits.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::BudgetExceeded { .. })
    }
}
