use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at x = {0}")]
    PoleAtPoint(String),
    #[error("division by the zero operator")]
    DivisionByZeroOperator,
    #[error("the zero operator has no solution space")]
    ZeroOperator,
    #[error("operator has order zero")]
    OrderZero,
    #[error("right-hand side must be nonzero")]
    ZeroRhs,
    #[error("gauge matrix is singular")]
    SingularGauge,
    #[error("no cyclic vector found after {attempts} candidates")]
    CyclicSearchExhausted { attempts: usize },
    #[error("expansion point x = {0} is singular")]
    SingularExpansionPoint(String),
    #[error("unsupported place {0}: indicial data degenerates")]
    UnsupportedPlace(String),
    #[error("degree bound {needed} exceeds the configured cap {cap}")]
    BudgetExceeded { needed: usize, cap: usize },
    #[error("construction requires a homogeneous system")]
    NotHomogeneous,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0}")]
    OutOfScope(String),
    #[error("missing assumption: {0}")]
    MissingAssumption(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}
