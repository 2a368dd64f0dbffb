use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dual quaternion does not have a real norm")]
    NotADisplacement,
    #[error("primal part is zero")]
    ZeroPrimal,
    #[error("dual quaternion is not a rotation")]
    NotARotation,
    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeader,
    #[error("remainder has a non-invertible leading coefficient; the generic factorization step does not apply")]
    NonGeneric,
    #[error("quadratic is not an irreducible divisor of the norm polynomial")]
    NotADivisor,
    #[error("vertical Darboux excluded: parameter a must be nonzero")]
    DegenerateParams,
    #[error("singular parameter choice: {0}")]
    SingularChoice(&'static str),
    #[error("chains do not parameterize the same motion")]
    ClosureFailure,
    #[error("factor {index} of chain {chain} does not have a rotation root")]
    NotRotational { chain: char, index: usize },
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("nonzero remainder in a division that must be exact")]
    InexactDivision,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
