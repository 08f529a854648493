use thiserror::Error;

/// Errors raised by the polynomial, bound, and decision routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("constant term is zero; strip zero roots first")]
    ZeroConstantTerm,
    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooSmall { required: usize, found: usize },
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("invalid interval: need 0 < a < b")]
    InvalidInterval,
    #[error("interval endpoint is a root")]
    EndpointIsRoot,
    #[error("width target must be positive")]
    NonPositiveWidth,
    #[error("polynomial must be primitive")]
    NotPrimitive,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("a root modulus fell inside a separation annulus; the separation bound does not hold for {0}")]
    SeparationViolated(String),
    #[error("census needs {estimated} polynomial evaluations, above the cap of {cap}; pass the override flag")]
    ResourceCap { estimated: u128, cap: u128 },
    #[error("invalid census parameters: {0}")]
    InvalidCensus(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("numeric oracle: {0}")]
    OracleEscalation(String),
}

/// Reasons a polynomial text fails to parse. Each kind has its own message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("token {index} ({token:?}) is not an integer")]
    InvalidToken { index: usize, token: String },
}
