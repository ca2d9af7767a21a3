use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroInversion,
    #[error("dual number with zero real part is not invertible")]
    DualNotInvertible,
    #[error("modulus {0} is not a prime greater than 3")]
    BadModulus(u64),
    #[error("operands live in different polynomial rings")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable context: {0}")]
    BadContext(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("not a curve: Hilbert polynomial is {0}")]
    NotACurve(String),
    #[error("point lies outside the chart w != 0")]
    ChartMiss,
    #[error("case {0} has no extension presentation")]
    UnsupportedCase(String),
    #[error("point is not a singular point of the cubic")]
    NotSingularAtP,
    #[error("normalization needs data outside the base field: {0}")]
    IrrationalData(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parameter value {0} is excluded")]
    ExcludedParameter(String),
    #[error("alignment failure: {0}")]
    AlignmentFailure(String),
    #[error("not a plane cubic: {0}")]
    NotPlaneCubic(String),
    #[error("extension is not finite over the chart ring")]
    NotFinite,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
