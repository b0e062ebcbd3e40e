use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("initial form of zero is undefined")]
    ZeroInitialForm,

    #[error("residue requires valuation 0, got {0}")]
    NotUnit(String),

    #[error("numeric evaluation failed: {0}")]
    Numeric(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("zero vector has no initial form")]
    ZeroVector,

    #[error("variable count mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("substitution violates valuation preservation at variable {variable}: {detail}")]
    InvalidSubstitution { variable: String, detail: String },

    #[error("matrix is singular")]
    Singular,

    #[error("{0} is not a root of the residue polynomial")]
    NotARoot(String),

    #[error("root {0} is ramified (derivative of the residue polynomial vanishes)")]
    Ramified(String),

    #[error("lifting did not reach the residual bound within {0} steps")]
    LiftStalled(usize),

    #[error("refinement did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("degree cap {0} reached before the initial ideal stabilised")]
    DegreeCap(u32),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("matrix is not in SL2: {0}")]
    NotSl2(String),

    #[error("determinant {0} is not a positive real")]
    NonPositiveDeterminant(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
