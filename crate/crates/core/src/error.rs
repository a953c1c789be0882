use thiserror::Error;

/// Errors raised by the expression engine, the tensor layer and the suites.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("no chart extension matches sqrt({0})")]
    UnknownRadical(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("chart mismatch: `{0}` vs `{1}`")]
    ChartMismatch(String, String),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("unsupported degree {0} for the Schouten bracket (at most 2)")]
    UnsupportedDegree(usize),

    #[error("field is not tangent to the level set: {0}")]
    NotTangent(String),

    #[error("constraint cannot be solved for `{0}`")]
    Unsolvable(String),

    #[error("chart `{0}` is not a tangent-bundle chart")]
    NotTangentBundle(String),

    #[error("not a vertical-liftable base field: {0}")]
    NotBaseField(String),

    #[error("evaluation failed: {0}")]
    Eval(String),

    #[error("substitution failed: {0}")]
    Substitution(String),

    #[error("invalid metric signature: {0}")]
    InvalidSignature(String),

    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),

    #[error("mass must be a positive rational, got {0}")]
    InvalidMass(String),

    #[error("Lagrangian depends on positions: {0}")]
    PositionDependent(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
