use thiserror::Error;

/// Errors raised by the algebra, star-product and cyclicity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different variable tables ({left} vs {right})")]
    TableMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution leaves variable `{0}` unmapped")]
    UnmappedVariable(String),
    #[error("variable `{var}` is not accepted here: expected {expected}")]
    VariableKind { var: String, expected: String },
    #[error("dimension mismatch: expected d = {expected}, found d = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rule set outside the supported rewrite class: {0}")]
    UnsupportedRule(String),
    #[error("measure candidate leaves the supported function class `{class}`: {reason}")]
    UnsupportedCandidate { class: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
