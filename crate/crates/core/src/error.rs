use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("term of degree {degree} exceeds truncation degree {limit}")]
    DegreeOverflow { degree: usize, limit: usize },

    #[error("exponential requires a zero constant term")]
    NonzeroConstantTerm,

    #[error("C_{0} is not available yet; exponents must be computed in increasing degree")]
    MissingExponent(usize),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("root bracket [{lo}, {hi}] does not change sign")]
    Bracket { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
