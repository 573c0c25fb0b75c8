use thiserror::Error;

use crate::supermatrix::IndexPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different generator contexts")]
    ContextMismatch,
    #[error("element has zero body and is not invertible")]
    ZeroBody,
    #[error("the involution needs at least one odd generator")]
    NoOddGenerators,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("generator name `{0}` is already declared")]
    NameClash(String),
    #[error("element is not parity-homogeneous")]
    NotHomogeneous,
    #[error("product pairs two 1nu symbols")]
    DoubleNu,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("supermatrix body is singular")]
    NotInvertible,
    #[error("supermatrix still contains 1nu entries")]
    NuEntriesPresent,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("a 1nu entry survives in a column that is not moved across the divider")]
    ResidualNuSymbol,
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("no transition formula from {from} to {to}")]
    UncoveredCase { from: IndexPair, to: IndexPair },
    #[error("minor of {from} toward {to} has identically vanishing body determinant")]
    GenericallySingular { from: IndexPair, to: IndexPair },
    #[error("minor toward {0} is not invertible at this point")]
    MinorNotInvertible(IndexPair),
    #[error("no body solution: the target lies outside the overlap")]
    BodySolveFailed,
    #[error("linearised inverse problem is singular")]
    SingularJacobian,
    #[error("candidate preimage does not map back onto the target")]
    NoPreimage,
    #[error("no chart admits an invertible minor")]
    NoChartFound,
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
