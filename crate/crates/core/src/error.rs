use thiserror::Error;

use crate::field::ScalarParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("edges do not compose: {0}")]
    NotComposable(String),
    #[error("objects live on different quivers")]
    QuiverMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("gauge element at vertex {0} is singular")]
    SingularGauge(usize),
    #[error("invalid dg-algebra: {0}")]
    InvalidDga(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operation requires characteristic zero, field has characteristic {0}")]
    PositiveCharacteristic(u64),
    #[error("cyclicity fails: {0}")]
    NotCyclic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration too large: {estimate} candidates exceed the limit of {limit}")]
    Infeasible { estimate: u128, limit: u128 },
    #[error("wall between stability parameters: {0}")]
    WallDetected(String),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
