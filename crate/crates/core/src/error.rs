use thiserror::Error;

use crate::formula::SyntaxError;
use crate::pointset::PointSet;
use crate::semantics::Mode;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a topology on {points} points must contain both the empty set and the full set")]
    MissingExtremes { points: usize },

    #[error("opens not closed under {op}: {left} and {right} give {result}, which is not open")]
    NotClosedUnderOps {
        op: &'static str,
        left: PointSet,
        right: PointSet,
        result: PointSet,
    },

    #[error("set {set} refers to points outside 0..{points}")]
    OutOfBounds { set: PointSet, points: usize },

    #[error("point {point} is outside 0..{points}")]
    PointOutOfBounds { point: usize, points: usize },

    #[error("{points} points exceeds the supported maximum of {max}")]
    TooManyPoints { points: usize, max: usize },

    #[error("cannot build a subspace on the empty set")]
    EmptyCarrier,

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("valuation of `{0}` is not closed")]
    ValuationNotClosed(String),

    #[error("valuation of `{0}` is not open")]
    ValuationNotOpen(String),

    #[error("negation `{negation}` is not part of the {mode} language")]
    ModeMismatch { mode: Mode, negation: char },

    #[error("operation requires a {expected} model, got {found}")]
    WrongMode { expected: Mode, found: Mode },

    #[error("definable algebra exceeded {cap} sets")]
    AlgebraOverflow { cap: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("map at fence index {index} is not a homeomorphism")]
    NotHomeomorphism { index: usize },

    #[error("more than {cap} continuous maps between the spaces")]
    MapSpaceOverflow { cap: usize },

    #[error("invalid fence: {0}")]
    InvalidFence(String),
}
