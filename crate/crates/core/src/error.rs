use thiserror::Error;

use crate::verify::ChainDefect;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// Variants fall into three groups, which the CLI maps onto its exit codes:
/// malformed input ([`Error::is_parse`]), a violated precondition, and a
/// violated internal invariant ([`Error::is_internal`]). The last group means
/// one of the combinatorial statements the library relies on did not hold
/// for the given input, and is never silenced.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("({m},{n}) is not a coprime pair")]
    NotCoprime { m: u32, n: u32 },
    #[error("word has no adjacent \"01\"")]
    NoZeroOne,
    #[error("position {index} out of range for a word of length {len}")]
    PositionOutOfRange { index: usize, len: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("polygons do not share endpoints: (h,d) = {left:?} vs {right:?}")]
    EndpointMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("x = {0} lies outside [0, h]")]
    OutOfDomain(String),
    #[error("{zeta} does not precede {xi}")]
    NotPrecedes { zeta: String, xi: String },
    #[error("{zeta} < {xi} is not saturated")]
    NotSaturated { zeta: String, xi: String },
    #[error("slope condition violated for {0}")]
    SlopeCondition(String),
    #[error("case {case} is not valid here")]
    WrongCase { case: String },
    #[error("cross product {0} is not positive")]
    NonPositiveCross(i64),
    #[error("expected a two-segment polygon, got {0}")]
    NotTwoSegment(String),
    #[error("bound exceeded: {0}")]
    Bound(String),

    #[error("no case of the six-case classification matches {0}")]
    NoCaseMatches(String),
    #[error("expected {expected} cycles in {word}, found {found}")]
    CycleCount { word: String, expected: usize, found: usize },
    #[error("decomposition identity failed: {0}")]
    Identification(String),
    #[error("saturation structure violated: {0}")]
    SaturationStructure(String),
    #[error("recursion left the mixed-slope classification at {0}")]
    RecursionLeftClassification(String),
    #[error("move search exhausted: {0}")]
    SearchExhausted(String),
    #[error("non-integral area value {0}")]
    NonIntegerArea(String),
    #[error("constructed chain failed verification: {0}")]
    InvalidChain(ChainDefect),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }

    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NoCaseMatches(_)
                | Error::CycleCount { .. }
                | Error::Identification(_)
                | Error::SaturationStructure(_)
                | Error::RecursionLeftClassification(_)
                | Error::SearchExhausted(_)
                | Error::NonIntegerArea(_)
                | Error::InvalidChain(_)
        )
    }
}
