use thiserror::Error;

/// Errors raised by the set, partition and σ-algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("ground set must have at least one point")]
    EmptyGround,
    #[error("ground set of {size} points exceeds the supported maximum of {max}")]
    TooLarge { size: usize, max: usize },
    #[error("point {point} is outside a ground set of {size} points")]
    PointOutOfRange { point: usize, size: usize },
    #[error("operands live on different ground sets ({left} vs {right} points)")]
    MismatchedSpaces { left: usize, right: usize },
    #[error("blocks overlap at point {point}")]
    Overlap { point: usize },
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },
    #[error("point {point} is not covered by any block")]
    Uncovered { point: usize },
    #[error("ground set is not a product space")]
    NotProduct,
}
