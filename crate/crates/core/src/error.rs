use thiserror::Error;

/// Errors raised by the crystal, hive, Gaudin and transport layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid cactus generator s_{{{p},{q}}} for arity {n}: need 1 <= p < q <= n")]
    InvalidGenerator { p: usize, q: usize, n: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("coordinate {coord} out of range [0, {weight}] at factor {index}")]
    CoordinateOutOfRange { index: usize, coord: u32, weight: u32 },

    #[error("invalid split position {split} for a tensor of {len} factors")]
    InvalidSplit { split: usize, len: usize },

    #[error("element is not a highest element")]
    NotHighest,

    #[error("tree does not match the weight list: {0}")]
    TreeMismatch(String),

    #[error("label {mu} is not admissible: {reason}")]
    InadmissibleLabel { mu: u32, reason: String },

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("degenerate configuration; use edge transport instead (z_{i} = z_{j})")]
    DegenerateConfiguration { i: usize, j: usize },

    #[error("operator is not self-adjoint with respect to the contravariant form")]
    NotSelfAdjoint,

    #[error("subspace is not invariant under the operator")]
    NotInvariant,

    #[error("possible crossing: gap {min_gap:e} below threshold {threshold:e} near t = {t}")]
    PossibleCrossing { min_gap: f64, threshold: f64, t: f64 },

    #[error("transport produced an inconsistent label match: {0}")]
    LabelMatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
