use thiserror::Error;

/// Errors produced by the library.
///
/// Variants are grouped by the kind of failure: malformed values,
/// out-of-range arguments, regime guards (the structural results only
/// apply below certain inversion excesses), and internal consistency
/// checks that should never fire on valid inputs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition parts must be positive and weakly decreasing")]
    InvalidPartition,

    #[error("multiplicities sum to {got}, expected {expected}")]
    MultiplicitySum { expected: usize, got: usize },

    #[error("one-line notation must contain each of 1..=n exactly once")]
    InvalidPermutation,

    #[error("transposition index {index} out of range 1..{n}")]
    TranspositionRange { index: usize, n: usize },

    #[error("{kind} move at anchor {anchor} is not applicable here")]
    MoveNotApplicable { kind: &'static str, anchor: usize },

    #[error("closure guard: n = {n} exceeds the limit {limit}")]
    ClosureGuard { n: usize, limit: usize },

    #[error("rows and columns must strictly increase with weakly decreasing row lengths")]
    InvalidTableau,

    #[error("value {0} is already present in the tableau")]
    DuplicateEntry(usize),

    #[error("insertion and recording tableaux must be standard with equal shapes")]
    InvalidRsPair,

    #[error("block lengths must be positive")]
    InvalidComposition,

    #[error("blocks {got:?} are not a rearrangement of the conjugate parts {expected:?}")]
    CompositionShape { expected: Vec<usize>, got: Vec<usize> },

    #[error(
        "jump component {component}: length must be at most {len_bound} and \
         the first part below {part_bound}"
    )]
    JumpConstraint {
        component: usize,
        len_bound: usize,
        part_bound: usize,
    },

    #[error("expected {expected} jump components, got {got}")]
    ComponentCount { expected: usize, got: usize },

    #[error("inner and outer jump partitions are attached to different compositions")]
    CompositionDisagreement,

    #[error("composition covers {expected} elements but the permutation has {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("permutation is layered for a different composition than the one attached")]
    CompositionMismatch,

    #[error("shape {0} does not have exactly two columns")]
    NotTwoColumn(String),

    #[error("excess {delta} is not below the smallest column length {bound}; out of regime")]
    ExcessOutOfRegime { delta: u64, bound: usize },

    #[error("decomposition self-check failed on {0}; this is a bug")]
    DecompositionInternal(String),

    #[error("sweep guard: n = {n} exceeds {limit} (hard ceiling {hard})")]
    SweepGuard { n: usize, limit: usize, hard: usize },

    #[error("shape class exceeded the cap of {0} permutations")]
    ClassCap(usize),

    #[error("count overflow during aggregation")]
    CountOverflow,

    #[error("table does not satisfy its invariants: {0}")]
    CorruptTable(String),

    #[error("serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
