//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by matrix construction, decompositions, graph models,
/// embeddings, rounding, and the verification oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data length {got} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |a_ij - a_ji| deviation {deviation:.3e} exceeds tolerance")]
    NotSymmetric { deviation: f64 },

    #[error("k = {k} out of range, must be in 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("non-positive weight {value} at index {index}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("operation requires a {expected} graph, got {found}")]
    WrongGraphKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("vertex {index} has zero degree; enable degree regularization or fix the graph")]
    ZeroDegreeVertex { index: usize },

    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },

    #[error("cluster {cluster} has zero total weight")]
    ZeroClusterWeight { cluster: usize },

    #[error("negative entry {value} at ({row}, {col}); affinities must be nonnegative")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("negative kernel affinity {value} for pair ({i}, {j}); enable clamping or choose another kernel")]
    NegativeAffinity { i: usize, j: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid kernel parameter: {0}")]
    InvalidKernel(&'static str),

    #[error("need at least {min} items, got {got}")]
    TooFewItems { got: usize, min: usize },

    #[error("custom weights are {0} for the {1} objective; supply them only for GWAssoc/GWCuts")]
    CustomPhiMisuse(&'static str, &'static str),

    #[error("cluster id {id} out of range for k = {k}")]
    ClusterIdOutOfRange { id: usize, k: usize },

    #[error("assignment length {got} does not match vertex count {expected}")]
    AssignmentLength { got: usize, expected: usize },

    #[error("embedding has only {distinct} distinct rows, need at least {k}")]
    DegenerateEmbedding { distinct: usize, k: usize },

    #[error("instance size {n} exceeds the enumeration cap {max}")]
    TooLarge { n: usize, max: usize },
}
