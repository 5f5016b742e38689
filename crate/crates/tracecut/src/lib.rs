//! Unified K-way spectral clustering for unipartite, bipartite, and
//! directed graphs.
//!
//! Every supported objective is a trace-maximization problem over a
//! symmetric matrix built from the graph:
//!
//! * unipartite graphs use `Phi^{-1/2} W Phi^{-1/2}` directly,
//! * bipartite graphs embed the rectangular data matrix in a symmetric
//!   block matrix, or equivalently take the SVD of the two-sided
//!   normalized matrix (co-clustering rows and columns together),
//! * directed graphs are symmetrized as
//!   `Phi_io^{-1/2} (B + B^T) Phi_io^{-1/2}` with combined in/out-degree
//!   weights.
//!
//! The relaxed optimum is reached by the top-k eigenvectors (or singular
//! vectors); [`rounding`] turns the embedding into a hard partition, and
//! [`oracle`] certifies the relaxation against brute force and randomized
//! competitors on small instances.
//!
//! Everything is deterministic: the solvers are seed-free and iteration
//! order is fixed, and all randomized machinery derives from the pinned
//! generator in [`rng`].

pub mod engine;
pub mod error;
pub mod graph;
pub mod kernels;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod rng;
pub mod rounding;

pub use engine::{RowColEmbeddings, SpectralEmbedding};
pub use error::{Error, Result};
pub use graph::{AffinityGraph, Objective, ObjectiveSpec, Partition};
pub use kernels::{KernelAffinity, KernelSpec};
pub use linalg::{EigenDecomposition, SvdResult};
pub use matrix::DenseMatrix;
pub use rounding::RoundingConfig;
