//! The relaxation core: normalized matrices for each graph kind and the
//! top-k relaxed indicator extraction.
//!
//! Unipartite graphs go through the eigendecomposition of
//! `Phi^{-1/2} W Phi^{-1/2}`. Bipartite graphs are handled either on the
//! augmented block matrix or, equivalently and more cheaply, through the
//! SVD of the normalized data matrix; the stacked left/right singular
//! vectors scaled by `1/sqrt(2)` are unit eigenvectors of the normalized
//! block matrix. Directed graphs are symmetrized against the combined
//! in/out weight diagonal first.

use crate::error::{Error, Result};
use crate::graph::{block_bipartite, objective_pair, AffinityGraph, ObjectiveSpec};
use crate::linalg::{eigh, scale_symmetric, svd};
use crate::matrix::DenseMatrix;

/// Relaxed indicator matrix plus the eigen/singular values behind it.
///
/// The solution is only defined up to a rotation of the columns; the engine
/// always emits the representative produced by the deterministic solver
/// sign convention. For bipartite embeddings `row_split` marks the boundary
/// between feature rows and item rows.
#[derive(Debug, Clone)]
pub struct SpectralEmbedding {
    pub vectors: DenseMatrix,
    pub values: Vec<f64>,
    pub row_split: Option<usize>,
}

/// Left/right relaxed indicators computed from one SVD of the normalized
/// data matrix. `x` clusters rows (features), `y` clusters columns (items);
/// `values` are singular values, so the row/column Gram eigenvalues are
/// their squares.
#[derive(Debug, Clone)]
pub struct RowColEmbeddings {
    pub x: DenseMatrix,
    pub y: DenseMatrix,
    pub values: Vec<f64>,
}

fn ensure_nonnegative(m: &DenseMatrix) -> Result<()> {
    if let Some((row, col, value)) = m.first_negative() {
        return Err(Error::NegativeEntry { row, col, value });
    }
    Ok(())
}

fn ensure_square(m: &DenseMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

fn check_k(k: usize, max: usize) -> Result<()> {
    if k < 1 || k > max {
        return Err(Error::KOutOfRange { k, max });
    }
    Ok(())
}

/// Top-k relaxed indicators of a unipartite graph under the given objective.
pub fn embed_unipartite(
    g: &AffinityGraph,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<SpectralEmbedding> {
    let (affinity, phi) = objective_pair(g, spec)?;
    let normalized = scale_symmetric(&affinity, &phi)?;
    let eig = eigh(&normalized, k)?;
    Ok(SpectralEmbedding {
        vectors: eig.vectors,
        values: eig.values,
        row_split: None,
    })
}

/// The symmetric block matrix `[[0, A], [A^T, 0]]` over M + N vertices.
pub fn build_bipartite_m(a: &DenseMatrix) -> Result<DenseMatrix> {
    ensure_nonnegative(a)?;
    Ok(block_bipartite(a))
}

/// Bipartite co-clustering through the augmented block matrix: top-k
/// eigenpairs of `Phi^{-1/2} M Phi^{-1/2}`.
///
/// Kept for equivalence testing against the direct SVD path, which computes
/// the same embedding without materializing the (M+N)^2 matrix.
pub fn embed_bipartite_augmented(
    a: &DenseMatrix,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<SpectralEmbedding> {
    check_k(k, a.rows().min(a.cols()))?;
    let m = build_bipartite_m(a)?;
    let phi = spec.bipartite_phi(a)?;
    let normalized = scale_symmetric(&m, &phi)?;
    let eig = eigh(&normalized, k)?;
    Ok(SpectralEmbedding {
        vectors: eig.vectors,
        values: eig.values,
        row_split: Some(a.rows()),
    })
}

/// Two-sided normalization `Phi_1^{-1/2} A Phi_2^{-1/2}` with the feature
/// and item weights of the chosen objective (row and column sums for the
/// degree-weighted pair).
pub fn normalize_bipartite(a: &DenseMatrix, spec: &ObjectiveSpec) -> Result<DenseMatrix> {
    ensure_nonnegative(a)?;
    let phi = spec.bipartite_phi(a)?;
    let (m, n) = (a.rows(), a.cols());
    let (phi_rows, phi_cols) = phi.split_at(m);
    let mut out = DenseMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            out[(i, j)] = a[(i, j)] / (phi_rows[i] * phi_cols[j]).sqrt();
        }
    }
    Ok(out)
}

/// Bipartite co-clustering straight from the data matrix: one SVD of the
/// normalized matrix, with the stacked `[u; v] / sqrt(2)` columns forming
/// unit eigenvectors of the normalized block matrix.
pub fn embed_bipartite_direct(
    a: &DenseMatrix,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<SpectralEmbedding> {
    check_k(k, a.rows().min(a.cols()))?;
    let normalized = normalize_bipartite(a, spec)?;
    let s = svd(&normalized, k)?;
    let (m, n) = (a.rows(), a.cols());
    let scale = 1.0 / 2.0_f64.sqrt();
    let mut vectors = DenseMatrix::zeros(m + n, k);
    for j in 0..k {
        for i in 0..m {
            vectors[(i, j)] = s.u[(i, j)] * scale;
        }
        for i in 0..n {
            vectors[(m + i, j)] = s.v[(i, j)] * scale;
        }
    }
    Ok(SpectralEmbedding {
        vectors,
        values: s.sigma,
        row_split: Some(m),
    })
}

/// Separate row and column indicators from one SVD of the normalized data
/// matrix: `x` holds top-k eigenvectors of `Abar Abar^T`, `y` of
/// `Abar^T Abar`, and `values` are the singular values.
pub fn row_col_embeddings(
    a: &DenseMatrix,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<RowColEmbeddings> {
    check_k(k, a.rows().min(a.cols()))?;
    let normalized = normalize_bipartite(a, spec)?;
    let s = svd(&normalized, k)?;
    Ok(RowColEmbeddings {
        x: s.u,
        y: s.v,
        values: s.sigma,
    })
}

/// Symmetrizes a directed affinity into
/// `S = Phi_io^{-1/2} (B + B^T) Phi_io^{-1/2}` and returns `S` together
/// with the combined weight diagonal.
///
/// `B + B^T` and the congruence scaling are both computed symmetrically,
/// and the result is averaged with its transpose, so `S` is exactly
/// symmetric.
pub fn symmetrize_directed(
    b: &DenseMatrix,
    spec: &ObjectiveSpec,
) -> Result<(DenseMatrix, Vec<f64>)> {
    ensure_square(b)?;
    ensure_nonnegative(b)?;
    let phi_io = spec.directed_phi_io(b)?;
    let sum = b.add(&b.transpose());
    let scaled = scale_symmetric(&sum, &phi_io)?;
    let s = scaled.add(&scaled.transpose()).scale(0.5);
    Ok((s, phi_io))
}

/// Top-k relaxed indicators of a directed graph.
pub fn embed_directed(
    b: &DenseMatrix,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<SpectralEmbedding> {
    check_k(k, b.rows())?;
    let (s, _) = symmetrize_directed(b, spec)?;
    let eig = eigh(&s, k)?;
    Ok(SpectralEmbedding {
        vectors: eig.vectors,
        values: eig.values,
        row_split: None,
    })
}
