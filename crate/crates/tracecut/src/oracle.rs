//! Independent verifiers: exhaustive partition enumeration at toy scale,
//! randomized trace-maximization checks for symmetric and rectangular
//! matrices, and seeded instance generators for verification suites.
//!
//! Everything here is test machinery by design; the checks must stay
//! independent of the code paths they certify, so traces are evaluated
//! explicitly from vectors rather than read off the decompositions.

use crate::engine::{embed_bipartite_direct, embed_directed, embed_unipartite};
use crate::error::{Error, Result};
use crate::graph::{block_bipartite, discrete_pair, evaluate_pair, AffinityGraph, ObjectiveSpec, Partition};
use crate::linalg::{eigh, svd};
use crate::matrix::DenseMatrix;
use crate::rng::{mix_seed, SplitMix64};

/// Hard cap on exhaustive enumeration; S(12, 3) is still under 10^5.
pub const ENUMERATION_CAP: usize = 12;

/// Outcome of the exhaustive search over all k-block partitions.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub best_partition: Partition,
    pub best_value: f64,
    pub partitions_checked: u64,
}

/// Report of [`kyfan_symmetric_check`].
#[derive(Debug, Clone, Copy)]
pub struct KyFanSymmetricReport {
    /// `tr(X^T H X)` evaluated at the top-k eigenvector stack.
    pub eigen_trace: f64,
    /// Sum of the top-k eigenvalues.
    pub eigenvalue_sum: f64,
    /// Best trace over the random orthonormal competitors.
    pub max_random_trace: f64,
}

/// Report of [`kyfan_rect_check`].
#[derive(Debug, Clone, Copy)]
pub struct KyFanRectReport {
    /// `tr(U_K^T R V_K)` evaluated at the top-k singular vector stacks.
    pub svd_trace: f64,
    /// Sum of the top-k singular values.
    pub sigma_sum: f64,
    /// Same trace reached through the eigenvectors of the symmetric
    /// block embedding of R, the second derivation route.
    pub psi_trace: f64,
    /// Best trace over random orthonormal (X, Y) pairs.
    pub max_random_trace: f64,
}

/// Report of [`relaxation_gap`].
#[derive(Debug, Clone, Copy)]
pub struct RelaxationGapReport {
    /// `(1/K)` times the sum of the top-k relaxed values.
    pub relaxed: f64,
    /// Exhaustive discrete optimum.
    pub discrete: f64,
    /// `relaxed - discrete`; nonnegative up to floating-point noise.
    pub gap: f64,
}

/// Visits every partition of `0..n` into exactly `k` nonempty blocks, in
/// lexicographic order of the restricted-growth string. Each string is the
/// canonical labeling of its partition, so no partition repeats.
pub fn for_each_partition<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if n == 0 || k == 0 || k > n {
        return;
    }
    let mut a = vec![0usize; n];
    rec(&mut a, 1, 1, n, k, &mut f);
    // a[0] is pinned to 0; blocks_used counts labels assigned so far.
    fn rec<F: FnMut(&[usize])>(
        a: &mut Vec<usize>,
        i: usize,
        blocks_used: usize,
        n: usize,
        k: usize,
        f: &mut F,
    ) {
        if i == n {
            if blocks_used == k {
                f(a);
            }
            return;
        }
        let remaining = n - i;
        let cap = blocks_used.min(k - 1);
        for v in 0..=cap {
            let next_used = blocks_used.max(v + 1);
            if next_used + remaining - 1 < k {
                continue;
            }
            a[i] = v;
            rec(a, i + 1, next_used, n, k, f);
        }
    }
}

/// Stirling number of the second kind, the count of partitions of `n`
/// elements into exactly `k` nonempty blocks.
pub fn stirling2(n: usize, k: usize) -> u64 {
    if k == 0 || k > n {
        return u64::from(n == 0 && k == 0);
    }
    let mut row = vec![0u64; k + 1];
    row[0] = 1; // S(0, 0)
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = (j as u64) * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Exhaustive maximizer of the discrete objective over all k-partitions.
///
/// Deterministic: partitions are visited in lexicographic restricted-growth
/// order and only strict improvements are kept, so ties resolve to the
/// lexicographically smallest canonical labeling.
pub fn enumerate_best(
    g: &AffinityGraph,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<EnumerationResult> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            max: ENUMERATION_CAP,
        });
    }
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }
    let (affinity, phi) = discrete_pair(g, spec)?;

    let mut best_value = f64::NEG_INFINITY;
    let mut best: Option<Vec<usize>> = None;
    let mut checked = 0u64;
    let mut failure: Option<Error> = None;
    for_each_partition(n, k, |assignment| {
        if failure.is_some() {
            return;
        }
        checked += 1;
        match evaluate_pair(&affinity, &phi, assignment, k) {
            Ok(value) => {
                if value > best_value {
                    best_value = value;
                    best = Some(assignment.to_vec());
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let assignment = best.expect("k <= n yields at least one partition");
    Ok(EnumerationResult {
        best_partition: Partition::new(assignment, k)?,
        best_value,
        partitions_checked: checked,
    })
}

/// `sum_j x_j . (H x_j)`, the trace of `X^T H X`.
fn quadratic_trace(h: &DenseMatrix, x: &DenseMatrix) -> f64 {
    let hx = h.matmul(x);
    let mut trace = 0.0;
    for j in 0..x.cols() {
        for i in 0..x.rows() {
            trace += x[(i, j)] * hx[(i, j)];
        }
    }
    trace
}

/// `sum_j x_j . (R y_j)`, the trace of `X^T R Y`.
fn bilinear_trace(r: &DenseMatrix, x: &DenseMatrix, y: &DenseMatrix) -> f64 {
    let ry = r.matmul(y);
    let mut trace = 0.0;
    for j in 0..x.cols() {
        for i in 0..x.rows() {
            trace += x[(i, j)] * ry[(i, j)];
        }
    }
    trace
}

/// Random n x k matrix with orthonormal columns: seeded Gaussian fill
/// followed by modified Gram-Schmidt. Columns that collapse under
/// projection are refilled from the same stream.
pub fn random_orthonormal(rng: &mut SplitMix64, n: usize, k: usize) -> DenseMatrix {
    assert!(k <= n, "cannot build {k} orthonormal columns in dimension {n}");
    let mut m = DenseMatrix::zeros(n, k);
    for j in 0..k {
        loop {
            for i in 0..n {
                m[(i, j)] = rng.next_gaussian();
            }
            for prev in 0..j {
                let dot: f64 = (0..n).map(|i| m[(i, j)] * m[(i, prev)]).sum();
                for i in 0..n {
                    m[(i, j)] -= dot * m[(i, prev)];
                }
            }
            let norm: f64 = (0..n).map(|i| m[(i, j)] * m[(i, j)]).sum::<f64>().sqrt();
            if norm > 1e-8 {
                for i in 0..n {
                    m[(i, j)] /= norm;
                }
                break;
            }
        }
    }
    m
}

/// Certifies that the eigenvector stack maximizes `tr(X^T H X)` against
/// `trials` random orthonormal competitors.
pub fn kyfan_symmetric_check(
    h: &DenseMatrix,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<KyFanSymmetricReport> {
    let eig = eigh(h, k)?;
    let eigen_trace = quadratic_trace(h, &eig.vectors);
    let eigenvalue_sum: f64 = eig.values.iter().sum();
    let n = h.rows();
    let mut max_random_trace = f64::NEG_INFINITY;
    for trial in 0..trials {
        let mut rng = SplitMix64::new(mix_seed(seed, trial as u64));
        let x = random_orthonormal(&mut rng, n, k);
        max_random_trace = max_random_trace.max(quadratic_trace(h, &x));
    }
    Ok(KyFanSymmetricReport {
        eigen_trace,
        eigenvalue_sum,
        max_random_trace,
    })
}

/// Certifies `tr(X^T R Y)` maximization along both derivation routes: the
/// SVD route and the eigendecomposition of `[[0, R], [R^T, 0]]`, whose
/// top-k eigenvectors split into `[x; y] / sqrt(2)` stacks.
pub fn kyfan_rect_check(
    r: &DenseMatrix,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<KyFanRectReport> {
    let (rows, cols) = (r.rows(), r.cols());
    let s = svd(r, k)?;
    let svd_trace = bilinear_trace(r, &s.u, &s.v);
    let sigma_sum: f64 = s.sigma.iter().sum();

    let psi = block_bipartite(r);
    let eig = eigh(&psi, k)?;
    let scale = 2.0_f64.sqrt();
    let mut x = DenseMatrix::zeros(rows, k);
    let mut y = DenseMatrix::zeros(cols, k);
    for j in 0..k {
        for i in 0..rows {
            x[(i, j)] = scale * eig.vectors[(i, j)];
        }
        for i in 0..cols {
            y[(i, j)] = scale * eig.vectors[(rows + i, j)];
        }
    }
    let psi_trace = bilinear_trace(r, &x, &y);

    let mut max_random_trace = f64::NEG_INFINITY;
    for trial in 0..trials {
        let mut rng = SplitMix64::new(mix_seed(seed, trial as u64));
        let rx = random_orthonormal(&mut rng, rows, k);
        let ry = random_orthonormal(&mut rng, cols, k);
        max_random_trace = max_random_trace.max(bilinear_trace(r, &rx, &ry));
    }
    Ok(KyFanRectReport {
        svd_trace,
        sigma_sum,
        psi_trace,
        max_random_trace,
    })
}

/// Relaxed optimum minus exhaustive discrete optimum for a small instance.
pub fn relaxation_gap(
    g: &AffinityGraph,
    spec: &ObjectiveSpec,
    k: usize,
) -> Result<RelaxationGapReport> {
    let values = match g {
        AffinityGraph::Unipartite(_) => embed_unipartite(g, spec, k)?.values,
        AffinityGraph::Bipartite(a) => embed_bipartite_direct(a, spec, k)?.values,
        AffinityGraph::Directed(b) => embed_directed(b, spec, k)?.values,
    };
    let relaxed = values.iter().sum::<f64>() / k as f64;
    let discrete = enumerate_best(g, spec, k)?.best_value;
    Ok(RelaxationGapReport {
        relaxed,
        discrete,
        gap: relaxed - discrete,
    })
}

/// Seeded symmetric matrix with entries in [lo, hi).
pub fn random_symmetric_matrix(rng: &mut SplitMix64, n: usize, lo: f64, hi: f64) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rng.next_range(lo, hi);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Seeded rectangular matrix with entries in [lo, hi).
pub fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize, lo: f64, hi: f64) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = rng.next_range(lo, hi);
        }
    }
    m
}

/// Seeded connected simple graph on `n` vertices with unit edge weights,
/// resampled until connected.
pub fn random_connected_affinity(rng: &mut SplitMix64, n: usize) -> DenseMatrix {
    assert!(n >= 2);
    loop {
        let mut w = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.next_f64() < 0.5 {
                    w[(i, j)] = 1.0;
                    w[(j, i)] = 1.0;
                }
            }
        }
        if is_connected(&w) {
            return w;
        }
    }
}

/// Breadth-first reachability over nonzero entries.
pub fn is_connected(w: &DenseMatrix) -> bool {
    let n = w.rows();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if !seen[u] && w[(v, u)] != 0.0 {
                seen[u] = true;
                visited += 1;
                stack.push(u);
            }
        }
    }
    visited == n
}
