//! Rounding a relaxed embedding into a hard partition.
//!
//! The main path is seeded K-means over embedding rows with farthest-first
//! initialization, restarted a configurable number of times. The graph-space
//! assignment sweep reassigns each vertex to the cluster with the highest
//! mean similarity, which refines a partition directly on the affinity
//! matrix without touching the embedding.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::engine::SpectralEmbedding;
use crate::graph::{AffinityGraph, Partition};
use crate::matrix::DenseMatrix;
use crate::rng::{mix_seed, SplitMix64};

/// Sweep cap for the graph-space assignment iteration.
const MAX_ASSIGN_SWEEPS: usize = 100;

/// Seeding and convergence knobs for [`kmeans_rows`].
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingConfig {
    pub seed: u64,
    pub max_iters: usize,
    pub restarts: usize,
    /// Relative improvement threshold that stops Lloyd iterations.
    pub tol: f64,
}

impl Default for RoundingConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_iters: 100,
            restarts: 8,
            tol: 1e-9,
        }
    }
}

impl RoundingConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Hard-clusters the rows of an embedding into `k` groups, keeping the best
/// of `restarts` seeded runs by within-cluster squared distance.
///
/// Initialization is farthest-first from a seeded random start, so it
/// depends on pairwise distances only; ties break toward the lowest index
/// and the lowest cluster id.
pub fn kmeans_rows(e: &SpectralEmbedding, k: usize, cfg: &RoundingConfig) -> Result<Partition> {
    let n = e.vectors.rows();
    if k < 1 {
        return Err(Error::KOutOfRange { k, max: n });
    }
    let distinct = distinct_row_count(&e.vectors);
    if distinct < k {
        return Err(Error::DegenerateEmbedding { distinct, k });
    }
    let points: Vec<&[f64]> = (0..n).map(|i| e.vectors.row(i)).collect();

    let mut best: Option<(f64, Vec<usize>)> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = SplitMix64::new(mix_seed(cfg.seed, restart as u64));
        let (assign, objective) = lloyd_run(&points, k, &mut rng, cfg);
        let better = match &best {
            None => true,
            Some((obj, _)) => objective < *obj,
        };
        if better {
            best = Some((objective, assign));
        }
    }
    let (_, assign) = best.expect("at least one restart ran");
    Partition::new(assign, k)
}

fn distinct_row_count(m: &DenseMatrix) -> usize {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for i in 0..m.rows() {
        seen.insert(m.row(i).iter().map(|v| v.to_bits()).collect());
    }
    seen.len()
}

fn lloyd_run(
    points: &[&[f64]],
    k: usize,
    rng: &mut SplitMix64,
    cfg: &RoundingConfig,
) -> (Vec<usize>, f64) {
    let n = points.len();
    let dim = points[0].len();
    let mut centroids = farthest_first(points, k, rng);
    let mut assign = vec![0usize; n];
    let mut objective = f64::INFINITY;

    for _ in 0..cfg.max_iters {
        for (i, p) in points.iter().enumerate() {
            let mut best_c = 0;
            let mut best_d = dist_sq(p, &centroids[0]);
            for (c, centroid) in centroids.iter().enumerate().skip(1) {
                let d = dist_sq(p, centroid);
                if d < best_d {
                    best_d = d;
                    best_c = c;
                }
            }
            assign[i] = best_c;
        }

        repair_empty_clusters(points, k, &mut assign, &mut centroids);

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (i, p) in points.iter().enumerate() {
            counts[assign[i]] += 1;
            for (s, v) in sums[assign[i]].iter_mut().zip(*p) {
                *s += v;
            }
        }
        for c in 0..k {
            for s in sums[c].iter_mut() {
                *s /= counts[c] as f64;
            }
            centroids[c] = sums[c].clone();
        }

        let new_objective: f64 = points
            .iter()
            .enumerate()
            .map(|(i, p)| dist_sq(p, &centroids[assign[i]]))
            .sum();
        debug_assert!(new_objective <= objective * (1.0 + 1e-12) || !objective.is_finite());
        let improvement = objective - new_objective;
        objective = new_objective;
        if improvement.is_finite() && improvement <= cfg.tol * objective.abs() {
            break;
        }
    }
    (assign, objective)
}

/// Farthest-first traversal: a seeded random first pick, then repeatedly
/// the point with the largest distance to its nearest chosen centroid.
fn farthest_first(points: &[&[f64]], k: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    let n = points.len();
    let first = rng.next_index(n);
    let mut centroids = vec![points[first].to_vec()];
    let mut nearest: Vec<f64> = points.iter().map(|p| dist_sq(p, points[first])).collect();
    while centroids.len() < k {
        let mut pick = 0;
        for i in 1..n {
            if nearest[i] > nearest[pick] {
                pick = i;
            }
        }
        centroids.push(points[pick].to_vec());
        for i in 0..n {
            let d = dist_sq(points[i], points[pick]);
            if d < nearest[i] {
                nearest[i] = d;
            }
        }
    }
    centroids
}

/// Re-seeds each empty cluster at the point farthest from its assigned
/// centroid, skipping points that are the sole member of their cluster.
fn repair_empty_clusters(
    points: &[&[f64]],
    k: usize,
    assign: &mut [usize],
    centroids: &mut [Vec<f64>],
) {
    loop {
        let mut counts = vec![0usize; k];
        for &a in assign.iter() {
            counts[a] += 1;
        }
        let Some(empty) = counts.iter().position(|&c| c == 0) else {
            return;
        };
        let mut pick = None;
        let mut pick_d = -1.0;
        for (i, p) in points.iter().enumerate() {
            if counts[assign[i]] <= 1 {
                continue;
            }
            let d = dist_sq(p, &centroids[assign[i]]);
            if d > pick_d {
                pick_d = d;
                pick = Some(i);
            }
        }
        let pick = pick.expect("k <= n guarantees a movable point");
        centroids[empty] = points[pick].to_vec();
        assign[pick] = empty;
    }
}

/// One-vertex-at-a-time reassignment to the cluster with the highest mean
/// similarity, swept in ascending vertex order until a fixed point or the
/// sweep cap.
///
/// A candidate move is applied only when it strictly increases the global
/// mean-similarity objective, so the objective is non-decreasing across
/// sweeps and the iteration cannot cycle. A vertex never leaves a
/// singleton cluster, which keeps every cluster nonempty.
pub fn graph_kmeans_assign(g: &AffinityGraph, p: &Partition) -> Result<Partition> {
    let (w, mut state) = SweepState::new(g, p)?;
    for _ in 0..MAX_ASSIGN_SWEEPS {
        if !state.sweep(w) {
            break;
        }
    }
    Partition::new(state.assign, p.k())
}

/// One pass of [`graph_kmeans_assign`] over all vertices in ascending
/// order. Returns the updated partition and whether any vertex moved.
pub fn graph_kmeans_sweep(g: &AffinityGraph, p: &Partition) -> Result<(Partition, bool)> {
    let (w, mut state) = SweepState::new(g, p)?;
    let moved = state.sweep(w);
    Ok((Partition::new(state.assign, p.k())?, moved))
}

/// Cluster membership bookkeeping for the assignment sweeps: sizes and the
/// within-cluster similarity sums `q_c = sum_{i != j in V_c} w_ij`, so the
/// global objective `sum_c q_c / |V_c|` updates in O(1) per move.
struct SweepState {
    assign: Vec<usize>,
    sizes: Vec<usize>,
    q: Vec<f64>,
}

impl SweepState {
    fn new<'g>(g: &'g AffinityGraph, p: &Partition) -> Result<(&'g DenseMatrix, Self)> {
        let w = match g {
            AffinityGraph::Unipartite(w) => w,
            other => {
                return Err(Error::WrongGraphKind {
                    expected: "unipartite",
                    found: other.kind_name(),
                })
            }
        };
        let n = w.rows();
        if p.len() != n {
            return Err(Error::AssignmentLength {
                got: p.len(),
                expected: n,
            });
        }
        let k = p.k();
        let assign = p.assignment().to_vec();
        let mut sizes = vec![0usize; k];
        let mut q = vec![0.0; k];
        for &a in &assign {
            sizes[a] += 1;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && assign[i] == assign[j] {
                    q[assign[i]] += w[(i, j)];
                }
            }
        }
        Ok((w, Self { assign, sizes, q }))
    }

    fn sweep(&mut self, w: &DenseMatrix) -> bool {
        let n = w.rows();
        let k = self.sizes.len();
        let mut moved = false;
        for i in 0..n {
            let current = self.assign[i];
            if self.sizes[current] == 1 {
                continue;
            }
            let mut sums = vec![0.0; k];
            for j in 0..n {
                if j != i {
                    sums[self.assign[j]] += w[(i, j)];
                }
            }
            // The assignment rule: highest mean similarity to the current
            // members, ties toward the lowest cluster id.
            let mut best = 0;
            let mut best_score = sums[0] / self.sizes[0] as f64;
            for (c, &sum) in sums.iter().enumerate().skip(1) {
                let score = sum / self.sizes[c] as f64;
                if score > best_score {
                    best_score = score;
                    best = c;
                }
            }
            if best == current {
                continue;
            }
            let old = self.q[current] / self.sizes[current] as f64
                + self.q[best] / self.sizes[best] as f64;
            let q_from = self.q[current] - 2.0 * sums[current];
            let q_to = self.q[best] + 2.0 * sums[best];
            let new = q_from / (self.sizes[current] - 1) as f64
                + q_to / (self.sizes[best] + 1) as f64;
            if new <= old {
                continue;
            }
            self.q[current] = q_from;
            self.q[best] = q_to;
            self.sizes[current] -= 1;
            self.sizes[best] += 1;
            self.assign[i] = best;
            moved = true;
        }
        moved
    }
}

/// The quantity the assignment sweep climbs: the sum over vertices of the
/// mean similarity to the other members of their own cluster.
pub fn mean_similarity_objective(g: &AffinityGraph, p: &Partition) -> Result<f64> {
    let w = match g {
        AffinityGraph::Unipartite(w) => w,
        other => {
            return Err(Error::WrongGraphKind {
                expected: "unipartite",
                found: other.kind_name(),
            })
        }
    };
    let n = w.rows();
    if p.len() != n {
        return Err(Error::AssignmentLength {
            got: p.len(),
            expected: n,
        });
    }
    let assign = p.assignment();
    let mut sizes = vec![0usize; p.k()];
    for &a in assign {
        sizes[a] += 1;
    }
    let mut total = 0.0;
    for i in 0..n {
        let c = assign[i];
        let mut s = 0.0;
        for j in 0..n {
            if j != i && assign[j] == c {
                s += w[(i, j)];
            }
        }
        total += s / sizes[c] as f64;
    }
    Ok(total)
}
