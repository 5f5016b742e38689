//! Graph representations, vertex weights, the Laplacian, and the objective
//! transforms mapping each named clustering objective to its
//! (affinity, weight) matrix pair.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Additive replacement for zero degrees when regularization is enabled.
pub(crate) const REG_EPS: f64 = 1e-10;

/// Relative symmetry tolerance for unipartite affinity validation.
const AFFINITY_SYMMETRY_TOL: f64 = 1e-12;

/// A weighted graph in one of the three shapes the engine understands.
///
/// Entries are validated nonnegative at construction; unipartite affinities
/// must additionally be symmetric. This is the single validation point, so
/// operations downstream assume well-formed inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum AffinityGraph {
    /// Symmetric N x N affinity over one vertex set.
    Unipartite(DenseMatrix),
    /// Rectangular M x N feature-by-item data matrix.
    Bipartite(DenseMatrix),
    /// Square N x N affinity with meaningful edge directions.
    Directed(DenseMatrix),
}

fn check_nonnegative(m: &DenseMatrix) -> Result<()> {
    if let Some((row, col, value)) = m.first_negative() {
        return Err(Error::NegativeEntry { row, col, value });
    }
    Ok(())
}

impl AffinityGraph {
    pub fn unipartite(w: DenseMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::NotSquare {
                rows: w.rows(),
                cols: w.cols(),
            });
        }
        check_nonnegative(&w)?;
        if !w.is_symmetric(AFFINITY_SYMMETRY_TOL) {
            return Err(Error::NotSymmetric {
                deviation: w.symmetry_deviation(),
            });
        }
        Ok(Self::Unipartite(w))
    }

    pub fn bipartite(a: DenseMatrix) -> Result<Self> {
        check_nonnegative(&a)?;
        Ok(Self::Bipartite(a))
    }

    pub fn directed(b: DenseMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::NotSquare {
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        check_nonnegative(&b)?;
        Ok(Self::Directed(b))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Unipartite(_) => "unipartite",
            Self::Bipartite(_) => "bipartite",
            Self::Directed(_) => "directed",
        }
    }

    pub fn matrix(&self) -> &DenseMatrix {
        match self {
            Self::Unipartite(m) | Self::Bipartite(m) | Self::Directed(m) => m,
        }
    }

    /// Number of vertices a partition of this graph covers: N for square
    /// graphs, M + N for bipartite graphs (features then items).
    pub fn vertex_count(&self) -> usize {
        match self {
            Self::Unipartite(m) | Self::Directed(m) => m.rows(),
            Self::Bipartite(a) => a.rows() + a.cols(),
        }
    }
}

/// The six named clustering objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    GwAssoc,
    GwCuts,
    NAssoc,
    NCuts,
    RAssoc,
    RCuts,
}

impl Objective {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::GwAssoc => "gwassoc",
            Self::GwCuts => "gwcuts",
            Self::NAssoc => "nassoc",
            Self::NCuts => "ncuts",
            Self::RAssoc => "rassoc",
            Self::RCuts => "rcuts",
        }
    }

    /// True for the generally-weighted pair, which needs caller-supplied
    /// vertex weights.
    pub fn is_general_weighted(&self) -> bool {
        matches!(self, Self::GwAssoc | Self::GwCuts)
    }

    /// True for the degree-weighted pair.
    pub fn is_degree_weighted(&self) -> bool {
        matches!(self, Self::NAssoc | Self::NCuts)
    }

    pub const ALL: [Objective; 6] = [
        Objective::GwAssoc,
        Objective::GwCuts,
        Objective::NAssoc,
        Objective::NCuts,
        Objective::RAssoc,
        Objective::RCuts,
    ];
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Objective {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "gwassoc" => Ok(Self::GwAssoc),
            "gwcuts" => Ok(Self::GwCuts),
            "nassoc" => Ok(Self::NAssoc),
            "ncuts" => Ok(Self::NCuts),
            "rassoc" => Ok(Self::RAssoc),
            "rcuts" => Ok(Self::RCuts),
            _ => Err(()),
        }
    }
}

/// An objective plus the knobs that go with it: custom vertex weights for
/// the generally-weighted pair, and opt-in regularization of zero degrees.
///
/// Zero degrees are a modeling problem, so they are a hard error unless
/// regularization is explicitly requested; the replacement weight is 1e-10.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    name: Objective,
    custom_phi: Option<Vec<f64>>,
    regularize_degrees: bool,
}

impl ObjectiveSpec {
    /// Spec for an objective that derives its weights from the graph.
    pub fn new(name: Objective) -> Result<Self> {
        if name.is_general_weighted() {
            return Err(Error::CustomPhiMisuse("missing", name.as_str()));
        }
        Ok(Self {
            name,
            custom_phi: None,
            regularize_degrees: false,
        })
    }

    /// Spec for a generally-weighted objective with explicit vertex weights.
    /// For directed graphs the weights are used directly as the combined
    /// in/out weight diagonal.
    pub fn with_weights(name: Objective, phi: Vec<f64>) -> Result<Self> {
        if !name.is_general_weighted() {
            return Err(Error::CustomPhiMisuse("supplied", name.as_str()));
        }
        for (index, &value) in phi.iter().enumerate() {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::NonPositiveWeight { index, value });
            }
        }
        Ok(Self {
            name,
            custom_phi: Some(phi),
            regularize_degrees: false,
        })
    }

    /// Enables the 1e-10 replacement of zero degrees for the
    /// degree-weighted objectives.
    pub fn with_degree_regularization(mut self) -> Self {
        self.regularize_degrees = true;
        self
    }

    pub fn name(&self) -> Objective {
        self.name
    }

    pub fn custom_phi(&self) -> Option<&[f64]> {
        self.custom_phi.as_deref()
    }

    pub fn regularize_degrees(&self) -> bool {
        self.regularize_degrees
    }

    /// Custom weights checked against the expected vertex count.
    fn custom_phi_checked(&self, n: usize) -> Result<Vec<f64>> {
        let phi = self
            .custom_phi
            .as_ref()
            .expect("generally-weighted spec always carries weights");
        if phi.len() != n {
            return Err(Error::DimensionMismatch {
                left: phi.len(),
                right: n,
            });
        }
        Ok(phi.clone())
    }

    /// Replaces zero degrees per the regularization setting.
    fn guard_degrees(&self, mut degrees: Vec<f64>) -> Result<Vec<f64>> {
        for (i, d) in degrees.iter_mut().enumerate() {
            if *d == 0.0 {
                if self.regularize_degrees {
                    *d = REG_EPS;
                } else {
                    return Err(Error::ZeroDegreeVertex { index: i });
                }
            }
        }
        Ok(degrees)
    }

    /// Weight diagonal for a symmetric affinity with the given degrees.
    pub(crate) fn unipartite_phi(&self, degrees: Vec<f64>) -> Result<Vec<f64>> {
        let n = degrees.len();
        match self.name {
            Objective::GwAssoc | Objective::GwCuts => self.custom_phi_checked(n),
            Objective::NAssoc | Objective::NCuts => self.guard_degrees(degrees),
            Objective::RAssoc | Objective::RCuts => Ok(vec![1.0; n]),
        }
    }

    /// Weight diagonal over the M + N vertices of the augmented bipartite
    /// graph: feature weights first, then item weights.
    pub(crate) fn bipartite_phi(&self, a: &DenseMatrix) -> Result<Vec<f64>> {
        let total = a.rows() + a.cols();
        match self.name {
            Objective::GwAssoc | Objective::GwCuts => self.custom_phi_checked(total),
            Objective::NAssoc | Objective::NCuts => {
                let mut d = a.row_sums();
                d.extend(a.col_sums());
                self.guard_degrees(d)
            }
            Objective::RAssoc | Objective::RCuts => Ok(vec![1.0; total]),
        }
    }

    /// Combined in/out weight diagonal for a directed affinity:
    /// `sqrt(indegree * outdegree)` for the degree-weighted pair, ones for
    /// the ratio pair, and the user-supplied diagonal verbatim for the
    /// generally-weighted pair.
    pub(crate) fn directed_phi_io(&self, b: &DenseMatrix) -> Result<Vec<f64>> {
        let n = b.rows();
        match self.name {
            Objective::GwAssoc | Objective::GwCuts => self.custom_phi_checked(n),
            Objective::NAssoc | Objective::NCuts => {
                let phi_out = self.guard_degrees(b.row_sums())?;
                let phi_in = self.guard_degrees(b.col_sums())?;
                Ok(phi_in
                    .iter()
                    .zip(&phi_out)
                    .map(|(i, o)| (i * o).sqrt())
                    .collect())
            }
            Objective::RAssoc | Objective::RCuts => Ok(vec![1.0; n]),
        }
    }
}

/// Hard assignment of vertices to `k` clusters; every cluster is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::KOutOfRange { k, max: assignment.len() });
        }
        let mut seen = vec![false; k];
        for &id in &assignment {
            if id >= k {
                return Err(Error::ClusterIdOutOfRange { id, k });
            }
            seen[id] = true;
        }
        if let Some(cluster) = seen.iter().position(|s| !s) {
            return Err(Error::EmptyCluster { cluster });
        }
        Ok(Self { assignment, k })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Member lists per cluster id.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Relabels clusters in order of first appearance, which is the
    /// canonical representative of the relabeling class.
    pub fn canonicalized(&self) -> Partition {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        let assignment = self
            .assignment
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Partition {
            assignment,
            k: self.k,
        }
    }

    /// True when the two partitions induce the same blocks, labels aside.
    pub fn same_blocks(&self, other: &Partition) -> bool {
        self.k == other.k && self.canonicalized().assignment == other.canonicalized().assignment
    }
}

/// Row sums of a unipartite affinity.
pub fn degrees(g: &AffinityGraph) -> Result<Vec<f64>> {
    match g {
        AffinityGraph::Unipartite(w) => Ok(w.row_sums()),
        other => Err(Error::WrongGraphKind {
            expected: "unipartite",
            found: other.kind_name(),
        }),
    }
}

/// Graph Laplacian `D - W` of a unipartite affinity.
pub fn laplacian(g: &AffinityGraph) -> Result<DenseMatrix> {
    match g {
        AffinityGraph::Unipartite(w) => {
            let d = w.row_sums();
            let n = w.rows();
            let mut l = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    l[(i, j)] = if i == j { d[i] - w[(i, j)] } else { -w[(i, j)] };
                }
            }
            Ok(l)
        }
        other => Err(Error::WrongGraphKind {
            expected: "unipartite",
            found: other.kind_name(),
        }),
    }
}

/// The (affinity, weight-diagonal) pair for a unipartite graph:
///
/// | objective | affinity        | weights  |
/// |-----------|-----------------|----------|
/// | gwassoc   | W               | custom   |
/// | gwcuts    | Phi - L         | custom   |
/// | nassoc    | W               | degrees  |
/// | ncuts     | D - L (== W)    | degrees  |
/// | rassoc    | W               | ones     |
/// | rcuts     | I - L           | ones     |
///
/// The cut affinities are formed as given, without clipping negative
/// entries.
pub fn objective_pair(g: &AffinityGraph, spec: &ObjectiveSpec) -> Result<(DenseMatrix, Vec<f64>)> {
    let w = match g {
        AffinityGraph::Unipartite(w) => w,
        other => {
            return Err(Error::WrongGraphKind {
                expected: "unipartite",
                found: other.kind_name(),
            })
        }
    };
    let d = w.row_sums();
    let phi = spec.unipartite_phi(d.clone())?;
    let n = w.rows();
    let affinity = match spec.name() {
        // D - L collapses back to W, so the association affinity is shared.
        Objective::GwAssoc | Objective::NAssoc | Objective::NCuts | Objective::RAssoc => w.clone(),
        Objective::GwCuts => {
            let mut m = w.clone();
            for i in 0..n {
                m[(i, i)] += phi[i] - d[i];
            }
            m
        }
        Objective::RCuts => {
            let mut m = w.clone();
            for i in 0..n {
                m[(i, i)] += 1.0 - d[i];
            }
            m
        }
    };
    Ok((affinity, phi))
}

/// Assembles the symmetric block matrix `[[0, A], [A^T, 0]]`.
pub(crate) fn block_bipartite(a: &DenseMatrix) -> DenseMatrix {
    let (m, n) = (a.rows(), a.cols());
    let mut out = DenseMatrix::zeros(m + n, m + n);
    for i in 0..m {
        for j in 0..n {
            out[(i, m + j)] = a[(i, j)];
            out[(m + j, i)] = a[(i, j)];
        }
    }
    out
}

/// The discrete objective `(1/K) sum_k (z_k^T A z_k) / (z_k^T Phi z_k)`
/// for an explicit (affinity, weights) pair.
pub(crate) fn evaluate_pair(
    affinity: &DenseMatrix,
    phi: &[f64],
    assignment: &[usize],
    k: usize,
) -> Result<f64> {
    let n = assignment.len();
    let mut num = vec![0.0; k];
    let mut den = vec![0.0; k];
    let mut size = vec![0usize; k];
    for i in 0..n {
        den[assignment[i]] += phi[i];
        size[assignment[i]] += 1;
    }
    for (cluster, &count) in size.iter().enumerate() {
        if count == 0 {
            return Err(Error::EmptyCluster { cluster });
        }
    }
    for i in 0..n {
        let c = assignment[i];
        let row = affinity.row(i);
        let mut s = 0.0;
        for j in 0..n {
            if assignment[j] == c {
                s += row[j];
            }
        }
        num[c] += s;
    }
    let mut total = 0.0;
    for cluster in 0..k {
        if den[cluster] == 0.0 {
            return Err(Error::ZeroClusterWeight { cluster });
        }
        total += num[cluster] / den[cluster];
    }
    Ok(total / k as f64)
}

/// Resolves the (affinity, weights) pair the discrete objective is
/// evaluated against, for any graph kind.
///
/// Bipartite graphs are scored on the augmented block matrix over M + N
/// vertices. Directed graphs are scored on `B + B^T` against the combined
/// in/out weight diagonal, which is the objective the symmetrized trace
/// form maximizes; the cut and association variants coincide there.
pub(crate) fn discrete_pair(
    g: &AffinityGraph,
    spec: &ObjectiveSpec,
) -> Result<(DenseMatrix, Vec<f64>)> {
    match g {
        AffinityGraph::Unipartite(_) => objective_pair(g, spec),
        AffinityGraph::Bipartite(a) => Ok((block_bipartite(a), spec.bipartite_phi(a)?)),
        AffinityGraph::Directed(b) => {
            Ok((b.add(&b.transpose()), spec.directed_phi_io(b)?))
        }
    }
}

/// Exact discrete objective of a partition.
pub fn discrete_objective(g: &AffinityGraph, spec: &ObjectiveSpec, p: &Partition) -> Result<f64> {
    if p.len() != g.vertex_count() {
        return Err(Error::AssignmentLength {
            got: p.len(),
            expected: g.vertex_count(),
        });
    }
    let (affinity, phi) = discrete_pair(g, spec)?;
    evaluate_pair(&affinity, &phi, p.assignment(), p.k())
}
