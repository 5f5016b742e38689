//! Kernel functions turning a feature-by-item data matrix into a symmetric
//! item-affinity graph, the indirect treatment of bipartite data.

use crate::error::{Error, Result};
use crate::graph::AffinityGraph;
use crate::matrix::DenseMatrix;

/// A kernel function with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// `(a_i . a_j + c)^d`
    Polynomial { c: f64, degree: u32 },
    /// `exp(-||a_i - a_j||^2 / (2 alpha^2))`
    Gaussian { alpha: f64 },
    /// `tanh(c (a_i . a_j) + theta)`
    Sigmoid { c: f64, theta: f64 },
}

impl KernelSpec {
    fn validate(&self) -> Result<()> {
        match self {
            Self::Polynomial { degree, .. } if *degree < 1 => {
                Err(Error::InvalidKernel("polynomial degree must be >= 1"))
            }
            Self::Gaussian { alpha } if *alpha <= 0.0 || !alpha.is_finite() => {
                Err(Error::InvalidKernel("gaussian alpha must be > 0"))
            }
            _ => Ok(()),
        }
    }
}

/// Kernel affinity graph plus the number of negative values clamped to zero.
#[derive(Debug, Clone)]
pub struct KernelAffinity {
    pub graph: AffinityGraph,
    pub clamped: usize,
}

/// Scalar kernel value for a pair of equal-length vectors.
pub fn kernel_value(spec: &KernelSpec, a_i: &[f64], a_j: &[f64]) -> Result<f64> {
    spec.validate()?;
    if a_i.len() != a_j.len() {
        return Err(Error::DimensionMismatch {
            left: a_i.len(),
            right: a_j.len(),
        });
    }
    let value = match *spec {
        KernelSpec::Polynomial { c, degree } => (dot(a_i, a_j) + c).powi(degree as i32),
        KernelSpec::Gaussian { alpha } => {
            let dist_sq: f64 = a_i
                .iter()
                .zip(a_j)
                .map(|(x, y)| (x - y) * (x - y))
                .sum();
            (-dist_sq / (2.0 * alpha * alpha)).exp()
        }
        KernelSpec::Sigmoid { c, theta } => (c * dot(a_i, a_j) + theta).tanh(),
    };
    Ok(value)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Builds the N x N item-affinity graph from the columns of a feature-by-item
/// matrix: `V_ij = kernel(a_i, a_j)` for `i != j`, zero on the diagonal.
///
/// Sigmoid and polynomial kernels can go negative, which conflicts with the
/// nonnegative-affinity requirement; with `clamp_negative` such values are
/// clamped to zero and counted, otherwise they are an error.
pub fn build_affinity(
    spec: &KernelSpec,
    data: &DenseMatrix,
    clamp_negative: bool,
) -> Result<KernelAffinity> {
    spec.validate()?;
    let n = data.cols();
    if n < 2 {
        return Err(Error::TooFewItems { got: n, min: 2 });
    }
    let columns: Vec<Vec<f64>> = (0..n).map(|j| data.col(j)).collect();
    let mut v = DenseMatrix::zeros(n, n);
    let mut clamped = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let mut value = kernel_value(spec, &columns[i], &columns[j])?;
            if value < 0.0 {
                if clamp_negative {
                    value = 0.0;
                    clamped += 1;
                } else {
                    return Err(Error::NegativeAffinity { i, j, value });
                }
            }
            v[(i, j)] = value;
            v[(j, i)] = value;
        }
    }
    Ok(KernelAffinity {
        graph: AffinityGraph::unipartite(v)?,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_at_zero_distance_is_one() {
        let spec = KernelSpec::Gaussian { alpha: 0.7 };
        let a = [1.0, 2.0, 3.0];
        assert_eq!(kernel_value(&spec, &a, &a).unwrap(), 1.0);
    }

    #[test]
    fn linear_polynomial_is_dot_product() {
        let spec = KernelSpec::Polynomial { c: 0.0, degree: 1 };
        let v = kernel_value(&spec, &[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert_eq!(v, 11.0);
    }

    #[test]
    fn gaussian_matches_scalar_formula() {
        // ||a - b|| = 2, alpha = 1: exp(-4 / 2) = exp(-2).
        let spec = KernelSpec::Gaussian { alpha: 1.0 };
        let v = kernel_value(&spec, &[0.0, 0.0], &[2.0, 0.0]).unwrap();
        assert!((v - (-2.0_f64).exp()).abs() < 1e-15);
        assert!((v - 0.135335).abs() < 1e-6);
    }

    #[test]
    fn kernel_value_rejects_mismatched_dims() {
        let spec = KernelSpec::Gaussian { alpha: 1.0 };
        assert!(matches!(
            kernel_value(&spec, &[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_parameters_validated() {
        assert!(matches!(
            kernel_value(&KernelSpec::Gaussian { alpha: 0.0 }, &[1.0], &[1.0]),
            Err(Error::InvalidKernel(_))
        ));
        assert!(matches!(
            kernel_value(&KernelSpec::Polynomial { c: 0.0, degree: 0 }, &[1.0], &[1.0]),
            Err(Error::InvalidKernel(_))
        ));
    }

    #[test]
    fn affinity_of_identical_columns() {
        let data = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![2.0, 2.0]]).unwrap();
        let spec = KernelSpec::Gaussian { alpha: 1.0 };
        let out = build_affinity(&spec, &data, false).unwrap();
        assert_eq!(out.graph.matrix().data(), &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(out.clamped, 0);
    }

    #[test]
    fn affinity_of_repeated_column_is_constant_off_diagonal() {
        // Three copies of the same column under any kernel: constant
        // off-diagonal, zero diagonal.
        let data = DenseMatrix::from_rows(&[vec![1.0, 1.0, 1.0], vec![0.5, 0.5, 0.5]]).unwrap();
        let spec = KernelSpec::Polynomial { c: 1.0, degree: 2 };
        let out = build_affinity(&spec, &data, false).unwrap();
        let v = out.graph.matrix();
        let off = v[(0, 1)];
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { off };
                assert_eq!(v[(i, j)], want);
            }
        }
    }

    #[test]
    fn affinity_pairwise_distance_oracle() {
        // Columns (0,0), (1,0), (0,2) with alpha = 1.
        let data = DenseMatrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]]).unwrap();
        let spec = KernelSpec::Gaussian { alpha: 1.0 };
        let v = build_affinity(&spec, &data, false).unwrap();
        let v = v.graph.matrix().clone();
        assert!((v[(0, 1)] - (-0.5_f64).exp()).abs() < 1e-15);
        assert!((v[(0, 2)] - (-2.0_f64).exp()).abs() < 1e-15);
        assert!((v[(1, 2)] - (-2.5_f64).exp()).abs() < 1e-15);
        // Monotone decreasing in pairwise distance.
        assert!(v[(0, 1)] > v[(0, 2)] && v[(0, 2)] > v[(1, 2)]);
    }

    #[test]
    fn negative_kernel_values_clamp_or_error() {
        // Sigmoid with theta = -1 on orthogonal columns: tanh(-1) < 0.
        let data = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let spec = KernelSpec::Sigmoid { c: 1.0, theta: -1.0 };
        assert!(matches!(
            build_affinity(&spec, &data, false),
            Err(Error::NegativeAffinity { .. })
        ));
        let out = build_affinity(&spec, &data, true).unwrap();
        assert_eq!(out.clamped, 1);
        assert_eq!(out.graph.matrix()[(0, 1)], 0.0);
    }

    #[test]
    fn affinity_requires_two_items() {
        let data = DenseMatrix::zeros(3, 1);
        let spec = KernelSpec::Gaussian { alpha: 1.0 };
        assert!(matches!(
            build_affinity(&spec, &data, false),
            Err(Error::TooFewItems { got: 1, min: 2 })
        ));
    }
}
