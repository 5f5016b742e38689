//! Deterministic dense symmetric eigendecomposition and rectangular SVD.
//!
//! The eigensolver is cyclic Jacobi: unconditionally stable, bit-deterministic,
//! and accurate enough for desk-scale matrices. The SVD reuses it on the Gram
//! matrix of the thinner dimension and recovers the other factor from
//! `A v_k / sigma_k`.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Relative asymmetry accepted by [`eigh`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the input norm.
const JACOBI_TOL: f64 = 1e-13;

/// Sweep cap; hitting it signals pathological input.
const MAX_SWEEPS: usize = 100;

/// Entries below this magnitude are ignored when fixing column signs.
const SIGN_EPS: f64 = 1e-12;

/// Top-k eigenpairs of a symmetric matrix, eigenvalues sorted descending
/// by algebraic value.
///
/// Column `k` of `vectors` is the unit eigenvector for `values[k]`; the
/// first entry of each column larger than 1e-12 in magnitude is positive,
/// which pins the output for simple spectra.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Top-k singular triplets: `a v_k = sigma_k u_k` with `sigma` descending
/// and the sign convention applied to the columns of `u`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

/// Top-k algebraically largest eigenpairs of a symmetric matrix.
pub fn eigh(m: &DenseMatrix, k: usize) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.symmetry_deviation();
    if deviation > SYMMETRY_TOL * m.max_abs() {
        return Err(Error::NotSymmetric { deviation });
    }
    let n = m.rows();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, max: n });
    }

    let (values, vectors) = jacobi_full(m)?;

    let mut out = DenseMatrix::zeros(n, k);
    for j in 0..k {
        for i in 0..n {
            out[(i, j)] = vectors[(i, j)];
        }
    }
    Ok(EigenDecomposition {
        values: values[..k].to_vec(),
        vectors: out,
    })
}

/// Full spectrum via cyclic Jacobi, sorted descending with signs fixed.
fn jacobi_full(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let n = m.rows();
    // Work on the symmetrized copy; exact no-op for bitwise-symmetric input.
    let mut a = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    let mut v = DenseMatrix::identity(n);
    let threshold = JACOBI_TOL * m.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .partial_cmp(&a[(i, i)])
            .unwrap()
            .then(i.cmp(&j))
    });

    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let flip = column_sign(&v, src);
        for i in 0..n {
            vectors[(i, dst)] = flip * v[(i, src)];
        }
    }
    Ok((values, vectors))
}

/// One Jacobi rotation annihilating `a[(p, q)]`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e15 {
        // Asymptotic root; avoids overflow in theta * theta.
        1.0 / (2.0 * theta)
    } else {
        theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);
    let n = a.rows();

    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let g = a[(i, p)];
        let h = a[(i, q)];
        let gp = g - s * (h + g * tau);
        let hq = h + s * (g - h * tau);
        a[(i, p)] = gp;
        a[(p, i)] = gp;
        a[(i, q)] = hq;
        a[(q, i)] = hq;
    }
    for i in 0..n {
        let g = v[(i, p)];
        let h = v[(i, q)];
        v[(i, p)] = g - s * (h + g * tau);
        v[(i, q)] = h + s * (g - h * tau);
    }
}

/// -1.0 when the first entry above the magnitude cutoff is negative.
fn column_sign(m: &DenseMatrix, col: usize) -> f64 {
    for i in 0..m.rows() {
        let e = m[(i, col)];
        if e.abs() > SIGN_EPS {
            return if e < 0.0 { -1.0 } else { 1.0 };
        }
    }
    1.0
}

/// Top-k singular triplets of a rectangular matrix.
///
/// Computed through the eigendecomposition of the Gram matrix of the
/// thinner dimension; singular directions with `sigma <= 1e-12 * sigma_1`
/// on the derived side are completed by Gram-Schmidt against prior columns.
pub fn svd(m: &DenseMatrix, k: usize) -> Result<SvdResult> {
    let (rows, cols) = (m.rows(), m.cols());
    let max_k = rows.min(cols);
    if k < 1 || k > max_k {
        return Err(Error::KOutOfRange { k, max: max_k });
    }

    if cols <= rows {
        let gram = gram_of_columns(m);
        let eig = eigh(&gram, k)?;
        let sigma: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
        let v = eig.vectors;
        let mut u = derive_factor(m, &v, &sigma, false);
        let mut v = v;
        apply_pair_signs(&mut u, &mut v);
        Ok(SvdResult { u, sigma, v })
    } else {
        let gram = gram_of_rows(m);
        let eig = eigh(&gram, k)?;
        let sigma: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
        let u = eig.vectors;
        // u already satisfies the sign convention from eigh; v inherits it
        // through v_k = A^T u_k / sigma_k.
        let v = derive_factor(m, &u, &sigma, true);
        Ok(SvdResult { u, sigma, v })
    }
}

/// `A^T A`, assembled symmetrically by construction.
fn gram_of_columns(m: &DenseMatrix) -> DenseMatrix {
    let n = m.cols();
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for r in 0..m.rows() {
                s += m[(r, i)] * m[(r, j)];
            }
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    g
}

/// `A A^T`.
fn gram_of_rows(m: &DenseMatrix) -> DenseMatrix {
    let n = m.rows();
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for c in 0..m.cols() {
                s += m[(i, c)] * m[(j, c)];
            }
            g[(i, j)] = s;
            g[(j, i)] = s;
        }
    }
    g
}

/// Recovers the factor on the other side of the decomposition:
/// `u_k = A v_k / sigma_k` (or `v_k = A^T u_k / sigma_k` when `transpose`).
/// Near-null directions are replaced by Gram-Schmidt completion.
fn derive_factor(
    m: &DenseMatrix,
    given: &DenseMatrix,
    sigma: &[f64],
    transpose: bool,
) -> DenseMatrix {
    let out_rows = if transpose { m.cols() } else { m.rows() };
    let k = sigma.len();
    let cutoff = 1e-12 * sigma.first().copied().unwrap_or(0.0);
    let mut out = DenseMatrix::zeros(out_rows, k);
    for j in 0..k {
        if sigma[j] > cutoff && sigma[j] > 0.0 {
            let g = given.col(j);
            for i in 0..out_rows {
                let mut s = 0.0;
                for l in 0..g.len() {
                    s += if transpose { m[(l, i)] } else { m[(i, l)] } * g[l];
                }
                out[(i, j)] = s / sigma[j];
            }
        } else {
            complete_column(&mut out, j);
        }
    }
    out
}

/// Fills column `j` with the first canonical basis vector that keeps a
/// residual above 1/2 after projecting out columns `0..j`, normalized.
fn complete_column(out: &mut DenseMatrix, j: usize) {
    let n = out.rows();
    for cand in 0..n {
        let mut col = vec![0.0; n];
        col[cand] = 1.0;
        for prev in 0..j {
            let dot: f64 = (0..n).map(|i| col[i] * out[(i, prev)]).sum();
            for i in 0..n {
                col[i] -= dot * out[(i, prev)];
            }
        }
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.5 {
            let flip = col
                .iter()
                .find(|x| x.abs() > SIGN_EPS * norm)
                .map_or(1.0, |&x| if x < 0.0 { -1.0 } else { 1.0 });
            for i in 0..n {
                out[(i, j)] = flip * col[i] / norm;
            }
            return;
        }
    }
    // Unreachable for j < n: some basis vector always has residual
    // norm^2 >= 1 - j/n > 1/4 when the existing columns are orthonormal.
    unreachable!("Gram-Schmidt completion found no candidate");
}

/// Enforces the sign convention on `u`, flipping the paired `v` column so
/// `A v_k = sigma_k u_k` is preserved.
fn apply_pair_signs(u: &mut DenseMatrix, v: &mut DenseMatrix) {
    for j in 0..u.cols() {
        if column_sign(u, j) < 0.0 {
            for i in 0..u.rows() {
                u[(i, j)] = -u[(i, j)];
            }
            for i in 0..v.rows() {
                v[(i, j)] = -v[(i, j)];
            }
        }
    }
}

/// Rank-k reconstruction `U_K Sigma_K V_K^T`.
pub fn truncated_reconstruction(s: &SvdResult) -> DenseMatrix {
    let mut scaled = s.u.clone();
    for j in 0..scaled.cols() {
        for i in 0..scaled.rows() {
            scaled[(i, j)] *= s.sigma[j];
        }
    }
    scaled.matmul(&s.v.transpose())
}

/// Congruence scaling `Phi^{-1/2} M Phi^{-1/2}` for a positive diagonal.
///
/// The denominator `sqrt(phi_i * phi_j)` is evaluated symmetrically, so a
/// bitwise-symmetric input yields a bitwise-symmetric output.
pub fn scale_symmetric(m: &DenseMatrix, phi_diag: &[f64]) -> Result<DenseMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if phi_diag.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            left: phi_diag.len(),
            right: m.rows(),
        });
    }
    for (i, &w) in phi_diag.iter().enumerate() {
        if w <= 0.0 {
            return Err(Error::NonPositiveWeight { index: i, value: w });
        }
    }
    let n = m.rows();
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(i, j)] / (phi_diag[i] * phi_diag[j]).sqrt();
        }
    }
    Ok(out)
}
