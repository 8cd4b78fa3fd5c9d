use crate::{Error, Result};

use super::matrix::RealSymmetricMatrix;

/// Off-diagonal Frobenius mass below which the sweep loop stops, relative to
/// the Frobenius norm of the input.
const CONVERGENCE_FACTOR: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
/// Magnitude above which an eigenvector component counts as its first
/// nonzero entry for the sign convention.
const SIGN_TOL: f64 = 1e-12;

/// Result of [`eig_sym`]: ascending eigenvalues and an orthogonal matrix
/// whose row `j` is the unit eigenvector for eigenvalue `j`, so that
/// `H = Q^T diag(eigenvalues) Q`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    n: usize,
    eigenvalues: Vec<f64>,
    /// Row-major; row j = eigenvector j.
    eigenvectors: Vec<f64>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, j: usize) -> f64 {
        self.eigenvalues[j]
    }

    /// Unit eigenvector for `eigenvalue(j)`.
    pub fn eigenvector(&self, j: usize) -> &[f64] {
        &self.eigenvectors[j * self.n..(j + 1) * self.n]
    }

    /// Component `col` (zero-based) of eigenvector `j`; the column
    /// `(component(0, col), ..., component(n-1, col))` collects the entries
    /// of all eigenvectors at one vertex.
    pub fn component(&self, j: usize, col: usize) -> f64 {
        self.eigenvectors[j * self.n + col]
    }

    /// `lambda_n - lambda_1`.
    pub fn spread(&self) -> f64 {
        self.eigenvalues[self.n - 1] - self.eigenvalues[0]
    }
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Deterministic for a fixed input: the sweep order is fixed, each
/// eigenvector is sign-fixed so that its first component of magnitude above
/// `1e-12` is positive, eigenvalues are sorted ascending, and bitwise-equal
/// eigenvalues are ordered by the lexicographic order of their sign-fixed
/// eigenvectors.
pub fn eig_sym(h: &RealSymmetricMatrix) -> Result<EigenDecomposition> {
    let n = h.n();
    let mut a = h.entries().to_vec();
    // Columns of `v` accumulate the rotations; column j ends up as the
    // eigenvector for diagonal entry j.
    let mut v = vec![0.0f64; n * n];
    for j in 0..n {
        v[j * n + j] = 1.0;
    }
    // Diagonal bookkeeping: `d` is the running eigenvalue estimate, `b` the
    // accumulated diagonal and `z` the per-sweep increments, which keeps
    // roundoff from piling up across sweeps.
    let mut d: Vec<f64> = (0..n).map(|j| a[j * n + j]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0f64; n];

    let threshold = CONVERGENCE_FACTOR * super::frobenius_norm(h);
    let mut converged = false;
    let mut off = off_diagonal_norm(&a, n);
    for _ in 0..MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let diff = d[q] - d[p];
                // tan of the rotation angle; fall back to the small-angle
                // form when `diff` dominates so the quotient cannot
                // overflow.
                let t = if apq.abs() * 1e-36 > diff.abs() {
                    1.0
                } else {
                    let theta = 0.5 * diff / apq;
                    if theta.abs() > 1e18 {
                        0.5 / theta
                    } else {
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let delta = t * apq;
                z[p] -= delta;
                z[q] += delta;
                d[p] -= delta;
                d[q] += delta;
                a[p * n + q] = 0.0;
                for j in 0..p {
                    let g = a[j * n + p];
                    let h_ = a[j * n + q];
                    a[j * n + p] = g - s * (h_ + g * tau);
                    a[j * n + q] = h_ + s * (g - h_ * tau);
                }
                for j in (p + 1)..q {
                    let g = a[p * n + j];
                    let h_ = a[j * n + q];
                    a[p * n + j] = g - s * (h_ + g * tau);
                    a[j * n + q] = h_ + s * (g - h_ * tau);
                }
                for j in (q + 1)..n {
                    let g = a[p * n + j];
                    let h_ = a[q * n + j];
                    a[p * n + j] = g - s * (h_ + g * tau);
                    a[q * n + j] = h_ + s * (g - h_ * tau);
                }
                for j in 0..n {
                    let g = v[j * n + p];
                    let h_ = v[j * n + q];
                    v[j * n + p] = g - s * (h_ + g * tau);
                    v[j * n + q] = h_ + s * (g - h_ * tau);
                }
            }
        }
        for j in 0..n {
            b[j] += z[j];
            d[j] = b[j];
            z[j] = 0.0;
        }
        off = off_diagonal_norm(&a, n);
    }
    if !converged && off > threshold {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_diagonal: off,
        });
    }

    // Extract (eigenvalue, sign-fixed eigenvector row) pairs.
    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| {
            let mut row: Vec<f64> = (0..n).map(|k| v[k * n + j]).collect();
            if let Some(first) = row.iter().find(|x| x.abs() > SIGN_TOL) {
                if *first < 0.0 {
                    for x in &mut row {
                        *x = -*x;
                    }
                }
            }
            (d[j], row)
        })
        .collect();
    pairs.sort_by(|(la, ra), (lb, rb)| la.total_cmp(lb).then_with(|| lex_cmp(ra, rb)));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n * n);
    for (l, row) in pairs {
        eigenvalues.push(l);
        eigenvectors.extend_from_slice(&row);
    }
    Ok(EigenDecomposition {
        n,
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * sum).sqrt()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.total_cmp(y);
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}
