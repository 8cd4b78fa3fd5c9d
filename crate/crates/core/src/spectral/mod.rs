//! Numerical substrate: symmetric matrices, their eigendecompositions, the
//! unitary `e^{itH}`, and the norms used by the perturbation bounds.

mod eigen;
mod expm;
mod matrix;

pub use eigen::{eig_sym, EigenDecomposition};
pub use expm::{complex_spectral_norm, exp_diff_norm, expm_i};
pub use matrix::{ComplexMatrix, RealSymmetricMatrix};

use crate::Result;

/// Largest absolute eigenvalue, i.e. the operator norm of a real symmetric
/// matrix.
pub fn spectral_norm(h: &RealSymmetricMatrix) -> Result<f64> {
    let decomp = eig_sym(h)?;
    let vals = decomp.eigenvalues();
    Ok(vals[0].abs().max(vals[vals.len() - 1].abs()))
}

/// Square root of the sum of squared entries.
pub fn frobenius_norm(h: &RealSymmetricMatrix) -> f64 {
    h.entries().iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Number of eigenvalues with magnitude above `1e-10` times the largest
/// magnitude. Zero for the zero matrix.
pub fn numerical_rank(h: &RealSymmetricMatrix) -> Result<usize> {
    let decomp = eig_sym(h)?;
    let max = decomp
        .eigenvalues()
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs()));
    if max == 0.0 {
        return Ok(0);
    }
    Ok(decomp
        .eigenvalues()
        .iter()
        .filter(|l| l.abs() > 1e-10 * max)
        .count())
}
