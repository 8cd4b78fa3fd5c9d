use num_complex::Complex64;

use crate::Result;

use super::eigen::{eig_sym, EigenDecomposition};
use super::matrix::{ComplexMatrix, RealSymmetricMatrix};

/// Unitary `e^{itH} = Q^T diag(e^{it lambda_j}) Q` from a decomposition of
/// `H`.
pub fn expm_i(decomp: &EigenDecomposition, t: f64) -> ComplexMatrix {
    let n = decomp.n();
    let phases: Vec<Complex64> = decomp
        .eigenvalues()
        .iter()
        .map(|&l| Complex64::from_polar(1.0, t * l))
        .collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in a..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, phase) in phases.iter().enumerate() {
                acc += phase * (decomp.component(j, a) * decomp.component(j, b));
            }
            entries[a * n + b] = acc;
            entries[b * n + a] = acc;
        }
    }
    ComplexMatrix::from_entries(n, entries)
}

/// Spectral norm (largest singular value) of `e^{i(t0 H + H0)} - e^{i t0 H}`.
pub fn exp_diff_norm(h: &RealSymmetricMatrix, t0: f64, h0: &RealSymmetricMatrix) -> Result<f64> {
    let perturbed = h.scaled(t0).add(h0)?;
    let u_perturbed = expm_i(&eig_sym(&perturbed)?, 1.0);
    let u_nominal = expm_i(&eig_sym(h)?, t0);
    complex_spectral_norm(&u_perturbed.sub(&u_nominal)?)
}

/// Spectral norm of a complex matrix, as the square root of the largest
/// eigenvalue of the Hermitian product `M* M`, which is diagonalized through
/// its real symmetric 2n x 2n embedding `[[Re G, -Im G], [Im G, Re G]]`.
pub fn complex_spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    let n = m.n();
    // G = M* M, Hermitian positive semidefinite.
    let mut g = vec![Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n {
                acc += m.get(c, a).conj() * m.get(c, b);
            }
            g[a * n + b] = acc;
        }
    }
    let dim = 2 * n;
    let mut embedded = vec![0.0f64; dim * dim];
    for a in 0..n {
        for b in 0..n {
            let re = g[a * n + b].re;
            let im = g[a * n + b].im;
            embedded[a * dim + b] = re;
            embedded[(a + n) * dim + (b + n)] = re;
            embedded[a * dim + (b + n)] = -im;
            embedded[(a + n) * dim + b] = im;
        }
    }
    let decomp = eig_sym(&RealSymmetricMatrix::new(dim, embedded)?)?;
    let largest = decomp.eigenvalue(dim - 1);
    Ok(largest.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn exchange2() -> RealSymmetricMatrix {
        RealSymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    #[test]
    fn time_zero_gives_identity() {
        let h = RealSymmetricMatrix::from_rows(&[
            vec![1.0, 2.0, 0.5],
            vec![2.0, -1.0, 0.0],
            vec![0.5, 0.0, 3.0],
        ])
        .unwrap();
        let u = expm_i(&eig_sym(&h).unwrap(), 0.0);
        assert!(u.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-14);
    }

    #[test]
    fn exchange_matrix_gives_cos_sin_rotation() {
        let decomp = eig_sym(&exchange2()).unwrap();
        for &t in &[0.3, 1.0, std::f64::consts::FRAC_PI_2, -2.2] {
            let u = expm_i(&decomp, t);
            assert_abs_diff_eq!(u.get(0, 0).re, t.cos(), epsilon = 1e-14);
            assert_abs_diff_eq!(u.get(0, 0).im, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(u.get(0, 1).re, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(u.get(0, 1).im, t.sin(), epsilon = 1e-14);
        }
    }

    #[test]
    fn zero_perturbation_has_zero_difference_norm() {
        let h = exchange2();
        let norm = exp_diff_norm(&h, 1.3, &RealSymmetricMatrix::zeros(2)).unwrap();
        assert_abs_diff_eq!(norm, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn complex_spectral_norm_of_identity_is_one() {
        let norm = complex_spectral_norm(&ComplexMatrix::identity(3)).unwrap();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
    }
}
