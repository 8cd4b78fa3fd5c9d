//! Frozen reference values for the spectral layer. Everything asserted here
//! was computed by an independent route (hand calculation on 2x2 blocks, a
//! separate dense-solver script, or a closed form) before the solver was
//! written.

use approx::assert_abs_diff_eq;
use pst_core::fidelity::{transfer_amplitude, transition_probability};
use pst_core::graph::WeightedGraph;
use pst_core::spectral::{
    eig_sym, exp_diff_norm, frobenius_norm, spectral_norm, RealSymmetricMatrix,
};
use std::f64::consts::FRAC_PI_2;

/// The 10x10 perturbation with couplings 1e-5 at (1,2) and (9,10) and
/// 0.533e-5 at (5,6).
fn reference_perturbation() -> RealSymmetricMatrix {
    let mut entries = vec![0.0f64; 100];
    for (j, k, w) in [(0, 1, 1e-5), (4, 5, 0.533e-5), (8, 9, 1e-5)] {
        entries[j * 10 + k] = w;
        entries[k * 10 + j] = w;
    }
    RealSymmetricMatrix::new(10, entries).unwrap()
}

#[test]
fn krawtchouk4_eigenvalues_are_odd_integers() {
    // roots of the characteristic polynomial of tridiag(sqrt(3), 2, sqrt(3)),
    // confirmed by brute-force enumeration before the solver existed
    let h = WeightedGraph::krawtchouk_chain(4).unwrap().adjacency();
    let decomp = eig_sym(&h).unwrap();
    for (computed, expected) in decomp.eigenvalues().iter().zip(&[-3.0, -1.0, 1.0, 3.0]) {
        assert_abs_diff_eq!(computed, expected, epsilon = 1e-12);
    }
}

#[test]
fn krawtchouk10_endpoint_entry_is_i_at_half_pi() {
    let h = WeightedGraph::krawtchouk_chain(10).unwrap().adjacency();
    let amp = transfer_amplitude(&h, 1, 10, FRAC_PI_2).unwrap();
    assert_abs_diff_eq!(amp.re, 0.0, epsilon = 1e-9);
    assert_abs_diff_eq!(amp.im, 1.0, epsilon = 1e-9);
    let p = transition_probability(&h, 1, 10, FRAC_PI_2).unwrap();
    assert!(1.0 - p <= 1e-10);
}

#[test]
fn spectral_norm_examples() {
    assert_eq!(spectral_norm(&RealSymmetricMatrix::zeros(3)).unwrap(), 0.0);

    let exchange = RealSymmetricMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    assert_abs_diff_eq!(spectral_norm(&exchange).unwrap(), 1.0, epsilon = 1e-14);

    // three antidiagonal 2x2 blocks: singular values 1e-5, 0.533e-5, 1e-5
    assert_abs_diff_eq!(
        spectral_norm(&reference_perturbation()).unwrap(),
        1e-5,
        epsilon = 1e-18
    );
}

#[test]
fn frobenius_norm_examples() {
    assert_eq!(frobenius_norm(&RealSymmetricMatrix::zeros(4)), 0.0);
    assert_abs_diff_eq!(
        frobenius_norm(&RealSymmetricMatrix::identity(3)),
        3.0f64.sqrt(),
        epsilon = 1e-15
    );
    // six squared entries: 2*(1 + 0.533^2 + 1) * 1e-10
    assert_abs_diff_eq!(
        frobenius_norm(&reference_perturbation()),
        4.568178e-10f64.sqrt(),
        epsilon = 1e-18
    );
}

#[test]
fn rank_one_perturbation_along_the_top_eigenvector_is_tight() {
    // For H0 = eps * v v^T with v the unit top eigenvector, H0 commutes with
    // H and the difference of exponentials has norm exactly |e^{i eps} - 1|.
    let h = WeightedGraph::krawtchouk_chain(10).unwrap().adjacency();
    let decomp = eig_sym(&h).unwrap();
    let top = decomp.eigenvector(decomp.n() - 1);
    assert!(top.iter().all(|&x| x > 0.0), "top eigenvector is positive");

    let eps = 1e-3;
    let mut entries = vec![0.0f64; 100];
    for j in 0..10 {
        for k in 0..10 {
            entries[j * 10 + k] = eps * top[j] * top[k];
        }
    }
    let h0 = RealSymmetricMatrix::new(10, entries).unwrap();

    let norm = exp_diff_norm(&h, FRAC_PI_2, &h0).unwrap();
    let exact = (Complex64::from_polar(1.0, eps) - Complex64::new(1.0, 0.0)).norm();
    assert_abs_diff_eq!(norm, exact, epsilon = 1e-10);

    // and the generic operator estimate ||H0|| e^{||H0||} is tight to O(eps)
    let ratio = norm / (eps * eps.exp());
    assert!((ratio - 1.0).abs() <= 1e-3, "ratio = {ratio}");
}

use num_complex::Complex64;
