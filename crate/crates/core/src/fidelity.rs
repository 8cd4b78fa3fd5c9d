//! Transition probabilities, perfect-state-transfer detection, and the
//! canonical decomposition `t0*H = Q~^T D~ Q~ + theta*I` of a certified
//! transfer instance.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::spectral::{eig_sym, expm_i, EigenDecomposition, RealSymmetricMatrix};
use crate::{Error, Result};

/// Default ceiling on `1 - p(t0)` for a certificate.
pub const DEFAULT_PST_TOLERANCE: f64 = 1e-9;
/// Sender-eigenvector components at or below this magnitude count as zero
/// when the canonical decomposition splits classified from unclassified
/// eigenvalues.
pub const ZERO_COMPONENT_TOL: f64 = 1e-8;
/// Width of the golden-section refinement interval at which the transfer
///-time search stops.
const TIME_RESOLUTION: f64 = 1e-12;

/// Evidence that `p(t0)` reaches 1 (up to `fidelity_deficit`) between
/// `sender` and `receiver`, with the phase of the corresponding entry of
/// `e^{i t0 H}`.
#[derive(Debug, Clone, Serialize)]
pub struct PstCertificate {
    pub t0: f64,
    /// 1-based vertex labels.
    pub sender: usize,
    pub receiver: usize,
    /// Argument of the `(sender, receiver)` entry of `e^{i t0 H}`, in
    /// `[0, 2*pi)`.
    pub phase: f64,
    /// `1 - p(t0)`, clamped to be nonnegative.
    pub fidelity_deficit: f64,
}

fn check_vertex(vertex: usize, n: usize) -> Result<()> {
    if vertex == 0 || vertex > n {
        return Err(Error::VertexOutOfRange { vertex, n });
    }
    Ok(())
}

/// `p(t) = |(e^{itH})_{sr}|^2`, clamped into `[0, 1]` against roundoff.
/// Vertices are 1-based.
pub fn transition_probability(
    hamiltonian: &RealSymmetricMatrix,
    sender: usize,
    receiver: usize,
    t: f64,
) -> Result<f64> {
    let amp = transfer_amplitude(hamiltonian, sender, receiver, t)?;
    Ok(amp.norm_sqr().clamp(0.0, 1.0))
}

/// The `(sender, receiver)` entry of `e^{itH}`, via the full matrix
/// exponential.
pub fn transfer_amplitude(
    hamiltonian: &RealSymmetricMatrix,
    sender: usize,
    receiver: usize,
    t: f64,
) -> Result<Complex64> {
    let n = hamiltonian.n();
    check_vertex(sender, n)?;
    check_vertex(receiver, n)?;
    let u = expm_i(&eig_sym(hamiltonian)?, t);
    Ok(u.get(sender - 1, receiver - 1))
}

/// Same entry evaluated as the spectral sum
/// `sum_j q_{j,sender} q_{j,receiver} e^{it lambda_j}` — a second route to
/// the same number, and the cheap one inside time loops.
pub fn transfer_amplitude_spectral(
    decomp: &EigenDecomposition,
    sender: usize,
    receiver: usize,
    t: f64,
) -> Result<Complex64> {
    let n = decomp.n();
    check_vertex(sender, n)?;
    check_vertex(receiver, n)?;
    let (s0, r0) = (sender - 1, receiver - 1);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let weight = decomp.component(j, s0) * decomp.component(j, r0);
        acc += Complex64::from_polar(1.0, t * decomp.eigenvalue(j)) * weight;
    }
    Ok(acc)
}

/// Mean and variance of the Hamiltonian in the standard basis state at
/// `sender`: `(H_ss, (H^2)_ss - H_ss^2)`. The variance is what the
/// eigenvalue-free readout-time bound consumes.
pub fn sender_moments(hamiltonian: &RealSymmetricMatrix, sender: usize) -> Result<(f64, f64)> {
    let n = hamiltonian.n();
    check_vertex(sender, n)?;
    let s0 = sender - 1;
    let mean = hamiltonian.get(s0, s0);
    let sum_sq: f64 = (0..n).map(|k| hamiltonian.get(s0, k).powi(2)).sum();
    Ok((mean, (sum_sq - mean * mean).max(0.0)))
}

/// Search `(0, t_max]` for the earliest time at which `1 - p(t) <= tol`.
///
/// The grid pitch is `pi / (8 (lambda_n - lambda_1))`; every grid-local
/// maximum is refined by golden-section search down to a time resolution of
/// `1e-12` and the first refined maximum that qualifies is returned.
/// Absence of a qualifying time is a valid `None` result, not an error.
pub fn find_pst(
    hamiltonian: &RealSymmetricMatrix,
    sender: usize,
    receiver: usize,
    t_max: f64,
    tol: f64,
) -> Result<Option<PstCertificate>> {
    let n = hamiltonian.n();
    check_vertex(sender, n)?;
    check_vertex(receiver, n)?;
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t_max",
            requirement: "finite and positive",
            value: t_max,
        });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            requirement: "within (0, 1)",
            value: tol,
        });
    }
    let decomp = eig_sym(hamiltonian)?;
    let (s0, r0) = (sender - 1, receiver - 1);
    let weights: Vec<f64> = (0..n)
        .map(|j| decomp.component(j, s0) * decomp.component(j, r0))
        .collect();
    let eigenvalues = decomp.eigenvalues().to_vec();
    let amplitude = |t: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, w) in eigenvalues.iter().zip(&weights) {
            acc += Complex64::from_polar(1.0, t * l) * *w;
        }
        acc
    };
    let p = |t: f64| -> f64 { amplitude(t).norm_sqr().clamp(0.0, 1.0) };
    // d/dt |A|^2 = 2 Re(conj(A) A'), with A' = sum_j i lambda_j w_j
    // e^{it lambda_j}; exact up to roundoff, unlike finite differences.
    let p_derivative = |t: f64| -> f64 {
        let mut a = Complex64::new(0.0, 0.0);
        let mut da = Complex64::new(0.0, 0.0);
        for (l, w) in eigenvalues.iter().zip(&weights) {
            let term = Complex64::from_polar(1.0, t * l) * *w;
            a += term;
            da += Complex64::new(0.0, *l) * term;
        }
        2.0 * (a.conj() * da).re
    };

    let spread = decomp.spread();
    let pitch = if spread > 1e-12 {
        PI / (8.0 * spread)
    } else {
        t_max / 256.0
    };
    let count = (t_max / pitch).ceil() as usize;
    let grid_t = |k: usize| (k as f64 * pitch).min(t_max);
    let values: Vec<f64> = (0..=count).map(|k| p(grid_t(k))).collect();

    for k in 1..=count {
        let left = values[k - 1];
        let right = if k < count { values[k + 1] } else { -1.0 };
        if values[k] >= left && values[k] >= right {
            let lo = grid_t(k - 1);
            let hi = grid_t(k + 1).min(t_max);
            let (coarse, coarse_p) = golden_section_max(&p, lo, hi);
            // Around a flat maximum the probability is constant to machine
            // precision over a ~1e-8 window, which caps the accuracy of any
            // value-based search; a bisection on the analytic derivative
            // pins the stationary point to ~1e-13.
            let (t_star, p_star) =
                polish_maximum(&p, &p_derivative, coarse, coarse_p, pitch, t_max);
            if t_star > 0.0 && 1.0 - p_star <= tol {
                let amplitude = transfer_amplitude_spectral(&decomp, sender, receiver, t_star)?;
                let mut phase = amplitude.im.atan2(amplitude.re);
                if phase < 0.0 {
                    phase += 2.0 * PI;
                }
                return Ok(Some(PstCertificate {
                    t0: t_star,
                    sender,
                    receiver,
                    phase,
                    fidelity_deficit: (1.0 - p_star).max(0.0),
                }));
            }
        }
    }
    Ok(None)
}

fn polish_maximum(
    p: &dyn Fn(f64) -> f64,
    p_derivative: &dyn Fn(f64) -> f64,
    coarse: f64,
    coarse_p: f64,
    pitch: f64,
    t_max: f64,
) -> (f64, f64) {
    let halfwidth = (0.25 * pitch).min(1e-5);
    let mut a = (coarse - halfwidth).max(0.0);
    let mut b = (coarse + halfwidth).min(t_max);
    let (da, db) = (p_derivative(a), p_derivative(b));
    if !(da > 0.0 && db < 0.0) {
        return (coarse, coarse_p);
    }
    while b - a > 1e-13 {
        let mid = 0.5 * (a + b);
        if p_derivative(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let refined = 0.5 * (a + b);
    let refined_p = p(refined);
    if refined_p >= coarse_p {
        (refined, refined_p)
    } else {
        (coarse, coarse_p)
    }
}

fn golden_section_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > TIME_RESOLUTION {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// The data of the canonical decomposition
/// `t0*H = Q~^T D~ Q~ + theta*I`, where the first `m` diagonal entries of
/// `D~` are `pi` times positive integers — even multiples first, odd
/// multiples after — and the remaining entries stay unclassified because
/// the sender eigenvector component vanishes there.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Entry phase after the `2*s*pi` downshift that makes every classified
    /// multiplier positive.
    pub theta: f64,
    /// The classified integers `r_1 >= ... >= r_ell` (positive even) then
    /// `r_{ell+1} >= ... >= r_m` (positive odd).
    pub multipliers: Vec<i64>,
    /// Number of even multipliers.
    pub ell: usize,
    /// Number of classified eigenvalues = number of sender components with
    /// magnitude above [`ZERO_COMPONENT_TOL`].
    pub m: usize,
    /// Diagonal values `t0*lambda - theta` for the unclassified rows, in
    /// row order after the permutation.
    pub unclassified_diagonal: Vec<f64>,
    /// Worst classification residual `|t0*lambda - theta - pi*r|` over the
    /// classified rows.
    pub residual: f64,
    /// 1-based sender and receiver carried over from the certificate.
    pub sender: usize,
    pub receiver: usize,
    /// Borderline sender components (magnitude in `(1e-10, 1e-6)`) whose
    /// zero/nonzero classification is numerically delicate.
    pub warnings: Vec<String>,
    n: usize,
    /// Row-major permuted, sign-fixed eigenvector matrix; row j is the
    /// eigenvector paired with the j-th diagonal entry of `D~`.
    basis: Vec<f64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row `j` of the permuted eigenvector matrix.
    pub fn basis_row(&self, j: usize) -> &[f64] {
        &self.basis[j * self.n..(j + 1) * self.n]
    }

    /// Sender components of the permuted basis — `(x_1, ..., x_m, 0, .., 0)`
    /// with every `x` nonnegative.
    pub fn sender_column(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.basis[j * self.n + (self.sender - 1)])
            .collect()
    }

    pub fn receiver_column(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.basis[j * self.n + (self.receiver - 1)])
            .collect()
    }

    /// Reassemble `Q~^T D~ Q~ + theta*I`; up to the stored residual this
    /// reproduces `t0*H`.
    pub fn reconstruct(&self) -> RealSymmetricMatrix {
        let n = self.n;
        let mut entries = vec![0.0f64; n * n];
        for j in 0..n {
            let d = if j < self.m {
                PI * self.multipliers[j] as f64
            } else {
                self.unclassified_diagonal[j - self.m]
            };
            let row = self.basis_row(j);
            for a in 0..n {
                for b in 0..n {
                    entries[a * n + b] += d * row[a] * row[b];
                }
            }
        }
        for a in 0..n {
            entries[a * n + a] += self.theta;
        }
        RealSymmetricMatrix::new(n, entries).expect("reconstruction is symmetric")
    }
}

/// Canonical decomposition of a certified transfer instance.
///
/// Every eigenvalue whose sender component is nonzero must satisfy
/// `t0*lambda - theta = pi * integer` within `tol`; a violation means the
/// certificate is too loose and is reported as a classification failure
/// carrying the worst offender.
pub fn canonical_decomposition(
    hamiltonian: &RealSymmetricMatrix,
    cert: &PstCertificate,
    tol: f64,
) -> Result<CanonicalForm> {
    let n = hamiltonian.n();
    check_vertex(cert.sender, n)?;
    check_vertex(cert.receiver, n)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            requirement: "positive",
            value: tol,
        });
    }
    // Reject stale or fabricated certificates before classifying.
    let p_actual = transition_probability(hamiltonian, cert.sender, cert.receiver, cert.t0)?;
    let actual_deficit = 1.0 - p_actual;
    if actual_deficit > (4.0 * cert.fidelity_deficit + 4e-15).max(DEFAULT_PST_TOLERANCE) {
        return Err(Error::CertificateMismatch {
            claimed: cert.fidelity_deficit,
            actual: actual_deficit,
        });
    }

    let decomp = eig_sym(hamiltonian)?;
    let s0 = cert.sender - 1;

    let mut warnings = Vec::new();
    let mut classified: Vec<(usize, i64, f64)> = Vec::new(); // (eigen index, multiplier, residual)
    let mut unclassified: Vec<usize> = Vec::new();
    let mut worst = 0.0f64;
    for j in 0..n {
        let component = decomp.component(j, s0).abs();
        if component > 1e-10 && component < 1e-6 {
            warnings.push(format!(
                "sender component {component:.3e} of eigenvector {j} sits near the zero threshold {ZERO_COMPONENT_TOL:.0e}"
            ));
        }
        if component > ZERO_COMPONENT_TOL {
            let angle = cert.t0 * decomp.eigenvalue(j) - cert.phase;
            let multiple = (angle / PI).round();
            let residual = (angle - PI * multiple).abs();
            if residual > tol {
                return Err(Error::ClassificationFailed {
                    eigenvalue: decomp.eigenvalue(j),
                    angle,
                    residual,
                    tolerance: tol,
                });
            }
            worst = worst.max(residual);
            classified.push((j, multiple as i64, residual));
        } else {
            unclassified.push(j);
        }
    }
    if classified.is_empty() {
        return Err(Error::ClassificationFailed {
            eigenvalue: f64::NAN,
            angle: f64::NAN,
            residual: f64::INFINITY,
            tolerance: tol,
        });
    }

    // Downshift theta by 2*s*pi with the smallest integer s that makes every
    // classified multiplier positive.
    let min_multiple = classified.iter().map(|&(_, r, _)| r).min().unwrap();
    let shift = (1 - min_multiple).div_euclid(2) + i64::from((1 - min_multiple).rem_euclid(2) != 0);
    let theta = cert.phase - 2.0 * (shift as f64) * PI;
    for entry in &mut classified {
        entry.1 += 2 * shift;
    }

    // Even multipliers first, odd after, each block in descending order;
    // ties keep ascending eigenvalue index.
    let mut evens: Vec<&(usize, i64, f64)> =
        classified.iter().filter(|(_, r, _)| r % 2 == 0).collect();
    let mut odds: Vec<&(usize, i64, f64)> =
        classified.iter().filter(|(_, r, _)| r % 2 != 0).collect();
    evens.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    odds.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let ell = evens.len();
    let m = classified.len();
    let mut multipliers = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(n * n);
    for &&(j, r, _) in evens.iter().chain(odds.iter()) {
        multipliers.push(r);
        let mut row = decomp.eigenvector(j).to_vec();
        if row[s0] < 0.0 {
            for x in &mut row {
                *x = -*x;
            }
        }
        basis.extend_from_slice(&row);
    }
    let mut tail_diagonal = Vec::with_capacity(n - m);
    for &j in &unclassified {
        tail_diagonal.push(cert.t0 * decomp.eigenvalue(j) - theta);
        basis.extend_from_slice(decomp.eigenvector(j));
    }

    Ok(CanonicalForm {
        theta,
        multipliers,
        ell,
        m,
        unclassified_diagonal: tail_diagonal,
        residual: worst,
        sender: cert.sender,
        receiver: cert.receiver,
        warnings,
        n,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn path2_transfers_perfectly_at_half_pi() {
        let h = WeightedGraph::path(2).unwrap().adjacency();
        let p = transition_probability(&h, 1, 2, FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn distinct_vertices_at_time_zero_have_zero_probability() {
        let h = WeightedGraph::krawtchouk_chain(5).unwrap().adjacency();
        assert!(transition_probability(&h, 1, 5, 0.0).unwrap() <= 1e-28);
        assert!(transition_probability(&h, 2, 4, 0.0).unwrap() <= 1e-28);
    }

    #[test]
    fn vertex_indices_are_checked() {
        let h = WeightedGraph::path(2).unwrap().adjacency();
        assert!(matches!(
            transition_probability(&h, 0, 2, 1.0),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            transition_probability(&h, 1, 3, 1.0),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn find_pst_on_path2() {
        let h = WeightedGraph::path(2).unwrap().adjacency();
        let cert = find_pst(&h, 1, 2, 4.0, 1e-9).unwrap().unwrap();
        assert_abs_diff_eq!(cert.t0, FRAC_PI_2, epsilon = 1e-9);
        assert!(cert.fidelity_deficit <= 1e-9);
        assert_abs_diff_eq!(cert.phase, FRAC_PI_2, epsilon = 1e-9);
    }

    #[test]
    fn unweighted_path4_has_no_transfer() {
        let h = WeightedGraph::path(4).unwrap().adjacency();
        assert!(find_pst(&h, 1, 4, 50.0, 1e-6).unwrap().is_none());
    }

    #[test]
    fn complete_minus_edge_laplacian_transfers_at_half_pi() {
        let g = WeightedGraph::complete_minus_edge(4).unwrap();
        let cert = find_pst(&g.laplacian(), 1, 2, 4.0, 1e-9).unwrap().unwrap();
        assert_abs_diff_eq!(cert.t0, FRAC_PI_2, epsilon = 1e-9);
        // entry is +1 there, so the phase is 0 (mod 2*pi)
        assert!(cert.phase.min((cert.phase - 2.0 * PI).abs()) < 1e-6);
    }

    #[test]
    fn find_pst_rejects_bad_parameters() {
        let h = WeightedGraph::path(2).unwrap().adjacency();
        assert!(find_pst(&h, 1, 2, 0.0, 1e-9).is_err());
        assert!(find_pst(&h, 1, 2, 4.0, 0.0).is_err());
        assert!(find_pst(&h, 1, 2, 4.0, 1.0).is_err());
    }

    #[test]
    fn sender_moments_examples() {
        let path2 = WeightedGraph::path(2).unwrap().adjacency();
        assert_eq!(sender_moments(&path2, 1).unwrap(), (0.0, 1.0));

        let kraw = WeightedGraph::krawtchouk_chain(10).unwrap().adjacency();
        let (mean, var) = sender_moments(&kraw, 1).unwrap();
        assert_eq!(mean, 0.0);
        assert_abs_diff_eq!(var, 9.0, epsilon = 1e-12);

        let diag = RealSymmetricMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 5.0]]).unwrap();
        assert_eq!(sender_moments(&diag, 2).unwrap(), (5.0, 0.0));
    }

    #[test]
    fn canonical_decomposition_of_path2() {
        let h = WeightedGraph::path(2).unwrap().adjacency();
        let cert = find_pst(&h, 1, 2, 4.0, 1e-9).unwrap().unwrap();
        let canon = canonical_decomposition(&h, &cert, 1e-8).unwrap();
        assert_eq!(canon.m, 2);
        assert_eq!(canon.ell, 1);
        assert_eq!(canon.multipliers, vec![2, 1]);
        // theta is pi/2 modulo 2*pi after the downshift
        let theta_mod = canon.theta.rem_euclid(2.0 * PI);
        assert_abs_diff_eq!(theta_mod, FRAC_PI_2, epsilon = 1e-9);
        assert!(canon.residual <= 1e-9);

        let rebuilt = canon.reconstruct();
        let target = h.scaled(cert.t0);
        assert!(rebuilt.max_abs_diff(&target).unwrap() <= 1e-10);
    }

    #[test]
    fn canonical_decomposition_rejects_fabricated_certificate() {
        let h = RealSymmetricMatrix::identity(3);
        let fake = PstCertificate {
            t0: 1.0,
            sender: 1,
            receiver: 2,
            phase: 1.0,
            fidelity_deficit: 0.0,
        };
        assert!(matches!(
            canonical_decomposition(&h, &fake, 1e-8),
            Err(Error::CertificateMismatch { .. })
        ));
    }

    #[test]
    fn canonical_columns_satisfy_the_sign_pattern() {
        let g = WeightedGraph::krawtchouk_chain(4).unwrap();
        let h = g.adjacency();
        let cert = find_pst(&h, 1, 4, 4.0, 1e-9).unwrap().unwrap();
        let canon = canonical_decomposition(&h, &cert, 1e-8).unwrap();
        let sender = canon.sender_column();
        let receiver = canon.receiver_column();
        for j in 0..canon.m {
            assert!(sender[j] >= 0.0);
            let expect = if j < canon.ell { sender[j] } else { -sender[j] };
            assert_abs_diff_eq!(receiver[j], expect, epsilon = 1e-8);
        }
        for j in canon.m..canon.n() {
            assert!(sender[j].abs() <= ZERO_COMPONENT_TOL);
        }
    }
}
