//! Closed-form bounds on the transfer fidelity under readout-time offsets
//! and on the fidelity loss under symmetric edge-weight perturbations, plus
//! the operator-norm vs Frobenius-norm sharpness comparison.
//!
//! Fidelity lower bounds are clamped into `[0, 1]` and loss upper bounds
//! into `[0, 1]`; clamping and validity-domain violations are flagged on the
//! report instead of raising errors, so parameter sweeps can chart where a
//! bound expires.

use serde::Serialize;
use std::f64::consts::PI;

use crate::fidelity::{sender_moments, CanonicalForm};
use crate::spectral::{frobenius_norm, numerical_rank, spectral_norm, EigenDecomposition, RealSymmetricMatrix};
use crate::{Error, Result};

/// Threshold on `|h (lambda_n - lambda_2)|` below which the Laplacian
/// bound's singular quotient term switches to its analytic limit.
const SMALL_ANGLE: f64 = 1e-5;

/// A fidelity lower bound together with its validity flags.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    /// Lower bound on the fidelity, clamped into `[0, 1]`.
    pub bound: f64,
    /// False whenever a stated hypothesis fails (the report still carries
    /// the formula value; it is never clamped into validity).
    pub valid: bool,
    /// True when the raw formula value left `[0, 1]`.
    pub clamped: bool,
    pub hypothesis_notes: Vec<String>,
    /// The scalars the formula consumed.
    pub inputs: Vec<(&'static str, f64)>,
}

const PST_NOTE: &str = "assumes perfect state transfer at the nominal readout time";

fn clamp_fidelity(raw: f64) -> (f64, bool) {
    if raw.is_nan() {
        return (0.0, true);
    }
    let clamped = raw.clamp(0.0, 1.0);
    (clamped, clamped != raw)
}

fn clamp_loss(raw: f64) -> (f64, bool) {
    if raw.is_nan() {
        return (1.0, true);
    }
    let clamped = raw.clamp(0.0, 1.0);
    (clamped, clamped != raw)
}

/// Readout-offset bound from the two extreme eigenvalues only:
/// `p(t0 + h) >= |e^{ih lambda_1} + e^{ih lambda_n}|^2 / 4`, valid for
/// `|h| < pi / (lambda_n - lambda_1)`.
pub fn time_bound_extremal(lambda1: f64, lambda_n: f64, h: f64) -> Result<BoundReport> {
    if lambda1 > lambda_n {
        return Err(Error::EigenvalueOrder { lambda1, lambda_n });
    }
    let spread = lambda_n - lambda1;
    // |e^{ih l1} + e^{ih ln}|^2 / 4 = cos^2(h (ln - l1) / 2), the stable form
    let raw = (0.5 * h * spread).cos().powi(2);
    let (bound, clamped) = clamp_fidelity(raw);
    let valid = spread == 0.0 || h.abs() < PI / spread;
    let mut notes = vec![PST_NOTE.to_string()];
    if !valid {
        notes.push(format!(
            "readout offset outside the domain |h| < pi/(lambda_n - lambda_1) = {:.6e}",
            PI / spread
        ));
    }
    Ok(BoundReport {
        name: "time_bound_extremal",
        bound,
        valid,
        clamped,
        hypothesis_notes: notes,
        inputs: vec![("lambda1", lambda1), ("lambda_n", lambda_n), ("h", h)],
    })
}

/// Readout-offset bound using the full spectrum and the sender components:
/// `p(t0 + h) >= 1 - h^2 sum_j q_{j,sender}^2 (lambda_j - s)^2` for any real
/// shift `s`.
pub fn time_bound_weighted(
    decomp: &EigenDecomposition,
    sender: usize,
    h: f64,
    s: f64,
) -> Result<BoundReport> {
    let n = decomp.n();
    if sender == 0 || sender > n {
        return Err(Error::VertexOutOfRange { vertex: sender, n });
    }
    let s0 = sender - 1;
    let weighted_sum: f64 = (0..n)
        .map(|j| {
            let c = decomp.component(j, s0);
            c * c * (decomp.eigenvalue(j) - s).powi(2)
        })
        .sum();
    let raw = 1.0 - h * h * weighted_sum;
    let (bound, clamped) = clamp_fidelity(raw);
    let spread = decomp.spread();
    let valid = spread == 0.0 || h.abs() < PI / spread;
    let mut notes = vec![PST_NOTE.to_string()];
    if !valid {
        notes.push(format!(
            "readout offset outside the domain |h| < pi/(lambda_n - lambda_1) = {:.6e}",
            PI / spread
        ));
    }
    Ok(BoundReport {
        name: "time_bound_weighted",
        bound,
        valid,
        clamped,
        hypothesis_notes: notes,
        inputs: vec![("h", h), ("s", s), ("weighted_sum", weighted_sum)],
    })
}

/// Eigenvalue-free readout-offset bound
/// `p(t0 + h) >= 1 - h^2 ((H^2)_ss - H_ss^2)`, computed from the sender row
/// of the Hamiltonian alone. The `|h|` validity window involves the
/// eigenvalue spread, which this function deliberately does not compute;
/// callers that know the spread should gate on it themselves.
pub fn time_bound_variance(
    hamiltonian: &RealSymmetricMatrix,
    sender: usize,
    h: f64,
) -> Result<BoundReport> {
    let (mean, variance) = sender_moments(hamiltonian, sender)?;
    let raw = 1.0 - h * h * variance;
    let (bound, clamped) = clamp_fidelity(raw);
    Ok(BoundReport {
        name: "time_bound_variance",
        bound,
        valid: true,
        clamped,
        hypothesis_notes: vec![
            PST_NOTE.to_string(),
            "the |h| validity window is not checked here (no eigenvalues are computed)".to_string(),
        ],
        inputs: vec![("h", h), ("mean", mean), ("variance", variance)],
    })
}

/// Laplacian-specific readout-offset bound built from `lambda_2`,
/// `lambda_n`, and the all-ones null vector; valid for
/// `|h| < pi / (lambda_n - lambda_2)` on a connected graph with `n >= 3`.
pub fn laplacian_time_bound(lambda2: f64, lambda_n: f64, n: usize, h: f64) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::TooSmall {
            what: "the Laplacian readout bound",
            minimum: 3,
            found: n,
        });
    }
    if lambda2 <= 0.0 {
        return Err(Error::LaplacianGap { lambda2 });
    }
    if lambda2 > lambda_n {
        return Err(Error::EigenvalueOrder {
            lambda1: lambda2,
            lambda_n,
        });
    }
    let nf = n as f64;
    let gap = lambda_n - lambda2;
    let u = gap * h;
    let term1 = (nf - 1.0).powi(2) * (1.0 - u.cos()) / (2.0 * nf * nf);
    let term2 = (nf - 1.0) * (2.0 - (lambda2 * h).cos() - (lambda_n * h).cos()) / (nf * nf);
    // The quotient term has a removable singularity where h*(lambda_n -
    // lambda_2) hits a multiple of 2*pi; there it collapses to
    // sin^2((lambda_2 + lambda_n) h / 2) / n^2.
    let denominator = 2.0 * nf * nf * (1.0 - u.cos());
    let term3 = if u.abs() < SMALL_ANGLE || denominator == 0.0 {
        let mid = 0.5 * (lambda2 + lambda_n) * h;
        (mid.sin() / nf).powi(2)
    } else {
        let numerator = (lambda2 * h).cos() - (lambda_n * h).cos();
        numerator * numerator / denominator
    };
    let raw = 1.0 - term1 - term2 - term3;
    let (bound, clamped) = clamp_fidelity(raw);
    let valid = gap == 0.0 || h.abs() < PI / gap;
    let mut notes = vec![
        PST_NOTE.to_string(),
        "assumes a connected graph, so that the all-ones vector spans the Laplacian kernel"
            .to_string(),
    ];
    if !valid {
        notes.push(format!(
            "readout offset outside the domain |h| < pi/(lambda_n - lambda_2) = {:.6e}",
            PI / gap
        ));
    }
    Ok(BoundReport {
        name: "laplacian_time_bound",
        bound,
        valid,
        clamped,
        hypothesis_notes: notes,
        inputs: vec![
            ("lambda2", lambda2),
            ("lambda_n", lambda_n),
            ("n", nf),
            ("h", h),
        ],
    })
}

/// Operator-norm loss bound for an edge-weight perturbation `H0` added to
/// `t0*H`: both the exponential form
/// `2||H0|| e^{||H0||} - ||H0||^2 e^{2||H0||}` and the weaker polynomial
/// form `2||H0|| + ||H0||^2 - ||H0||^3`.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeBoundOperator {
    /// Exponential-form loss bound, clamped into `[0, 1]`.
    pub loss_exponential: f64,
    /// Polynomial-form loss bound, clamped into `[0, 1]`.
    pub loss_polynomial: f64,
    /// `max(0, 1 - exponential form)`.
    pub fidelity_lower: f64,
    pub clamped: bool,
    pub spectral_norm: f64,
    pub hypothesis_notes: Vec<String>,
}

pub fn edge_bound_operator(h0: &RealSymmetricMatrix) -> Result<EdgeBoundOperator> {
    let x = spectral_norm(h0)?;
    let raw_exponential = 2.0 * x * x.exp() - x * x * (2.0 * x).exp();
    let raw_polynomial = 2.0 * x + x * x - x * x * x;
    let (loss_exponential, clamped_e) = clamp_loss(raw_exponential);
    let (loss_polynomial, clamped_p) = clamp_loss(raw_polynomial);
    Ok(EdgeBoundOperator {
        loss_exponential,
        loss_polynomial,
        fidelity_lower: (1.0 - raw_exponential).clamp(0.0, 1.0),
        clamped: clamped_e || clamped_p,
        spectral_norm: x,
        hypothesis_notes: vec![PST_NOTE.to_string()],
    })
}

/// Frobenius-norm loss bound
/// `2||H0||_F^2 / (pi - ||H0||)^2 + ||H0||^2`, valid when every sender
/// eigenvector component is nonzero (`m = n` in the canonical
/// decomposition). The omitted remainder is cubic in `||H0||`, so the value
/// is asymptotic rather than certified.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeBoundFrobenius {
    /// Loss bound, clamped into `[0, 1]`.
    pub loss: f64,
    /// False when the `m = n` hypothesis fails.
    pub valid: bool,
    /// Always true: the cubic remainder is not computable.
    pub asymptotic: bool,
    pub clamped: bool,
    pub spectral_norm: f64,
    pub frobenius_norm: f64,
    pub m: usize,
    pub n: usize,
    pub hypothesis_notes: Vec<String>,
}

pub fn edge_bound_frobenius(
    h0: &RealSymmetricMatrix,
    canon: &CanonicalForm,
) -> Result<EdgeBoundFrobenius> {
    let x = spectral_norm(h0)?;
    if x >= PI {
        return Err(Error::PerturbationTooLarge { norm: x });
    }
    let f = frobenius_norm(h0);
    let raw = 2.0 * f * f / (PI - x).powi(2) + x * x;
    let (loss, clamped) = clamp_loss(raw);
    let valid = canon.m == canon.n();
    let mut notes = vec![
        PST_NOTE.to_string(),
        "asymptotic: the cubic remainder in the perturbation norm is omitted".to_string(),
    ];
    if !valid {
        notes.push(format!(
            "requires every sender eigenvector component nonzero (m = n); here m = {} < n = {}",
            canon.m,
            canon.n()
        ));
    }
    Ok(EdgeBoundFrobenius {
        loss,
        valid,
        asymptotic: true,
        clamped,
        spectral_norm: x,
        frobenius_norm: f,
        m: canon.m,
        n: canon.n(),
        hypothesis_notes: notes,
    })
}

/// Whether the Frobenius-form bound beats the operator-form bound to second
/// order: the strict inequality `||H0||_F^2 / (pi - ||H0||)^2 < ||H0||`,
/// together with the rank-based sufficient threshold
/// `||H0|| < (2 pi + r - sqrt(4 pi r + r^2)) / 2`.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeBoundComparison {
    pub sharper: bool,
    /// `||H0||_F^2 / (pi - ||H0||)^2`.
    pub lhs: f64,
    pub spectral_norm: f64,
    pub frobenius_norm: f64,
    /// Numerical rank: eigenvalues above `1e-10` times the largest
    /// magnitude.
    pub rank: usize,
    pub rank_threshold: f64,
    pub threshold_satisfied: bool,
}

pub fn edge_bound_comparison(h0: &RealSymmetricMatrix) -> Result<EdgeBoundComparison> {
    let x = spectral_norm(h0)?;
    let f = frobenius_norm(h0);
    let lhs = f * f / (PI - x).powi(2);
    let rank = numerical_rank(h0)?;
    let r = rank as f64;
    let rank_threshold = 0.5 * (2.0 * PI + r - (4.0 * PI * r + r * r).sqrt());
    Ok(EdgeBoundComparison {
        sharper: lhs < x,
        lhs,
        spectral_norm: x,
        frobenius_norm: f,
        rank,
        rank_threshold,
        threshold_satisfied: x < rank_threshold,
    })
}
