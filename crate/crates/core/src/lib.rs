//! Exact quantum state-transfer fidelities on weighted graphs, together with
//! closed-form lower bounds on the fidelity under readout-time errors and
//! upper bounds on the fidelity loss under edge-weight (manufacturing)
//! errors.
//!
//! The crate is organised around four layers:
//!
//! * [`spectral`] — dense symmetric eigendecomposition (cyclic Jacobi),
//!   the matrix exponential `e^{itH}` via spectral calculus, and matrix
//!   norms. Complex arithmetic is plain `(re, im)` pairs throughout; no
//!   LAPACK-style backend is involved.
//! * [`graph`] — weighted undirected graphs, their adjacency and Laplacian
//!   Hamiltonians, and the named families used by the experiments.
//! * [`fidelity`] — transition probabilities, perfect-state-transfer
//!   detection, and the canonical `t0*H = Q~^T D~ Q~ + theta*I`
//!   decomposition of a certified transfer instance.
//! * [`bounds`] — the closed-form fidelity/loss bounds and the
//!   operator-norm vs Frobenius-norm sharpness comparison.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod bounds;
pub mod fidelity;
pub mod graph;
pub mod spectral;

pub use bounds::{BoundReport, EdgeBoundComparison, EdgeBoundFrobenius, EdgeBoundOperator};
pub use fidelity::{CanonicalForm, PstCertificate};
pub use graph::{HamiltonianKind, WeightedGraph};
pub use spectral::{ComplexMatrix, EigenDecomposition, RealSymmetricMatrix};

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries for a {n}x{n} matrix, got {found}")]
    BadShape { n: usize, expected: usize, found: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {diff:.3e} exceeds tolerance")]
    NotSymmetric { row: usize, col: usize, diff: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{what} requires at least {minimum} vertices, got {found}")]
    TooSmall {
        what: &'static str,
        minimum: usize,
        found: usize,
    },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge ({j}, {k})")]
    DuplicateEdge { j: usize, k: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{name} must satisfy {requirement}, got {value}")]
    InvalidParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("eigenvalue order violated: lambda1 = {lambda1} > lambda_n = {lambda_n}")]
    EigenvalueOrder { lambda1: f64, lambda_n: f64 },
    #[error("second-smallest Laplacian eigenvalue must be positive, got lambda2 = {lambda2}")]
    LaplacianGap { lambda2: f64 },
    #[error("certificate does not match: claimed fidelity deficit {claimed:.3e}, recomputed {actual:.3e}")]
    CertificateMismatch { claimed: f64, actual: f64 },
    #[error(
        "classification failed: t0*lambda - theta = {angle} for eigenvalue {eigenvalue} \
         is {residual:.3e} from the nearest multiple of pi (tolerance {tolerance:.3e})"
    )]
    ClassificationFailed {
        eigenvalue: f64,
        angle: f64,
        residual: f64,
        tolerance: f64,
    },
    #[error("perturbation spectral norm {norm} must be below pi")]
    PerturbationTooLarge { norm: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
