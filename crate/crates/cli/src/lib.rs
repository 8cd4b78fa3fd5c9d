//! Experiment layer behind the `pst` binary: readout-offset sweeps, seeded
//! Monte Carlo edge-perturbation studies, pinned reproduction scenarios, and
//! tabular output.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod reproduce;
pub mod sweep;
pub mod table;

pub use reproduce::{reproduce, Expectation, ReproduceReport, Tolerance, CASE_IDS};
pub use sweep::{
    sweep_edge, sweep_time, EdgeSweep, EdgeSweepRow, PerturbationSupport, TimeSweep, TimeSweepRow,
};
pub use table::{emit_table, Cell, Table, TableFormat};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pst_core::Error),
    #[error("no perfect state transfer found within t_max = {0} (tolerance {1:.1e})")]
    NoStateTransfer(f64, f64),
    #[error("unknown case id {0:?} (known: {})", CASE_IDS.join(", "))]
    UnknownCase(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
