//! Builders and drivers that turn channels into the cv optimization
//! programs: the PPT relaxation (primal and dual), the entanglement-assisted
//! positive-cone program, the k-symmetric-extension hierarchy, the see-saw
//! and output-purity ascent heuristics, the Werner-Holevo linear programs,
//! and non-multiplicativity certification.
//!
//! Bound chain honored throughout: for any channel,
//! `seesaw ≤ cv ≤ ppt_primal ≈ ppt_dual ≤ ea`.

mod certify;
mod programs;
mod seesaw;
mod wh_lp;

pub use certify::certify_nonmultiplicativity;
pub use programs::{
    build_ea_primal, build_ppt_dual, build_ppt_primal, build_symk_primal, dimension_guard,
    ea_cv, ppt_dual_cv, ppt_primal_cv, symk_cv, MAX_TOTAL_DIM_DEFAULT,
};
pub use seesaw::{max_output_purity, seesaw_cv};
pub use wh_lp::{wh_id_lp, wh_nfold_lp};

use crate::channels::ChannelError;
use crate::conic::{SolveReport, SolverError};
use crate::matops::MatError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CvError {
    #[error("dimension guard: {0}")]
    Guard(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Which method produced a cv bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CvKind {
    QubitExact,
    ClassicalExact,
    Formula,
    PptPrimal,
    PptDual,
    Ea,
    Symk { k: usize },
    Seesaw,
    WhLp,
    WhIdLp,
    Lambda2,
}

/// A named cv bound: the value, its base-2 logarithm, and enough solver or
/// restart metadata to audit where it came from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CvResult {
    pub kind: CvKind,
    pub value: f64,
    pub log_value: f64,
    pub meta: CvMeta,
}

impl CvResult {
    pub fn new(kind: CvKind, value: f64, meta: CvMeta) -> Self {
        CvResult {
            kind,
            value,
            log_value: value.log2(),
            meta,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CvMeta {
    None,
    Formula { name: String },
    Solver(SolverMeta),
    Seesaw(SeesawMeta),
}

/// Residuals and counters carried over from a conic solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverMeta {
    pub status: String,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub primal_value: f64,
    pub dual_value: f64,
}

impl SolverMeta {
    pub fn from_report(r: &SolveReport) -> Self {
        SolverMeta {
            status: format!("{:?}", r.status).to_lowercase(),
            iterations: r.iterations,
            primal_residual: r.residuals.primal,
            dual_residual: r.residuals.dual,
            gap: r.residuals.gap,
            primal_value: r.primal_value,
            dual_value: r.dual_value,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeesawMeta {
    pub restarts: usize,
    pub best_restart: usize,
    pub total_iterations: usize,
}

/// See-saw configuration.  `num_signals` defaults to `d_B²`, which suffices
/// for the exact cv; restarts run on independent seeded streams
/// (`seed + restart index`) so the reduce is scheduling-independent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub iters_per_restart: usize,
    pub num_signals: Option<usize>,
    pub seed: u64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        SeesawConfig {
            restarts: 20,
            iters_per_restart: 30,
            num_signals: None,
            seed: 0,
        }
    }
}

/// Conservative witness of non-multiplicativity: certified only when the
/// see-saw lower bound on the joint channel clears the product of certified
/// PPT-dual upper bounds by more than `epsilon`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NonMultCertificate {
    pub lower_joint: f64,
    pub upper_product: f64,
    pub epsilon: f64,
    pub certified: bool,
}

#[cfg(test)]
mod tests;
