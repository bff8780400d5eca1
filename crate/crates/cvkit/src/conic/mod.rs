//! Self-contained optimization back ends: a dense two-phase simplex for
//! linear programs and a first-order splitting solver for semidefinite
//! programs with PSD / partial-transpose-PSD / nonnegative / free blocks.
//!
//! Programs are expressed over *blocks*.  Hermitian blocks are packed into
//! real coordinates by the isometric symmetric vectorization
//! (`[diag, √2·Re offdiag, √2·Im offdiag]`), so every affine constraint is
//! a sparse real row and the partial transpose becomes a signed permutation
//! of coordinates.

mod lp;
mod program;
mod sdp;
pub mod svec;

pub use lp::{lp_solve, LinearProgram};
pub use program::{
    Block, BlockShape, Cone, ConicProgram, Constraint, LinTerm, Residuals, SolutionBlock,
    SolveReport, SolveStatus,
};
pub use sdp::{project_psd, sdp_solve, sdp_solve_with, SdpOptions, WarmStart};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("malformed program: {0}")]
    BadProgram(String),
}
