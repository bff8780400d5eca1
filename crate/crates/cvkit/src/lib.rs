//! cvkit — bounds and exact values for the communication value (cv) of
//! quantum channels.
//!
//! The communication value of a channel is the sum over outputs of the best
//! per-input transition probability, maximized over state encodings and POVM
//! decodings.  It is `n` times the optimal success probability of an
//! `n`-input guessing game, and it brackets the channel's one-shot classical
//! signalling power.  This crate computes it several ways:
//!
//! * **Closed forms** where they exist: classical channels, all qubit
//!   channels (via the correlation matrix of the Choi operator), the
//!   Werner-Holevo family, depolarizing, dephrasure and Siddhu channels
//!   ([`closed_form`]).
//! * **Conic relaxations** solved with an in-house first-order SDP solver
//!   and dense simplex LP solver ([`conic`]): the PPT relaxation (primal and
//!   dual), the entanglement-assisted value (positive-cone program), and the
//!   k-symmetric-extension hierarchy ([`cv_programs`]).
//! * **See-saw lower bounds** alternating between signal states and decoding
//!   POVMs, and an alternating-ascent estimate of maximal output purity
//!   ([`cv_programs::seesaw_cv`], [`cv_programs::max_output_purity`]).
//! * **Certification of non-multiplicativity**: a conservative numerical
//!   witness that `cv(N ⊗ M)` exceeds `cv(N)·cv(M)`
//!   ([`cv_programs::certify_nonmultiplicativity`]).
//!
//! Most capabilities have a runnable demo under `examples/`; the `cvkit`
//! binary exposes `cv`, `sweep` and `certify` subcommands over the same
//! machinery ([`cli`]).

// Indexed loops over flat matrix buffers are the house style of the
// numerical kernels here.
#![allow(clippy::needless_range_loop)]

pub mod channels;
pub mod cli;
pub mod closed_form;
pub mod conic;
pub mod cv_programs;
pub mod matops;
pub mod random;

pub use channels::{ChoiMatrix, ClassicalChannel, QuantumChannel};
pub use conic::{ConicProgram, LinearProgram, SolveReport, SolveStatus};
pub use cv_programs::{CvKind, CvResult, NonMultCertificate, SeesawConfig};
pub use matops::{BipartiteDims, ComplexMatrix, Sys};
