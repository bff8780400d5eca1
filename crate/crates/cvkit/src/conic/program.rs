//! Conic program representation and solve reports.

use super::svec;
use crate::matops::{BipartiteDims, ComplexMatrix, Sys};
use serde::Serialize;

/// Cone membership of one block.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cone {
    /// No constraint.
    Free,
    /// Entrywise nonnegative (vector blocks).
    Nonneg,
    /// Hermitian positive semidefinite.
    Psd,
    /// PSD after partial transposition of the given factor.
    PsdPartialTranspose { dims: BipartiteDims, sys: Sys },
}

/// Shape of one block: a Hermitian matrix (packed into `n²` real
/// coordinates) or a plain real vector.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockShape {
    Herm(usize),
    Vec(usize),
}

impl BlockShape {
    pub fn packed_len(&self) -> usize {
        match *self {
            BlockShape::Herm(n) => svec::svec_len(n),
            BlockShape::Vec(n) => n,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub shape: BlockShape,
    pub cone: Cone,
}

/// Sparse linear functional on one block, in packed coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct LinTerm {
    pub block: usize,
    pub entries: Vec<(usize, f64)>,
}

impl LinTerm {
    pub fn single(block: usize, index: usize, coeff: f64) -> Self {
        LinTerm {
            block,
            entries: vec![(index, coeff)],
        }
    }

    /// `⟨H, X⟩` for a Hermitian coefficient matrix `H`; zero entries are
    /// dropped.
    pub fn from_hermitian(block: usize, h: &ComplexMatrix) -> Self {
        let entries = svec::svec(h)
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0.0)
            .collect();
        LinTerm { block, entries }
    }

    pub fn from_vector(block: usize, v: &[f64]) -> Self {
        let entries = v
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, x)| x != 0.0)
            .collect();
        LinTerm { block, entries }
    }
}

/// One affine equality `Σ_terms ⟨term, X_block⟩ = rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct Constraint {
    pub terms: Vec<LinTerm>,
    pub rhs: f64,
}

/// Maximize `Σ ⟨objective, X⟩` subject to affine equalities and per-block
/// cone membership.
#[derive(Debug, Clone, Serialize)]
pub struct ConicProgram {
    pub blocks: Vec<Block>,
    pub objective: Vec<LinTerm>,
    pub constraints: Vec<Constraint>,
}

impl ConicProgram {
    pub fn new(blocks: Vec<Block>) -> Self {
        ConicProgram {
            blocks,
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn packed_len(&self) -> usize {
        self.blocks.iter().map(|b| b.shape.packed_len()).sum()
    }

    pub fn block_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for b in &self.blocks {
            offsets.push(acc);
            acc += b.shape.packed_len();
        }
        offsets
    }

    /// Self-describing JSON dump for offline inspection.
    pub fn to_debug_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("program serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    MaxIters,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Residuals {
    pub primal: f64,
    pub dual: f64,
    pub gap: f64,
}

/// One block of a primal or dual solution.
#[derive(Debug, Clone)]
pub enum SolutionBlock {
    Vector(Vec<f64>),
    Matrix(ComplexMatrix),
}

impl SolutionBlock {
    pub fn as_matrix(&self) -> &ComplexMatrix {
        match self {
            SolutionBlock::Matrix(m) => m,
            SolutionBlock::Vector(_) => panic!("expected a matrix block"),
        }
    }

    pub fn as_vector(&self) -> &[f64] {
        match self {
            SolutionBlock::Vector(v) => v,
            SolutionBlock::Matrix(_) => panic!("expected a vector block"),
        }
    }
}

/// Everything a solve hands back.  `status == Optimal` guarantees all three
/// residuals met the configured tolerance.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub primal_value: f64,
    pub dual_value: f64,
    pub primal_solution: Vec<SolutionBlock>,
    pub dual_solution: Vec<SolutionBlock>,
    pub iterations: usize,
    pub residuals: Residuals,
}
