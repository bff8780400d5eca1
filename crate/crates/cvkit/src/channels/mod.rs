//! Quantum channels in Kraus form, their Choi matrices, and the builtin
//! channel zoo.
//!
//! Channels are stored in Kraus form only; the Choi matrix is derived on
//! demand.  The Choi convention follows the crate-wide index ordering: for
//! `N: A → B`, `J_N = Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|)` lives on `A ⊗ B` with A most
//! significant, so trace preservation reads `Tr_B J = I_A`.

mod builtins;
mod parse;

pub use builtins::*;
pub use parse::{channel_from_json, channel_from_uri, channel_to_json, ChannelSpecJson};

use crate::matops::{
    hermitian_eig, partial_trace, tensor, BipartiteDims, ComplexMatrix, Sys, C64,
};
use thiserror::Error;

/// Tolerance on `Σ K†K = I` for accepting a Kraus set as trace preserving.
pub const KRAUS_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("Kraus completeness violated: ‖ΣK†K − I‖ = {0:.3e}")]
    NotTracePreserving(f64),
    #[error("channel needs at least one Kraus operator")]
    EmptyKraus,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("invalid parameter: {0}")]
    BadParam(String),
    #[error("cannot parse channel spec: {0}")]
    Parse(String),
}

/// A CPTP map given by a non-empty list of `d_out × d_in` Kraus operators.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
    label: String,
}

impl QuantumChannel {
    /// Validates shapes and the completeness relation `Σ K†K = I` before
    /// accepting the Kraus set.
    pub fn new(
        dim_in: usize,
        dim_out: usize,
        kraus: Vec<ComplexMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        if kraus.is_empty() {
            return Err(ChannelError::EmptyKraus);
        }
        for k in &kraus {
            if k.rows() != dim_out || k.cols() != dim_in {
                return Err(ChannelError::DimMismatch(format!(
                    "Kraus operator is {}x{}, expected {dim_out}x{dim_in}",
                    k.rows(),
                    k.cols()
                )));
            }
        }
        let mut acc = ComplexMatrix::zeros(dim_in, dim_in);
        for k in &kraus {
            acc = acc.add(&k.dagger().matmul(k));
        }
        let defect = acc.sub(&ComplexMatrix::identity(dim_in)).max_abs();
        if defect > KRAUS_TOL {
            return Err(ChannelError::NotTracePreserving(defect));
        }
        Ok(QuantumChannel {
            dim_in,
            dim_out,
            kraus,
            label: label.into(),
        })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `N(ρ) = Σ_k K_k ρ K_k†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        if rho.rows() != self.dim_in || rho.cols() != self.dim_in {
            return Err(ChannelError::DimMismatch(format!(
                "input is {}x{}, channel expects {0}x{0}",
                rho.rows(),
                rho.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = out.add(&k.matmul(rho).matmul(&k.dagger()));
        }
        Ok(out)
    }

    /// Adjoint map `N†(Π) = Σ_k K_k† Π K_k`; unital whenever `N` is trace
    /// preserving.
    pub fn adjoint_apply(&self, pi: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        if pi.rows() != self.dim_out || pi.cols() != self.dim_out {
            return Err(ChannelError::DimMismatch(format!(
                "operator is {}x{}, adjoint expects {0}x{0}",
                pi.rows(),
                pi.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            out = out.add(&k.dagger().matmul(pi).matmul(k));
        }
        Ok(out)
    }

    /// Choi matrix `J = Σ_k vec(K_k) vec(K_k)†` with
    /// `vec(K) = Σ_i |i⟩ ⊗ K|i⟩`.
    pub fn choi(&self) -> ChoiMatrix {
        let n = self.dim_in * self.dim_out;
        let mut j = ComplexMatrix::zeros(n, n);
        for k in &self.kraus {
            let mut v = vec![C64::new(0.0, 0.0); n];
            for i in 0..self.dim_in {
                for b in 0..self.dim_out {
                    v[i * self.dim_out + b] = k.get(b, i);
                }
            }
            for (r, vr) in v.iter().enumerate() {
                if vr.norm_sqr() == 0.0 {
                    continue;
                }
                for (c, vc) in v.iter().enumerate() {
                    j.add_to(r, c, vr * vc.conj());
                }
            }
        }
        ChoiMatrix {
            matrix: j,
            dims: BipartiteDims::new(self.dim_in, self.dim_out),
        }
    }
}

/// Parallel composition: Kraus set `{K_i ⊗ L_j}` on `A⊗A' → B⊗B'`.
pub fn tensor_channels(c1: &QuantumChannel, c2: &QuantumChannel) -> QuantumChannel {
    let kraus: Vec<ComplexMatrix> = c1
        .kraus
        .iter()
        .flat_map(|k| c2.kraus.iter().map(move |l| tensor(k, l)))
        .collect();
    QuantumChannel::new(
        c1.dim_in * c2.dim_in,
        c1.dim_out * c2.dim_out,
        kraus,
        format!("{}⊗{}", c1.label, c2.label),
    )
    .expect("tensor of CPTP maps is CPTP")
}

/// n-fold parallel composition of a channel with itself.
pub fn tensor_power(c: &QuantumChannel, n: usize) -> QuantumChannel {
    assert!(n >= 1);
    let mut acc = c.clone();
    for _ in 1..n {
        acc = tensor_channels(&acc, c);
    }
    acc
}

/// Choi matrix of a channel together with its bipartite dimensions.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    matrix: ComplexMatrix,
    dims: BipartiteDims,
}

impl ChoiMatrix {
    /// Wrap an operator as a Choi matrix, checking positivity and the
    /// identity A-marginal.
    pub fn new(matrix: ComplexMatrix, dims: BipartiteDims) -> Result<Self, ChannelError> {
        if matrix.rows() != dims.total() || matrix.cols() != dims.total() {
            return Err(ChannelError::DimMismatch(format!(
                "Choi matrix is {}x{}, dims say {}",
                matrix.rows(),
                matrix.cols(),
                dims.total()
            )));
        }
        let choi = ChoiMatrix { matrix, dims };
        choi.validate()?;
        Ok(choi)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn dim_in(&self) -> usize {
        self.dims.dim_a
    }

    pub fn dim_out(&self) -> usize {
        self.dims.dim_b
    }

    /// PSD within `−1e−9` on the minimum eigenvalue and `Tr_B J = I_A`
    /// within `1e−9`.
    pub fn validate(&self) -> Result<(), ChannelError> {
        let (evals, _) = hermitian_eig(&self.matrix)
            .map_err(|e| ChannelError::DimMismatch(e.to_string()))?;
        let min = evals.last().copied().unwrap_or(0.0);
        if min < -1e-9 {
            return Err(ChannelError::BadParam(format!(
                "Choi matrix has negative eigenvalue {min:.3e}"
            )));
        }
        let tb = partial_trace(&self.matrix, self.dims, Sys::B)
            .map_err(|e| ChannelError::DimMismatch(e.to_string()))?;
        let defect = tb.sub(&ComplexMatrix::identity(self.dims.dim_a)).max_abs();
        if defect > 1e-9 {
            return Err(ChannelError::NotTracePreserving(defect));
        }
        Ok(())
    }
}

/// Column-stochastic transition matrix `P(y|x)`: entry `(y, x)` is the
/// probability of output `y` given input `x`.
#[derive(Debug, Clone)]
pub struct ClassicalChannel {
    n_out: usize,
    n_in: usize,
    p: Vec<f64>,
}

impl ClassicalChannel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self, ChannelError> {
        let n_out = rows.len();
        if n_out == 0 {
            return Err(ChannelError::BadParam("empty transition matrix".into()));
        }
        let n_in = rows[0].len();
        if n_in == 0 || rows.iter().any(|r| r.len() != n_in) {
            return Err(ChannelError::DimMismatch(
                "ragged or empty transition matrix".into(),
            ));
        }
        let mut p = vec![0.0; n_out * n_in];
        for (y, row) in rows.iter().enumerate() {
            for (x, &v) in row.iter().enumerate() {
                if v < 0.0 {
                    return Err(ChannelError::BadParam(format!(
                        "negative transition probability {v}"
                    )));
                }
                p[y * n_in + x] = v;
            }
        }
        for x in 0..n_in {
            let col: f64 = (0..n_out).map(|y| p[y * n_in + x]).sum();
            if (col - 1.0).abs() > 1e-12 {
                return Err(ChannelError::BadParam(format!(
                    "column {x} sums to {col}, expected 1"
                )));
            }
        }
        Ok(ClassicalChannel { n_out, n_in, p })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn prob(&self, y: usize, x: usize) -> f64 {
        self.p[y * self.n_in + x]
    }

    /// Kronecker product of transition matrices (independent parallel use).
    pub fn tensor(&self, other: &ClassicalChannel) -> ClassicalChannel {
        let n_in = self.n_in * other.n_in;
        let n_out = self.n_out * other.n_out;
        let mut p = vec![0.0; n_out * n_in];
        for y1 in 0..self.n_out {
            for y2 in 0..other.n_out {
                for x1 in 0..self.n_in {
                    for x2 in 0..other.n_in {
                        p[(y1 * other.n_out + y2) * n_in + (x1 * other.n_in + x2)] =
                            self.prob(y1, x1) * other.prob(y2, x2);
                    }
                }
            }
        }
        ClassicalChannel { n_out, n_in, p }
    }
}

#[cfg(test)]
mod tests;
